# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Circular transforms of basic right triangles and signed sums of them.

The transform of T(a, b) is the closed form

    Phi_{a,b}(rho) = arccos(a/b)                   for rho <= a
                   = arccos(a/b) - arccos(a/rho)   for a <= rho < b
                   = 0                             for rho >= b

and the transform of any triangle enclosing the origin is a sum of six (or five)
of these with coefficients +1 or -1.
"""

import logging
from collections import namedtuple

import numpy

from xminpaq.error import DomainError
from .geometry import classify_case, heights

log = logging.getLogger(__name__)

#: One term c * Phi_{a,b}: ``a`` is a height distance, ``b`` a vertex distance.
Atom = namedtuple("Atom", ["a", "b", "c"])

#: Numerical independence of a family of atoms sampled on a grid.
GramReport = namedtuple("GramReport", ["smallest_singular_value", "condition_number"])

_CASES = {6: "I", 4: "II", 5: "III"}


def phi(a, b, rho):
    """Evaluate Phi_{a,b} at one or more radii.

    :param float a: Height distance, positive.
    :param float b: Vertex distance, at least ``a``.
    :param rho: Positive radius or array of radii.
    :returns: A float for scalar ``rho``, otherwise an array.
    :raises DomainError: Unless 0 < a <= b and every rho > 0.
    """
    if not 0 < a <= b:
        raise DomainError(f"Phi needs 0 < a <= b, got a={a}, b={b}")
    rho = numpy.asarray(rho, dtype=float)
    if numpy.any(rho <= 0):
        raise DomainError("Phi is defined for positive radii only")
    full = numpy.arccos(a / b)
    with numpy.errstate(divide="ignore"):
        partial = full - numpy.arccos(numpy.minimum(a / rho, 1.0))
    value = numpy.where(rho <= a, full, numpy.where(rho < b, partial, 0.0))
    if value.ndim == 0:
        return float(value)
    return value


class AtomSet:
    """A signed collection of atoms representing sum c * Phi_{a,b}."""

    def __init__(self, atoms, diagnostics=None):
        """
        :param atoms: Iterable of (a, b, c) with 0 < a <= b and c in {+1, -1}.
        :param dict diagnostics: Free-form information from the stage that built the set.
        :raises DomainError: If an atom is out of range.
        """
        checked = []
        for a, b, c in atoms:
            a, b, c = float(a), float(b), int(c)
            if not (a > 0 and a <= b * (1 + 1e-12)):
                raise DomainError(f"Atom needs 0 < a <= b, got a={a}, b={b}")
            if c not in (1, -1):
                raise DomainError(f"Atom coefficient must be +1 or -1, got {c}")
            checked.append(Atom(min(a, b), b, c))
        self._atoms = tuple(checked)
        self._diagnostics = dict(diagnostics or {})

    def __repr__(self):
        return f"AtomSet({[tuple(atom) for atom in self._atoms]})"

    def __iter__(self):
        return iter(self._atoms)

    def __len__(self):
        return len(self._atoms)

    @property
    def atoms(self):
        return self._atoms

    @property
    def coefficient_sum(self):
        return sum(atom.c for atom in self._atoms)

    @property
    def case(self):
        """The case label implied by the coefficient sum, or None."""
        return _CASES.get(self.coefficient_sum)

    @property
    def max_radius(self):
        return max(atom.b for atom in self._atoms)

    @property
    def diagnostics(self):
        return self._diagnostics

    def evaluate(self, rho):
        return radon_from_atoms(self, rho)

    def to_list(self):
        return [list(atom) for atom in self._atoms]


def decompose_atoms(triangle):
    """Write the circular transform of an enclosing triangle as a sum of atoms.

    Each side contributes the two right triangles cut off by the perpendicular from
    the origin.  When the foot lies beyond a vertex the nearer right triangle is
    subtracted, and when it lies on a vertex that triangle is empty.

    :param Triangle2D triangle: A triangle enclosing the origin.
    :rtype: AtomSet
    :raises DomainError: If the triangle does not enclose the origin.
    """
    label = classify_case(triangle)
    distances = triangle.vertex_distances
    atoms = []
    for side, foot in enumerate(heights(triangle)):
        rp = float(distances[foot.p])
        rq = float(distances[foot.q])
        eta = foot.distance
        if side != label.side:
            atoms.extend([(min(eta, rp), rp, 1), (min(eta, rq), rq, 1)])
        elif label.case == "III":
            far = rq if abs(1.0 - foot.s) < abs(foot.s) else rp
            atoms.append((min(eta, far), far, 1))
        elif foot.s > 1:
            atoms.extend([(min(eta, rp), rp, -1), (min(eta, rq), rq, 1)])
        else:
            atoms.extend([(min(eta, rq), rq, -1), (min(eta, rp), rp, 1)])
    return AtomSet(atoms, diagnostics={"case": label.case, "side": label.side})


def radon_from_atoms(atoms, rho):
    """Evaluate sum c * Phi_{a,b}(rho) over an :class:`AtomSet`."""
    total = 0.0
    for a, b, c in atoms:
        total = total + c * phi(a, b, rho)
    return total


def atom_gram_report(pairs, rho):
    """Report how far the sampled Phi_{a,b} for the given (a, b) pairs are from
    linear dependence.

    :param pairs: Iterable of (a, b).
    :param rho: Sample radii.
    :returns: Smallest singular value and condition number of the Gram matrix.
    :rtype: GramReport
    """
    design = numpy.column_stack([phi(a, b, rho) for a, b in pairs])
    singular = numpy.linalg.svd(design, compute_uv=False)
    smallest = float(singular[-1] ** 2)
    condition = float((singular[0] / singular[-1]) ** 2) if smallest > 0 else numpy.inf
    log.info(
        "Gram matrix of %d atoms: smallest singular value %.3e, condition %.3e",
        design.shape[1],
        smallest,
        condition,
    )
    return GramReport(smallest, condition)
