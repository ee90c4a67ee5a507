# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Parametric forms of triangles about the origin.

The parametric form of a triangle xyz is the alternating sequence of vertex and
perpendicular-foot distances (r_x, eta_xy, r_y, eta_yz, r_z, eta_zx).  It fixes the
triangle up to an orthogonal map and can be read off the atoms of its transform.
"""

import collections
import itertools
import math

import numpy

from xminpaq.core.triangle import Triangle2D
from xminpaq.error import DomainError, InconsistentParametricFormError, MalformedAtomSetError
from xminpaq.utilities import CLOSURE_TOLERANCE, DEGENERATE_RATIO
from .geometry import classify_case, heights

_CASES = {6: "I", 4: "II", 5: "III"}

# (vertex order, height order, side map) for the six relabelings of a cycle.
_DIHEDRAL = []
for _k in range(3):
    _vertices = [(_k + i) % 3 for i in range(3)]
    _DIHEDRAL.append((_vertices, _vertices, {(_k + i) % 3: i for i in range(3)}))
    _reflected = [_vertices[0], _vertices[2], _vertices[1]]
    _heights = [_vertices[2], _vertices[1], _vertices[0]]
    _DIHEDRAL.append((_reflected, _heights, {h: i for i, h in enumerate(_heights)}))


class ParametricForm:
    """The sextuple (r_x, eta_1, r_y, eta_2, r_z, eta_3) with its case label.

    ``eta_1`` is the foot distance of side xy, ``eta_2`` of yz and ``eta_3`` of zx.  For
    cases II and III ``special_side`` is the index (0, 1 or 2) of the side whose foot
    lies outside it or on one of its vertices.
    """

    def __init__(self, values, case, special_side=None):
        values = tuple(float(v) for v in values)
        if len(values) != 6:
            raise DomainError("A parametric form has six entries")
        if not all(v > 0 and math.isfinite(v) for v in values):
            raise InconsistentParametricFormError("Parametric form entries must be positive")
        if case not in ("I", "II", "III"):
            raise DomainError(f"Unknown case {case!r}")
        if case != "I" and special_side not in (0, 1, 2):
            raise DomainError(f"Case {case} needs a special side")
        radii = values[0::2]
        for i, eta in enumerate(values[1::2]):
            adjacent = min(radii[i], radii[(i + 1) % 3])
            if eta > adjacent * (1 + 1e-9):
                raise InconsistentParametricFormError(
                    f"Height {eta} exceeds adjacent vertex distance {adjacent}"
                )
        self._values = values
        self._case = case
        self._special_side = None if case == "I" else special_side

    def __repr__(self):
        values = ", ".join(f"{v:.10g}" for v in self._values)
        return f"ParametricForm(({values}), case={self._case!r}, special_side={self._special_side})"

    @property
    def values(self):
        return self._values

    @property
    def case(self):
        return self._case

    @property
    def special_side(self):
        return self._special_side

    @property
    def radii(self):
        return self._values[0::2]

    @property
    def heights(self):
        return self._values[1::2]

    def canonical(self):
        """Return the labeling that represents the whole congruence class.

        In case I this is the lexicographically smallest of the six relabelings; in
        cases II and III the special side comes first, starting from its nearer vertex.
        """
        radii = self.radii
        etas = self.heights
        best = None
        for vertex_order, height_order, side_map in _DIHEDRAL:
            values = []
            for v, h in zip(vertex_order, height_order):
                values.extend([radii[v], etas[h]])
            side = None
            if self._case != "I":
                side = side_map[self._special_side]
                if side != 0 or values[0] > values[2]:
                    continue
            candidate = ParametricForm(values, self._case, side)
            if best is None or candidate.values < best.values:
                best = candidate
        return best

    def matches(self, other, tolerance=1e-6):
        """Whether two forms describe congruent triangles, comparing canonical forms
        entrywise with a tolerance relative to the largest entry."""
        if self._case != other.case:
            return False
        mine = numpy.array(self.canonical().values)
        theirs = numpy.array(other.canonical().values)
        scale = max(1.0, float(numpy.max(mine)))
        return bool(numpy.max(numpy.abs(mine - theirs)) <= tolerance * scale)

    def to_dict(self):
        return {"values": list(self._values), "case": self._case, "special_side": self._special_side}

    @classmethod
    def from_triangle(cls, triangle):
        """The parametric form of an enclosing triangle, keeping its labels."""
        label = classify_case(triangle)
        return cls(_raw_values(triangle), label.case, label.side)


def _raw_values(triangle):
    distances = triangle.vertex_distances
    feet = heights(triangle)
    # heights() orders the sides xy, yz, xz; xz is the third side of the cycle.
    return [
        float(distances[0]),
        feet[0].distance,
        float(distances[1]),
        feet[1].distance,
        float(distances[2]),
        feet[2].distance,
    ]


def _cluster(values, tolerance):
    """Map each value to the first earlier value within ``tolerance`` of it."""
    representatives = []
    mapped = []
    for value in values:
        for rep in representatives:
            if abs(rep - value) <= tolerance:
                mapped.append(rep)
                break
        else:
            representatives.append(value)
            mapped.append(value)
    return mapped


def _halve(counter):
    items = []
    for value, count in sorted(counter.items()):
        if count % 2:
            raise MalformedAtomSetError(f"Value {value} appears an odd number of times")
        items.extend([value] * (count // 2))
    return items


def pairs_to_parametric(atoms):
    """Arrange the atoms of a triangle transform into its parametric form.

    Every height distance a belongs to two atoms (one per endpoint of its side) and
    every vertex distance b to two atoms (one per side through it), so the atoms are
    the edges of a six-cycle alternating between b and a values.  Walking the cycle
    gives the parametric form.  Equal distances make several walks possible; all give
    congruent triangles and the lexicographically smallest is returned.

    A -1 atom (case II) or the missing degenerate atom (a, a) (case III) marks the
    special side, which is placed first.

    :param AtomSet atoms: Atoms with coefficient sum 6, 4 or 5.
    :rtype: ParametricForm
    :raises MalformedAtomSetError: If the atoms do not form a single six-cycle.
    """
    atoms = list(atoms)
    total = sum(atom.c for atom in atoms)
    case = _CASES.get(total)
    negatives = [atom for atom in atoms if atom.c < 0]
    expected = {"I": (6, 0), "II": (6, 1), "III": (5, 0)}
    if case is None or (len(atoms), len(negatives)) != expected[case]:
        raise MalformedAtomSetError(
            f"{len(atoms)} atoms with coefficient sum {total} are not a triangle transform"
        )

    scale = max(atom.b for atom in atoms)
    a_values = _cluster([atom.a for atom in atoms], 1e-9 * scale)
    b_values = _cluster([atom.b for atom in atoms], 1e-9 * scale)
    pairs = list(zip(a_values, b_values))

    special = None
    if case == "II":
        special = pairs[atoms.index(negatives[0])]
    elif case == "III":
        odd_a = [v for v, n in collections.Counter(a_values).items() if n % 2]
        odd_b = [v for v, n in collections.Counter(b_values).items() if n % 2]
        if len(odd_a) != 1 or len(odd_b) != 1 or abs(odd_a[0] - odd_b[0]) > 1e-9 * scale:
            raise MalformedAtomSetError("Five atoms do not leave one degenerate pair (a, a)")
        # the missing atom has a = b exactly
        a_values = [odd_b[0] if v == odd_a[0] else v for v in a_values]
        pairs = list(zip(a_values, b_values))
        special = (odd_b[0], odd_b[0])
        pairs.append(special)

    cycle_pairs = collections.Counter(pairs)
    a_half = _halve(collections.Counter(p[0] for p in pairs))
    b_half = _halve(collections.Counter(p[1] for p in pairs))

    best = None
    for pa in set(itertools.permutations(a_half)):
        for pb in set(itertools.permutations(b_half)):
            if special is not None and (pa[0], pb[0]) != special:
                continue
            walk = [
                (pa[0], pb[0]),
                (pa[0], pb[1]),
                (pa[1], pb[1]),
                (pa[1], pb[2]),
                (pa[2], pb[2]),
                (pa[2], pb[0]),
            ]
            if collections.Counter(walk) != cycle_pairs:
                continue
            candidate = (pb[0], pa[0], pb[1], pa[1], pb[2], pa[2])
            if best is None or candidate < best:
                best = candidate
    if best is None:
        raise MalformedAtomSetError("Atoms do not pair into a single six-cycle")
    return ParametricForm(best, case, None if case == "I" else 0)


def _subtended(eta, r):
    """arccos(eta / r), zero when the foot of the height is on the vertex."""
    ratio = eta / r
    if ratio >= 1.0 - DEGENERATE_RATIO:
        return 0.0
    return math.acos(ratio)


def triangle_from_parametric(pf):
    """Place a triangle with the given parametric form around the origin.

    Vertex x goes on the positive horizontal axis and y, z follow counterclockwise.
    The angle a side subtends at the origin is arccos(eta/r_p) + arccos(eta/r_q) when
    its foot lies on the side and the absolute difference otherwise.  The labeled
    case decides which rule applies where; if that fails to close up to 2 pi, every
    other assignment is tried.

    :param ParametricForm pf: The parametric form.
    :rtype: Triangle2D
    :raises InconsistentParametricFormError: If no assignment closes around the origin.
    """
    radii = pf.radii
    etas = pf.heights
    expected = numpy.array(pf.values)
    scale = max(1.0, float(numpy.max(expected)))

    preferred = ["sum", "sum", "sum"]
    if pf.special_side is not None:
        preferred[pf.special_side] = "difference"
    patterns = [tuple(preferred)] + [
        p for p in itertools.product(("sum", "difference"), repeat=3) if list(p) != preferred
    ]

    for pattern in patterns:
        gaps = []
        for i, rule in enumerate(pattern):
            near = _subtended(etas[i], radii[i])
            far = _subtended(etas[i], radii[(i + 1) % 3])
            gaps.append(near + far if rule == "sum" else abs(near - far))
        if abs(sum(gaps) - 2 * math.pi) > CLOSURE_TOLERANCE or max(gaps) >= math.pi:
            continue
        angles = [0.0, gaps[0], gaps[0] + gaps[1]]
        triangle = Triangle2D([(r * math.cos(t), r * math.sin(t)) for r, t in zip(radii, angles)])
        if numpy.max(numpy.abs(numpy.array(_raw_values(triangle)) - expected)) <= 1e-8 * scale:
            return triangle
    raise InconsistentParametricFormError(f"{pf} does not close around the origin")
