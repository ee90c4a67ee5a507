# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Recovery of a triangle, up to an orthogonal map, from its circular transform.

The transform of an enclosing triangle is a signed sum of closed-form atoms whose
parameters are exactly the radii where the transform or its slope jumps.  Recovery
locates those radii, fits integer atom coefficients by least squares, arranges the
atoms into a parametric form and places the triangle.
"""

import logging
import math
import warnings
from collections import namedtuple

import numpy
import scipy.optimize
import scipy.signal

from xminpaq.error import (
    DomainError,
    MalformedAtomSetError,
    NotATriangleTransformError,
    ResolutionError,
    XminError,
)
from xminpaq.utilities import AMBIGUITY_TOLERANCE, FIT_TOLERANCE_PER_POINT
from .atoms import AtomSet, decompose_atoms, phi, radon_from_atoms
from .parametric import pairs_to_parametric, triangle_from_parametric
from .polar import gap_violation, polar_parameters, random_polar, triangle_from_polar
from .transform import radon_exact

log = logging.getLogger(__name__)

#: Result of :func:`fit_triangle_to_profile`.
ProfileFit = namedtuple("ProfileFit", ["triangle", "residual", "start"])

_REFINE_POINTS = 33
_HIDDEN_SCAN_POINTS = 48


def _second_differences(values):
    return values[2:] - 2.0 * values[1:-1] + values[:-2]


def detect_breakpoints(profile, noise=None, precision=1e-11):
    """Locate the radii where a circular transform or its slope is discontinuous.

    Spikes of the second difference mark candidates.  With an exact evaluator each
    candidate is refined by repeatedly resampling a shrinking bracket around the
    largest second difference; without one the grid position is used.

    :param RadonProfile profile: Profile on a uniform grid.
    :param float noise: Typical error of the profile values; spikes must clear it.
    :param float precision: Refinement stops at this bracket width, relative to the
        largest radius.
    :returns: Sorted breakpoint radii.
    :rtype: list[float]
    :raises ResolutionError: If two breakpoints are closer than three grid steps.
    """
    rho = profile.rho
    values = profile.values
    steps = numpy.diff(rho)
    step = float(numpy.mean(steps))
    if numpy.max(numpy.abs(steps - step)) > 1e-6 * step:
        raise DomainError("Breakpoint detection needs a uniform grid")
    scale = float(rho[-1])

    curvature = numpy.abs(_second_differences(values))
    threshold = 2.0 * (step / scale) ** 2
    if noise is not None:
        threshold = max(threshold, 4.0 * noise)
    peaks, _ = scipy.signal.find_peaks(curvature, prominence=threshold)
    centers = peaks + 1

    evaluator = profile.evaluator
    found = []
    if evaluator is None:
        # A jump in slope at a height distance is followed by a convex tail whose own
        # second differences peak within two steps; keep the larger of such neighbors.
        for index in centers:
            if found and index - found[-1] <= 2:
                if curvature[index - 1] > curvature[found[-1] - 1]:
                    found[-1] = index
                continue
            found.append(index)
        breakpoints = [float(rho[i]) for i in found]
    else:
        refined = []
        for index in centers:
            lo = float(rho[max(index - 2, 0)])
            hi = float(rho[min(index + 2, len(rho) - 1)])
            refined.append(_refine(evaluator, lo, hi, precision * scale))
        breakpoints = []
        for value in sorted(refined):
            if breakpoints and value - breakpoints[-1] <= 1e3 * precision * scale:
                continue
            breakpoints.append(value)

    gaps = numpy.diff(breakpoints)
    if len(gaps) and numpy.min(gaps) < 3 * step:
        needed = float(numpy.min(gaps)) / 3.0
        raise ResolutionError(
            f"Breakpoints {numpy.min(gaps):.3g} apart on a grid of step {step:.3g}; "
            f"use a step of at most {needed:.3g}"
        )
    log.debug("Breakpoints: %s", breakpoints)
    return breakpoints


def _refine(evaluator, lo, hi, width):
    while hi - lo > width:
        grid = numpy.linspace(lo, hi, _REFINE_POINTS)
        curvature = numpy.abs(_second_differences(numpy.asarray(evaluator(grid))))
        j = int(numpy.argmax(curvature)) + 1
        new_lo = grid[max(j - 2, 0)]
        new_hi = grid[min(j + 2, _REFINE_POINTS - 1)]
        if new_hi - new_lo >= hi - lo:
            break
        lo, hi = new_lo, new_hi
    return 0.5 * (lo + hi)


def _atoms_from_coefficients(pairs, coefficients, extra=()):
    atoms = list(extra)
    for (a, b), coefficient in zip(pairs, coefficients):
        count = int(round(coefficient))
        atoms.extend([(a, b, 1 if count > 0 else -1)] * abs(count))
    return atoms


def _integral(coefficients, tolerance=1e-3):
    return bool(numpy.all(numpy.abs(coefficients - numpy.round(coefficients)) <= tolerance))


def _candidate(atoms, rho, values, tolerance):
    """Return (AtomSet, residual) if the atoms describe a triangle matching the
    profile, else None."""
    if not atoms:
        return None
    try:
        atom_set = AtomSet(atoms)
        pairs_to_parametric(atom_set)
    except (MalformedAtomSetError, DomainError):
        return None
    residual = float(numpy.linalg.norm(radon_from_atoms(atom_set, rho) - values))
    if residual > tolerance:
        return None
    return atom_set, residual


def fit_atoms(profile, breakpoints=None, tolerance=None):
    """Express a profile as a sum of atoms.

    All breakpoints are tried as height distances paired with every larger
    breakpoint as a vertex distance, and integer coefficients are fitted by least
    squares.  When that fails the profile may come from a triangle with a foot
    outside a side, whose height distance leaves no trace in the profile; that
    height is then found by a one-dimensional least-squares search for each pair of
    vertex distances it could belong to.

    :param RadonProfile profile: A sampled transform.
    :param breakpoints: Precomputed breakpoints; detected if omitted.
    :param float tolerance: Largest accepted residual norm; defaults to 1e-6 per
        grid point.
    :rtype: AtomSet
    :raises NotATriangleTransformError: If no candidate fits within tolerance.
    """
    if breakpoints is None:
        breakpoints = detect_breakpoints(profile)
    rho = profile.rho
    values = profile.values
    if tolerance is None:
        tolerance = FIT_TOLERANCE_PER_POINT * len(rho)

    pairs = [(a, b) for i, a in enumerate(breakpoints) for b in breakpoints[i + 1 :]]
    if not pairs:
        raise NotATriangleTransformError("Profile has no breakpoints")
    design = numpy.column_stack([phi(a, b, rho) for a, b in pairs])
    condition = float(numpy.linalg.cond(design))
    log.info("Atom design matrix: %d columns, condition %.3e", len(pairs), condition)

    candidates = []
    hidden = []
    coefficients = numpy.linalg.lstsq(design, values, rcond=None)[0]
    if _integral(coefficients):
        found = _candidate(_atoms_from_coefficients(pairs, coefficients), rho, values, tolerance)
        if found is not None:
            candidates.append(found + (None,))

    if not candidates:
        hidden = _hidden_height_candidates(breakpoints, pairs, design, rho, values, tolerance)
        candidates.extend(hidden)

    if not candidates:
        raise NotATriangleTransformError(
            f"No atom combination over breakpoints {breakpoints} fits within {tolerance:.3g}"
        )
    candidates.sort(key=lambda item: item[1])
    atom_set, residual, height = candidates[0]
    ambiguous = len(candidates) > 1 and candidates[1][1] - residual <= AMBIGUITY_TOLERANCE
    if ambiguous:
        warnings.warn("Two atom fits have the same residual; they give congruent triangles")
    return AtomSet(
        atom_set,
        diagnostics={
            "residual": residual,
            "case": atom_set.case,
            "breakpoints": list(breakpoints),
            "candidates": len(candidates),
            "ambiguous": ambiguous,
            "hidden_height": height,
            "condition_number": condition,
        },
    )


def _hidden_height_candidates(breakpoints, pairs, design, rho, values, tolerance):
    """Candidates with one side whose foot falls beyond its nearer vertex."""

    def solve(eta, near, far):
        column = phi(eta, far, rho) - phi(eta, near, rho)
        full = numpy.column_stack([design, column])
        coefficients = numpy.linalg.lstsq(full, values, rcond=None)[0]
        return coefficients, float(numpy.linalg.norm(full @ coefficients - values))

    found = []
    for i, near in enumerate(breakpoints):
        for far in breakpoints[i + 1 :]:
            grid = numpy.linspace(0.02 * near, near * (1 - 1e-9), _HIDDEN_SCAN_POINTS)
            residuals = [solve(eta, near, far)[1] for eta in grid]
            k = int(numpy.argmin(residuals))
            lo = grid[max(k - 1, 0)]
            hi = grid[min(k + 1, len(grid) - 1)]
            result = scipy.optimize.minimize_scalar(
                lambda eta: solve(eta, near, far)[1],
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": 1e-13 * near},
            )
            eta = float(result.x)
            coefficients, residual = solve(eta, near, far)
            if residual > tolerance or not _integral(coefficients):
                continue
            if int(round(coefficients[-1])) != 1:
                continue
            atoms = _atoms_from_coefficients(
                pairs, coefficients[:-1], extra=[(eta, near, -1), (eta, far, 1)]
            )
            candidate = _candidate(atoms, rho, values, tolerance)
            if candidate is not None:
                log.debug("Hidden height %.12g between %.6g and %.6g", eta, near, far)
                found.append(candidate + (eta,))
    return found


def fit_triangle_to_profile(profile, initial=None, seed=0, starts=8):
    """Fit a triangle to a profile by weighted least squares on its polar parameters.

    Intended for profiles known only approximately (carrying per-point errors).  When
    the profile carries the smoothing of the method that produced it, candidates are
    passed through the same smoothing and weighted equally; radii whose error is 2 pi
    or more are left out.

    :param RadonProfile profile: The profile to match.
    :param Triangle2D initial: Optional starting triangle, tried first.
    :param int seed: Seed for the random starts.
    :param int starts: Number of random starts added to ``initial``.
    :rtype: ProfileFit
    """
    rho = profile.rho
    values = profile.values
    smoothing = profile.smoothing
    if profile.errors is None or smoothing is not None:
        weights = numpy.ones_like(rho)
    else:
        floor = max(float(numpy.median(profile.errors)), 1e-12)
        weights = 1.0 / numpy.maximum(profile.errors, floor) ** 2
    if profile.errors is not None:
        weights = numpy.where(profile.errors < 2 * math.pi, weights, 0.0)
    root_weights = numpy.sqrt(weights)
    penalty = 10.0 * math.sqrt(float(numpy.sum(weights))) * 2 * math.pi

    def residuals(params):
        triangle = triangle_from_polar(params)
        if triangle is None:
            return numpy.full(len(rho), penalty * (1.0 + gap_violation(params)) / len(rho))
        atoms = decompose_atoms(triangle)
        if smoothing is None:
            model = radon_from_atoms(atoms, rho)
        else:
            model = numpy.clip(smoothing(atoms, rho), 0.0, 2 * math.pi)
        return root_weights * (model - values)

    if smoothing is None:
        support = rho[(values > 1e-3 * values.max()) & (weights > 0)]
        outer = float(support[-1]) if len(support) else float(rho[-1])
    else:
        # smoothing leaves small values past the farthest vertex
        support = rho[(values > 5e-2 * values.max()) & (weights > 0)]
        outer = 1.2 * float(support[-1]) if len(support) else float(rho[-1])
    rng = numpy.random.default_rng(seed)
    initials = [] if initial is None else [polar_parameters(initial)]
    initials.extend(random_polar(rng, 0.3 * outer, outer) for _ in range(starts))

    best = None
    for index, params in enumerate(initials):
        result = scipy.optimize.least_squares(residuals, params, method="trf", x_scale="jac")
        cost = float(numpy.mean(result.fun**2))
        triangle = triangle_from_polar(result.x)
        log.debug("Profile fit start %d: cost %.3e", index, cost)
        if triangle is not None and (best is None or cost < best.residual):
            best = ProfileFit(triangle, cost, index)
    if best is None:
        raise NotATriangleTransformError("No start converged to a triangle enclosing the origin")
    return best


def recover_triangle(profile, noise=None, seed=0):
    """Recover a triangle, up to an orthogonal map, from its circular transform.

    Exact profiles go through breakpoint detection, atom fitting and the parametric
    form, and the result is checked against the profile.  Profiles with error
    estimates are matched by least squares, starting from the combinatorial answer
    when one is found; smoothed profiles have no sharp breakpoints and are matched
    directly.

    :param RadonProfile profile: Transform of a triangle enclosing the origin.
    :param float noise: Typical error of the values, widening detection thresholds.
    :rtype: Triangle2D
    :raises NotATriangleTransformError: If an exact profile is not matched to 1e-6.
    """
    if profile.smoothing is not None:
        return fit_triangle_to_profile(profile, seed=seed).triangle
    if profile.errors is not None:
        if noise is None:
            noise = float(numpy.median(profile.errors))
        initial = None
        try:
            breakpoints = detect_breakpoints(profile, noise=noise)
            tolerance = 3.0 * float(numpy.linalg.norm(profile.errors))
            atoms = fit_atoms(profile, breakpoints, tolerance=tolerance)
            initial = triangle_from_parametric(pairs_to_parametric(atoms))
        except XminError as exc:
            log.info("Combinatorial recovery failed on an approximate profile: %s", exc)
        return fit_triangle_to_profile(profile, initial=initial, seed=seed).triangle

    atoms = fit_atoms(profile, detect_breakpoints(profile, noise=noise))
    triangle = triangle_from_parametric(pairs_to_parametric(atoms))
    mismatch = float(numpy.max(numpy.abs(radon_exact(triangle, profile.rho) - profile.values)))
    if mismatch > 1e-6:
        raise NotATriangleTransformError(
            f"Recovered triangle misses the profile by {mismatch:.3g}"
        )
    return triangle
