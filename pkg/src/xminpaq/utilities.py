# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Tolerances shared across the package.

These are absolute unless noted.  They are module constants rather than configuration
since every stage relies on the same values when checking the output of another.
"""

#: Relative tolerance for symmetry of covariance matrices.
SYMMETRY_TOLERANCE = 1e-12

#: Minimum normalized first coordinate of a cone direction.
DIRECTION_EPSILON = 1e-9

#: Barycentric margin for the origin to count as strictly interior.
INTERIOR_TOLERANCE = 1e-12

#: Foot-parameter tolerance separating case III from cases I and II.
CASE_TOLERANCE = 1e-9

#: Ratios eta / r within this of 1 put the foot of a height on the vertex.
DEGENERATE_RATIO = 1e-13

#: Angular closure tolerance when rebuilding a triangle from a parametric form.  arccos
#: turns an error e in a ratio near 1 into sqrt(2 e); the rebuilt triangle is checked
#: against the form to 1e-8 regardless.
CLOSURE_TOLERANCE = 1e-6

#: Per-grid-point residual allowance when fitting atoms to a profile.
FIT_TOLERANCE_PER_POINT = 1e-6

#: Two fits whose residuals differ by less than this are reported as ambiguous.
AMBIGUITY_TOLERANCE = 1e-12

#: Default number of radii in a circular transform profile.
DEFAULT_RHO_POINTS = 2048

#: Profiles extend this far past the farthest vertex.
RHO_MARGIN = 1.05

#: Tails are integrated this many standard deviations past the kernel peak.
TRUNCATION_SIGMAS = 12.0


def format_float(value):
    """Format a float with 17 significant digits, the round-trip precision of a double."""
    return "%.17g" % value
