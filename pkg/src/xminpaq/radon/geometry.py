# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Perpendicular feet, case classification and the basic right triangles."""

from collections import namedtuple

import numpy

from xminpaq.core.triangle import SIDES, Triangle2D
from xminpaq.error import DomainError
from xminpaq.utilities import CASE_TOLERANCE

#: The orthogonal projection of the origin on the line through vertices ``p`` and
#: ``q`` (indices into the triangle).  ``point = s * p + (1 - s) * q``.
FootPoint = namedtuple("FootPoint", ["p", "q", "point", "s", "distance"])

#: ``case`` is one of "I", "II", "III"; ``side`` indexes :data:`SIDES` for cases II
#: and III and is None for case I.
CaseLabel = namedtuple("CaseLabel", ["case", "side"])


def heights(triangle):
    """Return the feet of the perpendiculars from the origin to the lines xy, yz, xz.

    :param Triangle2D triangle: A non-degenerate triangle.
    :returns: Three :data:`FootPoint` values.
    """
    feet = []
    for i, j in SIDES:
        p = triangle.vertices[i]
        q = triangle.vertices[j]
        d = p - q
        s = -float(q @ d) / float(d @ d)
        point = s * p + (1.0 - s) * q
        feet.append(FootPoint(i, j, point, s, float(numpy.hypot(*point))))
    return feet


def classify_case(triangle):
    """Classify an enclosing triangle by where its perpendicular feet fall.

    Case I has every foot strictly inside its side, case III has a foot on a vertex
    and case II has a foot outside a side.

    :rtype: CaseLabel
    :raises DomainError: If the triangle does not enclose the origin.
    """
    if not triangle.enclosing:
        raise DomainError("Case classification needs a triangle enclosing the origin")
    feet = heights(triangle)
    for side, foot in enumerate(feet):
        if abs(foot.s) <= CASE_TOLERANCE or abs(1.0 - foot.s) <= CASE_TOLERANCE:
            return CaseLabel("III", side)
    for side, foot in enumerate(feet):
        if not CASE_TOLERANCE < foot.s < 1.0 - CASE_TOLERANCE:
            return CaseLabel("II", side)
    return CaseLabel("I", None)


def basic_triangle(a, b):
    """Return T(a, b), the right triangle (0, 0), (a, 0), (a, sqrt(b^2 - a^2)).

    :raises DomainError: Unless 0 < a <= b.
    :raises DegenerateTriangleError: If a == b.
    """
    if not 0 < a <= b:
        raise DomainError(f"Basic triangle needs 0 < a <= b, got a={a}, b={b}")
    return Triangle2D([(0.0, 0.0), (a, 0.0), (a, numpy.sqrt(b * b - a * a))])
