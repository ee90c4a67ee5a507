# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Polar coordinates for triangles enclosing the origin.

A triangle is described by the angles theta2 < theta3 of its second and third
vertices (the first sits at angle 0) and the logarithms of the three vertex
distances.  The origin is interior exactly when every angular gap is below pi.
"""

import math

import numpy

from xminpaq.core.triangle import Triangle2D
from xminpaq.error import DegenerateTriangleError

TWO_PI = 2.0 * math.pi


def angular_gaps(params):
    theta2, theta3 = params[0], params[1]
    return (theta2, theta3 - theta2, TWO_PI - theta3)


def gap_violation(params):
    """How far the angles are from describing a triangle around the origin; zero when
    they do."""
    return sum(max(0.0, -g) + max(0.0, g - math.pi) for g in angular_gaps(params))


def triangle_from_polar(params):
    """Build the triangle for ``(theta2, theta3, log r1, log r2, log r3)``.

    :returns: The triangle, or None if it would not enclose the origin.
    """
    gaps = angular_gaps(params)
    if min(gaps) <= 0 or max(gaps) >= math.pi:
        return None
    angles = (0.0, params[0], params[1])
    radii = numpy.exp(numpy.clip(params[2:5], -50.0, 50.0))
    try:
        triangle = Triangle2D([(r * math.cos(t), r * math.sin(t)) for r, t in zip(radii, angles)])
    except DegenerateTriangleError:
        return None
    return triangle if triangle.enclosing else None


def polar_parameters(triangle):
    """Polar parameters of a triangle, rotated so its first vertex lies at angle 0.

    The remaining vertices are taken counterclockwise, which may swap y and z.
    """
    vertices = triangle.vertices
    angles = numpy.arctan2(vertices[:, 1], vertices[:, 0])
    relative = numpy.mod(angles - angles[0], TWO_PI)
    order = [0] + sorted((1, 2), key=lambda i: relative[i])
    radii = triangle.vertex_distances[order]
    return numpy.array([relative[order[1]], relative[order[2]], *numpy.log(radii)])


def random_polar(rng, radius_low, radius_high, max_gap=0.9 * math.pi):
    """Draw polar parameters of a random triangle around the origin.

    :param numpy.random.Generator rng: Source of randomness.
    :param float radius_low: Smallest vertex distance.
    :param float radius_high: Largest vertex distance.
    :param float max_gap: Upper bound on every angular gap.
    """
    while True:
        gaps = rng.dirichlet((3.0, 3.0, 3.0)) * TWO_PI
        if numpy.max(gaps) < max_gap:
            break
    log_radii = rng.uniform(math.log(radius_low), math.log(radius_high), 3)
    return numpy.array([gaps[0], gaps[0] + gaps[1], *log_radii])
