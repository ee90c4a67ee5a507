# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Exact circular transforms of triangles and sampled radial profiles."""

import functools
import math

import numpy

from xminpaq.core.triangle import Triangle2D
from xminpaq.error import DomainError
from xminpaq.utilities import DEFAULT_RHO_POINTS, RHO_MARGIN

TWO_PI = 2.0 * math.pi


def radon_exact(triangle, rho):
    """Angular measure of the part of the circle of radius ``rho`` about the origin
    that lies in the triangle.

    The circle is cut at its crossings with the three edges; each arc between
    consecutive crossings lies entirely inside or outside, decided at its midpoint.
    The triangle need not enclose the origin.

    :param Triangle2D triangle: Any non-degenerate triangle.
    :param rho: Positive radius or array of radii.
    :returns: A float in [0, 2 pi] for scalar ``rho``, otherwise an array.
    """
    rho = numpy.asarray(rho, dtype=float)
    if numpy.any(rho <= 0):
        raise DomainError("Circular transform is taken at positive radii")
    vertices = [tuple(map(float, v)) for v in triangle.vertices]
    inside = _point_test(triangle)
    if rho.ndim == 0:
        return _radon_at(vertices, inside, float(rho))
    return numpy.array([_radon_at(vertices, inside, r) for r in rho.ravel()]).reshape(
        rho.shape
    )


def _point_test(triangle):
    (m00, m01, m02), (m10, m11, m12), (m20, m21, m22) = triangle.barycentric_matrix

    def inside(px, py):
        return (
            m00 * px + m01 * py + m02 >= -1e-12
            and m10 * px + m11 * py + m12 >= -1e-12
            and m20 * px + m21 * py + m22 >= -1e-12
        )

    return inside


def _radon_at(vertices, inside, rho):
    angles = []
    rr = rho * rho
    for k in range(3):
        px, py = vertices[k]
        qx, qy = vertices[(k + 1) % 3]
        dx, dy = qx - px, qy - py
        a = dx * dx + dy * dy
        b = 2.0 * (px * dx + py * dy)
        c = px * px + py * py - rr
        disc = b * b - 4.0 * a * c
        if disc < 0:
            continue
        root = math.sqrt(disc)
        for u in ((-b - root) / (2.0 * a), (-b + root) / (2.0 * a)):
            if -1e-12 <= u <= 1.0 + 1e-12:
                u = min(max(u, 0.0), 1.0)
                angles.append(math.atan2(py + u * dy, px + u * dx) % TWO_PI)

    if not angles:
        return TWO_PI if inside(rho, 0.0) else 0.0

    angles.sort()
    total = 0.0
    for k, start in enumerate(angles):
        stop = angles[k + 1] if k + 1 < len(angles) else angles[0] + TWO_PI
        if stop - start <= 0.0:
            continue
        middle = 0.5 * (start + stop)
        if inside(rho * math.cos(middle), rho * math.sin(middle)):
            total += stop - start
    return total


class RadonProfile:
    """Samples of a circular transform on an increasing grid of radii.

    A profile computed from a known triangle carries an exact evaluator, which
    later stages use to refine breakpoints.  A profile obtained numerically
    carries per-point error estimates instead, and possibly the smoothing its
    method applies to any transform.
    """

    def __init__(self, rho, values, evaluator=None, errors=None, smoothing=None):
        """
        :param rho: Strictly increasing positive radii.
        :param values: Transform values in [0, 2 pi].
        :param evaluator: Optional callable mapping an array of radii to exact values.
        :param errors: Optional per-point error estimates.
        :param smoothing: Optional callable mapping (atoms, radii) to the values the
            numerical method producing this profile yields for those atoms.
        :raises DomainError: If the grid or values are out of range.
        """
        rho = numpy.array(rho, dtype=float)
        values = numpy.array(values, dtype=float)
        if rho.ndim != 1 or rho.shape != values.shape or len(rho) < 3:
            raise DomainError("A profile needs matching one-dimensional grids of length >= 3")
        if rho[0] <= 0 or numpy.any(numpy.diff(rho) <= 0):
            raise DomainError("Profile radii must be positive and strictly increasing")
        if not numpy.all(numpy.isfinite(values)):
            raise DomainError("Profile values must be finite")
        if numpy.min(values) < -1e-9 or numpy.max(values) > TWO_PI + 1e-9:
            raise DomainError("Profile values must lie in [0, 2 pi]")
        if errors is not None:
            errors = numpy.array(errors, dtype=float)
            if errors.shape != rho.shape:
                raise DomainError("Profile errors must match the grid")
            errors.setflags(write=False)
        rho.setflags(write=False)
        values.setflags(write=False)
        self._rho = rho
        self._values = values
        self._evaluator = evaluator
        self._errors = errors
        self._smoothing = smoothing

    def __repr__(self):
        return f"<RadonProfile {len(self._rho)} radii in [{self._rho[0]:.4g}, {self._rho[-1]:.4g}]>"

    @property
    def rho(self):
        return self._rho

    @property
    def values(self):
        return self._values

    @property
    def evaluator(self):
        """Exact evaluator, or None."""
        return self._evaluator

    @property
    def errors(self):
        """Per-point error estimates, or None for exact samples."""
        return self._errors

    @property
    def smoothing(self):
        """The smoothing of the method behind the values, or None."""
        return self._smoothing

    @property
    def step(self):
        """The largest grid spacing."""
        return float(numpy.max(numpy.diff(self._rho)))


def radon_profile(triangle, rho_points=DEFAULT_RHO_POINTS, rho_max=None):
    """Sample the exact transform of a triangle on a uniform grid.

    :param Triangle2D triangle: The triangle.
    :param int rho_points: Number of radii.
    :param float rho_max: Last radius; defaults to 1.05 times the farthest vertex distance.
    :rtype: RadonProfile
    """
    if rho_max is None:
        rho_max = RHO_MARGIN * float(numpy.max(triangle.vertex_distances))
    rho = numpy.linspace(0.0, rho_max, rho_points + 1)[1:]
    evaluator = functools.partial(radon_exact, triangle)
    return RadonProfile(rho, evaluator(rho), evaluator=evaluator)
