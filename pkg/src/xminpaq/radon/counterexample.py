# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Triangles that do not enclose the origin yet share a circular transform."""

from collections import namedtuple

import numpy

from xminpaq.core.triangle import Triangle2D
from .transform import radon_exact

#: Two triangles with equal transforms.  ``name`` identifies the pair in output files.
CounterexamplePair = namedtuple("CounterexamplePair", ["name", "first", "second"])

#: Side-by-side transforms of a pair on a grid of radii.
TransformComparison = namedtuple("TransformComparison", ["rho", "first", "second", "difference"])


def counterexample_pairs():
    """Return the two standard pairs.

    The right triangles with legs 3 and 4 along the axes have equal transforms, but
    they are mirror images of each other.  Their unions with their reflections
    across the vertical axis, conv((-3,0),(3,0),(0,4)) and conv((-4,0),(4,0),(0,3)),
    have twice those transforms and are not congruent.
    """
    return [
        CounterexamplePair(
            "corner",
            Triangle2D([(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]),
            Triangle2D([(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]),
        ),
        CounterexamplePair(
            "symmetric",
            Triangle2D([(-3.0, 0.0), (3.0, 0.0), (0.0, 4.0)]),
            Triangle2D([(-4.0, 0.0), (4.0, 0.0), (0.0, 3.0)]),
        ),
    ]


def compare_transforms(first, second, rho):
    """Evaluate both transforms on ``rho`` and their difference."""
    rho = numpy.asarray(rho, dtype=float)
    a = radon_exact(first, rho)
    b = radon_exact(second, rho)
    return TransformComparison(rho, a, b, a - b)
