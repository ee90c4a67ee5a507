import math

import numpy

from xminpaq.core import CovarianceMatrix3, Triangle2D

SQRT2 = math.sqrt(2.0)

IDENTITY = CovarianceMatrix3(numpy.eye(3))
DIAG149 = CovarianceMatrix3(numpy.diag([1.0, 4.0, 9.0]))
NEGATIVE_CORRELATION = CovarianceMatrix3(
    [[1.0, -0.2, -0.3], [-0.2, 1.0, -0.1], [-0.3, -0.1, 1.0]]
)


def equicorrelated(rho):
    return CovarianceMatrix3(numpy.full((3, 3), rho) + (1.0 - rho) * numpy.eye(3))


EQUILATERAL = Triangle2D(
    [(SQRT2 * math.cos(t), SQRT2 * math.sin(t)) for t in (0.0, 2 * math.pi / 3, 4 * math.pi / 3)]
)

#: Case I, every foot inside its side, with six distinct distances.
SCALENE = Triangle2D([(0.1, 0.9), (0.1, -2.0), (-1.0, 0.3)])

#: Case II: the foot of side xy lies on the line x = 1 at (1, 0), beyond x.
CASE_TWO = Triangle2D([(1.0, 0.5), (1.0, 3.0), (-2.0, -1.5)])

#: Case III: the foot of side xy is the vertex x.
CASE_THREE = Triangle2D([(1.0, 0.0), (1.0, -2.0), (-1.0, 1.0)])


def assert_matrix_close(tester, expected, actual, tolerance, message=None):
    """Assert the largest entrywise difference of two matrices is within tolerance."""
    expected = numpy.asarray(getattr(expected, "matrix", expected), dtype=float)
    actual = numpy.asarray(getattr(actual, "matrix", actual), dtype=float)
    difference = float(numpy.max(numpy.abs(expected - actual)))
    tester.assertLessEqual(difference, tolerance, message or f"{expected} != {actual}")


def assert_same_triangle(tester, expected, actual, tolerance=1e-9):
    """Assert two triangles agree up to an orthogonal map fixing the origin."""
    tester.assertTrue(
        expected.orthogonally_equivalent(actual, tolerance),
        f"{expected} and {actual} differ by more than an orthogonal map",
    )


def within_standard_errors(tester, expected, estimate, stderr, count=4.0):
    tester.assertLessEqual(
        abs(expected - estimate),
        count * stderr,
        f"{estimate} is more than {count} standard errors ({stderr:.3g}) from {expected}",
    )
