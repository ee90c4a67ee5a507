# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Linear algebra of trivariate covariances: admissibility, kappa, standard square
roots, sections of positive cones, and the reconstruction of a covariance from its
section triangle and kappa."""

import itertools

import numpy
import scipy.linalg

from xminpaq.error import (
    AdmissibilityError,
    DegenerateTriangleError,
    DomainError,
    InconsistentInputError,
)
from xminpaq.utilities import DIRECTION_EPSILON, SYMMETRY_TOLERANCE
from .triangle import Triangle2D

ONES = numpy.ones(3)
E1 = numpy.array([1.0, 0.0, 0.0])


class CovarianceMatrix3:
    """A 3x3 covariance matrix.

    Any real 3x3 matrix may be stored; use :func:`validate_admissible` (or
    :attr:`admissible`) to check the assumptions the reconstruction relies on.
    """

    def __init__(self, entries):
        """
        :param entries: The matrix entries.
        :type entries: array-like of shape (3, 3)
        :raises DomainError: If the entries are not 3x3.
        """
        matrix = numpy.array(entries, dtype=float)
        if matrix.shape != (3, 3):
            raise DomainError(f"Expected a 3x3 matrix, got shape {matrix.shape}")
        matrix.setflags(write=False)
        self._matrix = matrix

    def __repr__(self):
        return f"CovarianceMatrix3({self._matrix.tolist()})"

    @property
    def matrix(self):
        """The entries, as a read-only array."""
        return self._matrix

    @property
    def admissible(self):
        return validate_admissible(self).admissible

    def permuted(self, perm):
        """Return P Sigma P^t, the covariance of the coordinates reordered by ``perm``."""
        perm = list(perm)
        return CovarianceMatrix3(self._matrix[numpy.ix_(perm, perm)])

    def scaled(self, factor):
        """Return ``factor * Sigma``."""
        return CovarianceMatrix3(factor * self._matrix)

    def to_dict(self):
        return {"sigma": self._matrix.tolist()}

    @classmethod
    def from_dict(cls, data):
        try:
            entries = data["sigma"]
        except (KeyError, TypeError):
            raise DomainError("Covariance data needs a 'sigma' entry")
        return cls(entries)


class AdmissibilityDiagnostics:
    """Outcome of :func:`validate_admissible`."""

    def __init__(self, finite, symmetric, positive_definite, inverse_row_sums, reason):
        self._finite = finite
        self._symmetric = symmetric
        self._positive_definite = positive_definite
        self._inverse_row_sums = inverse_row_sums
        self._reason = reason

    def __repr__(self):
        return f"<AdmissibilityDiagnostics admissible={self.admissible} reason={self._reason!r}>"

    @property
    def finite(self):
        return self._finite

    @property
    def symmetric(self):
        return self._symmetric

    @property
    def positive_definite(self):
        return self._positive_definite

    @property
    def inverse_row_sums(self):
        """Sigma^-1 1, or None when Sigma is not symmetric positive definite."""
        return self._inverse_row_sums

    @property
    def admissible(self):
        return self._reason is None

    @property
    def reason(self):
        """Why the matrix was rejected, or None."""
        return self._reason

    def to_dict(self):
        sums = self._inverse_row_sums
        return {
            "finite": self._finite,
            "symmetric": self._symmetric,
            "positive_definite": self._positive_definite,
            "inverse_row_sums": None if sums is None else sums.tolist(),
            "admissible": self.admissible,
            "reason": self._reason,
        }


def validate_admissible(sigma):
    """Check that Sigma is symmetric positive definite with Sigma^-1 1 > 0.

    Rejections are reported in the returned diagnostics, never raised.

    :param CovarianceMatrix3 sigma: The matrix to check.
    :rtype: AdmissibilityDiagnostics
    """
    matrix = _as_matrix(sigma)
    if not numpy.all(numpy.isfinite(matrix)):
        return AdmissibilityDiagnostics(False, False, False, None, "entries are not finite")

    norm = numpy.linalg.norm(matrix)
    if numpy.linalg.norm(matrix - matrix.T) > SYMMETRY_TOLERANCE * norm:
        return AdmissibilityDiagnostics(True, False, False, None, "matrix is not symmetric")

    symmetric = 0.5 * (matrix + matrix.T)
    if norm == 0 or numpy.linalg.eigvalsh(symmetric)[0] <= 0:
        return AdmissibilityDiagnostics(
            True, True, False, None, "matrix is not positive definite"
        )

    sums = scipy.linalg.solve(symmetric, ONES, assume_a="pos")
    reason = None
    if not numpy.all(sums > 0):
        reason = "Sigma^-1 1 has a non-positive component"
    return AdmissibilityDiagnostics(True, True, True, sums, reason)


def _as_matrix(sigma):
    if isinstance(sigma, CovarianceMatrix3):
        return sigma.matrix
    return numpy.asarray(sigma, dtype=float)


def _require_admissible(sigma):
    diagnostics = validate_admissible(sigma)
    if not diagnostics.admissible:
        raise AdmissibilityError(f"Inadmissible covariance: {diagnostics.reason}")
    return diagnostics


def kappa(sigma):
    """Return kappa = sqrt(1^t Sigma^-1 1).

    :param CovarianceMatrix3 sigma: An admissible covariance.
    :raises AdmissibilityError: If sigma is not admissible.
    """
    return float(numpy.sqrt(numpy.sum(_require_admissible(sigma).inverse_row_sums)))


class StandardRoot:
    """A square root N of Sigma whose first column is kappa^-1 1."""

    def __init__(self, matrix, kappa):
        self._matrix = numpy.array(matrix, dtype=float)
        self._matrix.setflags(write=False)
        self._kappa = float(kappa)

    def __repr__(self):
        return f"StandardRoot({self._matrix.tolist()}, kappa={self._kappa})"

    @property
    def matrix(self):
        return self._matrix

    @property
    def kappa(self):
        return self._kappa

    def residuals(self, sigma):
        """Return the relative Frobenius error of N N^t against Sigma and the largest
        deviation of N e1 from kappa^-1 1."""
        matrix = _as_matrix(sigma)
        product = self._matrix @ self._matrix.T
        frobenius = numpy.linalg.norm(product - matrix) / numpy.linalg.norm(matrix)
        column = numpy.max(numpy.abs(self._matrix[:, 0] - ONES / self._kappa))
        return float(frobenius), float(column)

    def rotated(self, orthogonal):
        """Return N diag(1, O2), another standard root of the same Sigma.

        :param orthogonal: A 2x2 orthogonal matrix.
        """
        block = scipy.linalg.block_diag(1.0, numpy.asarray(orthogonal, dtype=float))
        return StandardRoot(self._matrix @ block, self._kappa)


def standard_square_root(sigma):
    """Return the standard square root of Sigma.

    The Cholesky factor L is rotated by an orthogonal O taking e1 to L^-1 1 / kappa.
    O is the Householder reflection exchanging those two unit vectors, composed with
    diag(1, 1, -1) so that det O = +1.

    :param CovarianceMatrix3 sigma: An admissible covariance.
    :rtype: StandardRoot
    :raises AdmissibilityError: If sigma is not admissible.
    """
    sums = _require_admissible(sigma).inverse_row_sums
    k = numpy.sqrt(numpy.sum(sums))
    matrix = _as_matrix(sigma)
    lower = scipy.linalg.cholesky(0.5 * (matrix + matrix.T), lower=True)
    target = scipy.linalg.solve_triangular(lower, ONES, lower=True) / k

    v = E1 - target
    if numpy.linalg.norm(v) <= 1e-15:
        orthogonal = numpy.eye(3)
    else:
        householder = numpy.eye(3) - 2.0 * numpy.outer(v, v) / (v @ v)
        orthogonal = householder @ numpy.diag([1.0, 1.0, -1.0])
    return StandardRoot(lower @ orthogonal, k)


def eigen_square_root(sigma):
    """Return the symmetric square root P D^1/2 P^t of a positive definite Sigma.

    This is a generalized square root, not a standard one; see :func:`roots_related`.
    """
    matrix = _as_matrix(sigma)
    values, vectors = numpy.linalg.eigh(0.5 * (matrix + matrix.T))
    if values[0] <= 0:
        raise AdmissibilityError("Matrix is not positive definite")
    return (vectors * numpy.sqrt(values)) @ vectors.T


def roots_related(first, second, tolerance=1e-9):
    """Return the orthogonal O with ``second = first @ O``.

    Any two square roots of the same matrix are related this way.

    :raises DomainError: If first^-1 second is not orthogonal.
    """
    first = numpy.asarray(getattr(first, "matrix", first), dtype=float)
    second = numpy.asarray(getattr(second, "matrix", second), dtype=float)
    orthogonal = numpy.linalg.solve(first, second)
    if numpy.max(numpy.abs(orthogonal.T @ orthogonal - numpy.eye(3))) > tolerance:
        raise DomainError("The matrices are not square roots of the same matrix")
    return orthogonal


def cone_directions(matrix):
    """Return the directions A^-1 e_i of the positive cone {u : A u >= 0}, as columns."""
    return numpy.linalg.inv(numpy.asarray(matrix, dtype=float))


def in_positive_cone(matrix, point, tolerance=0.0):
    """Whether ``A u >= -tolerance`` componentwise."""
    return bool(numpy.all(numpy.asarray(matrix) @ numpy.asarray(point) >= -tolerance))


class SectionTriangle(Triangle2D):
    """The section of the positive cone of a standard root by the plane x1 = 1.

    Vertex i is the trace of the direction N^-1 e_i, and the origin is interior.
    """

    def __init__(self, vertices):
        super().__init__(vertices)
        if not self.enclosing:
            raise AdmissibilityError("Section triangle does not enclose the origin")

    def barycentric_origin(self):
        """Barycentric weights of the origin, all strictly positive."""
        return self.barycentric((0.0, 0.0))


def section_triangle(root):
    """Return the section of the positive cone of N by the plane x1 = 1.

    :param StandardRoot root: A standard square root.
    :rtype: SectionTriangle
    :raises AdmissibilityError: If some cone direction is within the admissibility
        margin of the plane x1 = 0.
    """
    directions = numpy.linalg.inv(root.matrix)
    normalized = directions[0] / numpy.linalg.norm(directions, axis=0)
    if numpy.any(normalized <= DIRECTION_EPSILON):
        raise AdmissibilityError(
            f"Cone direction too close to x1 = 0 (first coordinates {normalized.tolist()})"
        )
    return SectionTriangle((directions[1:] / directions[0]).T)


def sigma_from_section(triangle, kappa):
    """Rebuild Sigma from a triangle enclosing the origin and kappa.

    With W the matrix of columns (1, alpha_i, beta_i) and mu = kappa W^-1 e1, the
    covariance is Lambda^-1 W^-1 W^-t Lambda^-1 with Lambda = diag(mu).  The labeling
    of the vertices fixes the permutation.

    :param Triangle2D triangle: Triangle enclosing the origin.
    :param float kappa: Positive scale.
    :rtype: CovarianceMatrix3
    :raises DegenerateTriangleError: If W is singular.
    :raises InconsistentInputError: If some mu_i <= 0.
    """
    if not (numpy.isfinite(kappa) and kappa > 0):
        raise DomainError(f"kappa must be positive, got {kappa}")
    w = numpy.vstack([ONES, numpy.asarray(triangle.vertices, dtype=float).T])
    try:
        w_inv = numpy.linalg.inv(w)
    except numpy.linalg.LinAlgError:
        raise DegenerateTriangleError("Section matrix is singular")
    mu = kappa * w_inv[:, 0]
    if not numpy.all(mu > 0):
        raise InconsistentInputError(
            f"Origin is not interior to the triangle (mu = {mu.tolist()})"
        )
    scaled = w_inv / mu[:, None]
    sigma = scaled @ scaled.T
    return CovarianceMatrix3(0.5 * (sigma + sigma.T))


class PermutationReport:
    """Best match between two covariances under simultaneous row/column permutation."""

    def __init__(self, best_permutation, distance):
        self._best_permutation = tuple(best_permutation)
        self._distance = float(distance)

    def __repr__(self):
        return f"<PermutationReport {self._best_permutation} distance={self._distance:.3e}>"

    @property
    def best_permutation(self):
        return self._best_permutation

    @property
    def distance(self):
        """Frobenius distance at the best permutation."""
        return self._distance

    @property
    def matrix(self):
        """The permutation matrix P with (P a P^t)_ij = a_{p(i) p(j)}."""
        return numpy.eye(3)[list(self._best_permutation)]


def permutation_distance(a, b):
    """Minimize the Frobenius distance between a reordered ``a`` and ``b`` over all six
    coordinate orders.  Ties go to the lexicographically first order.

    :rtype: PermutationReport
    """
    a = _as_matrix(a)
    b = _as_matrix(b)
    best = None
    for perm in itertools.permutations(range(3)):
        distance = numpy.linalg.norm(a[numpy.ix_(perm, perm)] - b)
        if best is None or distance < best[1]:
            best = (perm, distance)
    return PermutationReport(*best)
