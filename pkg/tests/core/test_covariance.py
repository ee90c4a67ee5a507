import itertools
import math
import unittest

import numpy

from xminpaq.core import (
    CovarianceMatrix3,
    Triangle2D,
    cone_directions,
    eigen_square_root,
    in_positive_cone,
    kappa,
    permutation_distance,
    roots_related,
    section_triangle,
    sigma_from_section,
    standard_square_root,
    validate_admissible,
)
from xminpaq.error import (
    AdmissibilityError,
    DomainError,
    InconsistentInputError,
)
from ..randomize import make_rng, random_admissible_sigma, random_orthogonal, random_permutation
from .. import common

INADMISSIBLE = CovarianceMatrix3([[1.0, 1.9, 0.0], [1.9, 4.0, 0.0], [0.0, 0.0, 1.0]])


class AdmissibilityTester(unittest.TestCase):
    def test_identity_is_admissible(self):
        """The identity is admissible with unit inverse row sums."""
        diagnostics = validate_admissible(common.IDENTITY)
        self.assertTrue(diagnostics.admissible)
        self.assertIsNone(diagnostics.reason)
        numpy.testing.assert_allclose(diagnostics.inverse_row_sums, numpy.ones(3))

    def test_not_symmetric(self):
        """An asymmetric matrix is flagged as such."""
        diagnostics = validate_admissible(CovarianceMatrix3([[1, 0.5, 0], [0, 1, 0], [0, 0, 1]]))
        self.assertFalse(diagnostics.admissible)
        self.assertFalse(diagnostics.symmetric)

    def test_not_positive_definite(self):
        """A negative eigenvalue fails positive definiteness."""
        diagnostics = validate_admissible(CovarianceMatrix3(numpy.diag([1.0, -1.0, 1.0])))
        self.assertFalse(diagnostics.admissible)
        self.assertTrue(diagnostics.symmetric)
        self.assertFalse(diagnostics.positive_definite)

    def test_not_finite(self):
        """NaN entries are not admissible."""
        diagnostics = validate_admissible(CovarianceMatrix3(numpy.full((3, 3), numpy.nan)))
        self.assertFalse(diagnostics.finite)
        self.assertFalse(diagnostics.admissible)

    def test_negative_inverse_row_sum(self):
        """A positive definite matrix with strongly unequal correlated coordinates."""
        diagnostics = validate_admissible(INADMISSIBLE)
        self.assertTrue(diagnostics.positive_definite)
        self.assertFalse(diagnostics.admissible)
        self.assertLess(numpy.min(diagnostics.inverse_row_sums), 0)
        with self.assertRaises(AdmissibilityError):
            standard_square_root(INADMISSIBLE)

    def test_diagnostics_to_dict(self):
        """The diagnostics dictionary carries the inverse row sums."""
        data = validate_admissible(common.NEGATIVE_CORRELATION).to_dict()
        self.assertTrue(data["admissible"])
        self.assertEqual(len(data["inverse_row_sums"]), 3)

    def test_wrong_shape(self):
        """Only 3 x 3 matrices are accepted."""
        with self.assertRaises(DomainError):
            CovarianceMatrix3(numpy.eye(2))
        with self.assertRaises(DomainError):
            CovarianceMatrix3.from_dict({"covariance": numpy.eye(3).tolist()})


class KappaTester(unittest.TestCase):
    def test_identity(self):
        """kappa of the identity is sqrt 3."""
        self.assertAlmostEqual(kappa(common.IDENTITY), math.sqrt(3.0), places=14)

    def test_diagonal(self):
        """kappa of diag(1, 4, 9) is sqrt(1 + 1/4 + 1/9)."""
        self.assertAlmostEqual(kappa(common.DIAG149), math.sqrt(1 + 1 / 4 + 1 / 9), places=14)

    def test_equicorrelated(self):
        """kappa of the -0.25 equicorrelated matrix is sqrt 6."""
        self.assertAlmostEqual(kappa(common.equicorrelated(-0.25)), math.sqrt(6.0), places=13)

    def test_scaling(self):
        """kappa halves when the covariance is multiplied by four."""
        sigma = random_admissible_sigma(make_rng(3))
        self.assertAlmostEqual(kappa(sigma.scaled(4.0)), kappa(sigma) / 2, places=12)


class SquareRootTester(unittest.TestCase):
    def test_standard_roots_of_random_covariances(self):
        """Standard roots reproduce Sigma and have a constant first column."""
        rng = make_rng(11)
        for _ in range(50):
            sigma = random_admissible_sigma(rng)
            root = standard_square_root(sigma)
            frobenius, column = root.residuals(sigma)
            self.assertLess(frobenius, 1e-12)
            self.assertLess(column, 1e-12)
            self.assertAlmostEqual(root.kappa, kappa(sigma), places=12)

    def test_rotated_root_is_standard(self):
        """Rotating the last two coordinates keeps a root standard."""
        sigma = common.NEGATIVE_CORRELATION
        root = standard_square_root(sigma).rotated(random_orthogonal(make_rng(2)))
        frobenius, column = root.residuals(sigma)
        self.assertLess(frobenius, 1e-12)
        self.assertLess(column, 1e-12)

    def test_roots_are_related_by_orthogonal_maps(self):
        """Any two roots differ by an orthogonal map."""
        sigma = common.DIAG149
        symmetric = eigen_square_root(sigma)
        numpy.testing.assert_allclose(symmetric @ symmetric.T, sigma.matrix, atol=1e-12)
        orthogonal = roots_related(symmetric, standard_square_root(sigma))
        numpy.testing.assert_allclose(orthogonal.T @ orthogonal, numpy.eye(3), atol=1e-12)

    def test_unrelated_roots(self):
        """Roots of different matrices are not related."""
        with self.assertRaises(DomainError):
            roots_related(numpy.eye(3), 2 * numpy.eye(3))


class SectionTester(unittest.TestCase):
    def test_identity_section_is_equilateral(self):
        """The section of the identity is equilateral with circumradius sqrt 2."""
        triangle = section_triangle(standard_square_root(common.IDENTITY))
        numpy.testing.assert_allclose(triangle.vertex_distances, [common.SQRT2] * 3, atol=1e-12)
        numpy.testing.assert_allclose(triangle.side_lengths, [math.sqrt(6.0)] * 3, atol=1e-12)
        common.assert_same_triangle(self, common.EQUILATERAL, triangle)

    def test_sections_enclose_the_origin(self):
        """Sections of admissible covariances have the origin strictly inside."""
        rng = make_rng(5)
        for _ in range(20):
            triangle = section_triangle(standard_square_root(random_admissible_sigma(rng)))
            self.assertTrue(triangle.enclosing)
            weights = triangle.barycentric_origin()
            self.assertTrue(numpy.all(weights > 0))
            self.assertAlmostEqual(float(numpy.sum(weights)), 1.0, places=12)

    def test_cone_directions(self):
        """The cone directions lie in the positive cone and their negatives do not."""
        root = standard_square_root(common.NEGATIVE_CORRELATION)
        inverse = numpy.linalg.inv(root.matrix)
        directions = cone_directions(inverse)
        for i in range(3):
            self.assertTrue(in_positive_cone(inverse, directions[:, i], tolerance=1e-12))
        self.assertFalse(in_positive_cone(inverse, -directions[:, 0]))

    def test_section_invariant_under_scaling(self):
        """Multiplying Sigma by s^2 keeps the section and divides kappa by s."""
        rng = make_rng(12)
        for _ in range(20):
            sigma = random_admissible_sigma(rng)
            s = rng.uniform(0.3, 3.0)
            root = standard_square_root(sigma)
            scaled = standard_square_root(sigma.scaled(s * s))
            numpy.testing.assert_allclose(
                section_triangle(scaled).vertices, section_triangle(root).vertices, atol=1e-10
            )
            self.assertAlmostEqual(scaled.kappa * s / root.kappa, 1.0, places=12)

    def test_convex_combinations_stay_in_cone(self):
        """Convex combinations of the cone directions stay in the cone and trace the section."""
        rng = make_rng(13)
        for _ in range(5):
            root = standard_square_root(random_admissible_sigma(rng))
            directions = cone_directions(root.matrix)
            numpy.testing.assert_array_less(0.0, directions[0])
            triangle = section_triangle(root)
            for weights in rng.dirichlet(numpy.ones(3), 100):
                point = directions @ weights
                self.assertTrue(in_positive_cone(root.matrix, point, tolerance=1e-10))
                self.assertGreater(point[0], 0.0)
                trace = triangle.barycentric(point[1:] / point[0])
                self.assertGreaterEqual(float(numpy.min(trace)), -1e-10)

    def test_reconstruction_round_trip(self):
        """Section and kappa determine the covariance, labels included."""
        rng = make_rng(7)
        for _ in range(200):
            sigma = random_admissible_sigma(rng)
            root = standard_square_root(sigma)
            rebuilt = sigma_from_section(section_triangle(root), root.kappa)
            self.assertLessEqual(permutation_distance(rebuilt, sigma).distance, 1e-8)
            common.assert_matrix_close(self, sigma, rebuilt, 1e-8)

    def test_reconstruction_ignores_orthogonal_maps(self):
        """Rotating or reflecting the section gives back the same covariance."""
        rng = make_rng(8)
        sigma = random_admissible_sigma(rng)
        root = standard_square_root(sigma)
        triangle = section_triangle(root).transformed(random_orthogonal(rng))
        common.assert_matrix_close(self, sigma, sigma_from_section(triangle, root.kappa), 1e-9)

    def test_reconstruction_scales_with_kappa(self):
        """Doubling kappa divides the covariance by four."""
        triangle = common.SCALENE
        small = sigma_from_section(triangle, 1.0)
        large = sigma_from_section(triangle, 2.0)
        common.assert_matrix_close(self, small.scaled(0.25), large, 1e-12)

    def test_reconstruction_needs_an_interior_origin(self):
        """Sections without the origin inside, or negative kappa, are rejected."""
        outside = Triangle2D([(1.0, 1.0), (2.0, 1.0), (1.0, 2.0)])
        with self.assertRaises(InconsistentInputError):
            sigma_from_section(outside, 1.0)
        with self.assertRaises(DomainError):
            sigma_from_section(common.EQUILATERAL, -1.0)


class PermutationTester(unittest.TestCase):
    def test_permuted_copies(self):
        """Every permuted copy is at distance zero with the right permutation matrix."""
        rng = make_rng(9)
        sigma = random_admissible_sigma(rng)
        for perm in itertools.permutations(range(3)):
            report = permutation_distance(sigma.permuted(perm), sigma)
            self.assertLess(report.distance, 1e-15)
            numpy.testing.assert_array_equal(
                report.matrix @ sigma.permuted(perm).matrix @ report.matrix.T, sigma.matrix
            )

    def test_ties_go_to_the_first_order(self):
        """Ties resolve to the identity permutation."""
        report = permutation_distance(common.IDENTITY, common.IDENTITY)
        self.assertEqual(report.best_permutation, (0, 1, 2))
        self.assertEqual(report.distance, 0.0)

    def test_distinct_diagonals(self):
        """Diagonals that are not permutations of each other stay apart."""
        report = permutation_distance(CovarianceMatrix3(numpy.diag([9.0, 16.0, 1.0])), common.DIAG149)
        self.assertGreater(report.distance, 1.0)

    def test_random_permutation_recovered(self):
        """A random relabeling is undone exactly."""
        rng = make_rng(10)
        sigma = random_admissible_sigma(rng)
        perm = random_permutation(rng)
        report = permutation_distance(sigma, sigma.permuted(perm))
        self.assertLess(report.distance, 1e-15)
