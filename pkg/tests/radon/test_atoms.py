import math
import unittest

import numpy

from xminpaq.radon import (
    atom_gram_report,
    basic_triangle,
    classify_case,
    decompose_atoms,
    heights,
    phi,
    radon_exact,
    radon_from_atoms,
)
from xminpaq.core import Triangle2D
from xminpaq.error import DegenerateTriangleError, DomainError
from ..randomize import (
    make_rng,
    random_case_three_triangle,
    random_case_two_triangle,
    random_enclosing_triangle,
)
from .. import common


class PhiTester(unittest.TestCase):
    def test_values(self):
        """Phi at a few radii, inside, between and beyond a and b."""
        self.assertAlmostEqual(phi(1.0, 2.0, 0.5), math.pi / 3, places=14)
        self.assertAlmostEqual(phi(1.0, 2.0, math.sqrt(2.0)), math.pi / 12, places=14)
        self.assertEqual(phi(1.0, 2.0, 2.5), 0.0)

    def test_continuity(self):
        """Phi is continuous at a and vanishes at b."""
        for a, b in [(1.0, 2.0), (0.3, 0.31), (2.0, 7.0)]:
            self.assertAlmostEqual(phi(a, b, a * (1 - 1e-12)), phi(a, b, a * (1 + 1e-12)), places=5)
            self.assertAlmostEqual(phi(a, b, b * (1 - 1e-12)), 0.0, places=5)

    def test_vectorized(self):
        """Phi accepts arrays of radii."""
        rho = numpy.array([0.5, math.sqrt(2.0), 2.5])
        numpy.testing.assert_allclose(phi(1.0, 2.0, rho), [math.pi / 3, math.pi / 12, 0.0])

    def test_domain(self):
        """Atoms need a <= b and radii must be positive."""
        with self.assertRaises(DomainError):
            phi(2.0, 1.0, 0.5)
        with self.assertRaises(DomainError):
            phi(1.0, 2.0, 0.0)

    def test_phi_is_transform_of_basic_triangle(self):
        """Phi is the circular transform of the basic right triangle."""
        triangle = basic_triangle(1.0, 2.0)
        for rho in numpy.linspace(0.05, 2.2, 23):
            self.assertAlmostEqual(phi(1.0, 2.0, rho), radon_exact(triangle, rho), places=12)


class BasicTriangleTester(unittest.TestCase):
    def test_vertices(self):
        """Basic triangles have their right angle at (a, 0)."""
        numpy.testing.assert_allclose(
            basic_triangle(1.0, 2.0).vertices, [[0, 0], [1, 0], [1, math.sqrt(3.0)]]
        )
        numpy.testing.assert_allclose(basic_triangle(3.0, 5.0).vertices, [[0, 0], [3, 0], [3, 4]])

    def test_rejected(self):
        """Basic triangles need a < b."""
        with self.assertRaises(DegenerateTriangleError):
            basic_triangle(1.0, 1.0)
        with self.assertRaises(DomainError):
            basic_triangle(2.0, 1.0)


class HeightsTester(unittest.TestCase):
    def test_symmetric_foot(self):
        """The foot on a symmetric side is its midpoint."""
        foot = heights(Triangle2D([(1, 0), (0, 1), (-1, -1)]))[0]
        numpy.testing.assert_allclose(foot.point, [0.5, 0.5])
        self.assertAlmostEqual(foot.s, 0.5)

    def test_projection(self):
        """The foot is the orthogonal projection of the origin."""
        foot = heights(Triangle2D([(3, 0), (0, 4), (-1, -1)]))[0]
        numpy.testing.assert_allclose(foot.point, [48 / 25, 36 / 25])
        self.assertAlmostEqual(foot.distance, 2.4)

    def test_equilateral(self):
        """Every height of the equilateral fixture is sqrt 2 / 2 at the midpoint."""
        for foot in heights(common.EQUILATERAL):
            self.assertAlmostEqual(foot.distance, common.SQRT2 / 2, places=14)
            self.assertAlmostEqual(foot.s, 0.5, places=14)

    def test_scalene_fixture(self):
        """The scalene fixture has all feet inside and six distinct distances."""
        feet = heights(common.SCALENE)
        for foot in feet:
            self.assertTrue(0 < foot.s < 1)
        distances = sorted(
            [foot.distance for foot in feet] + list(common.SCALENE.vertex_distances)
        )
        numpy.testing.assert_allclose(
            distances, [0.1, 0.742, 0.773, 0.906, 1.044, 2.002], atol=1e-3
        )


class ClassifyCaseTester(unittest.TestCase):
    def test_fixtures(self):
        """Each fixture gets its case and special side."""
        self.assertEqual(classify_case(common.EQUILATERAL).case, "I")
        self.assertEqual(classify_case(common.SCALENE).case, "I")
        self.assertEqual(tuple(classify_case(common.CASE_TWO)), ("II", 0))
        self.assertEqual(tuple(classify_case(common.CASE_THREE)), ("III", 0))

    def test_not_enclosing(self):
        """Triangles without the origin inside have no case."""
        with self.assertRaises(DomainError):
            classify_case(Triangle2D([(0, 0), (3, 0), (0, 4)]))

    def test_random_constructions(self):
        """Random case II and III constructions classify as such."""
        rng = make_rng(4)
        for _ in range(10):
            self.assertEqual(classify_case(random_case_two_triangle(rng)).case, "II")
            self.assertEqual(classify_case(random_case_three_triangle(rng)).case, "III")


class DecompositionTester(unittest.TestCase):
    def test_equilateral(self):
        """The equilateral triangle has six equal +1 atoms."""
        atoms = decompose_atoms(common.EQUILATERAL)
        self.assertEqual(len(atoms), 6)
        for a, b, c in atoms:
            self.assertAlmostEqual(a, common.SQRT2 / 2, places=14)
            self.assertAlmostEqual(b, common.SQRT2, places=14)
            self.assertEqual(c, 1)
        self.assertEqual(atoms.case, "I")

    def test_case_two(self):
        """Case II has one -1 atom on the special side."""
        atoms = decompose_atoms(common.CASE_TWO)
        self.assertEqual(atoms.coefficient_sum, 4)
        negative = [atom for atom in atoms if atom.c < 0]
        self.assertEqual(len(negative), 1)
        self.assertAlmostEqual(negative[0].a, 1.0, places=14)
        self.assertAlmostEqual(negative[0].b, math.sqrt(1.25), places=14)

    def test_case_three(self):
        """Case III has five atoms."""
        atoms = decompose_atoms(common.CASE_THREE)
        self.assertEqual(len(atoms), 5)
        self.assertEqual(atoms.coefficient_sum, 5)
        self.assertEqual(atoms.case, "III")

    def test_equilateral_sums(self):
        """The atom sum matches the closed form of the equilateral transform."""
        atoms = decompose_atoms(common.EQUILATERAL)
        self.assertAlmostEqual(radon_from_atoms(atoms, 0.3), 2 * math.pi, places=13)
        expected = 6 * (math.pi / 3 - math.acos(common.SQRT2 / 2.4))
        self.assertAlmostEqual(radon_from_atoms(atoms, 1.2), expected, places=13)
        self.assertAlmostEqual(radon_exact(common.EQUILATERAL, 1.2), expected, places=12)
        self.assertEqual(radon_from_atoms(atoms, 1.5), 0.0)

    def test_decomposition_identity(self):
        """Atom sums equal the exact transform on random triangles of every case."""
        rng = make_rng(12)
        triangles = [random_enclosing_triangle(rng) for _ in range(94)]
        triangles += [random_case_two_triangle(rng) for _ in range(3)]
        triangles += [random_case_three_triangle(rng) for _ in range(3)]
        for triangle in triangles:
            atoms = decompose_atoms(triangle)
            rho = rng.uniform(1e-3, 1.1 * atoms.max_radius, 50)
            difference = radon_from_atoms(atoms, rho) - radon_exact(triangle, rho)
            self.assertLessEqual(float(numpy.max(numpy.abs(difference))), 1e-9, repr(triangle))


class GramTester(unittest.TestCase):
    def test_random_atom_families_are_independent(self):
        """Random six-atom families have nonsingular Gram matrices."""
        rng = make_rng(13)
        for _ in range(20):
            a = rng.uniform(0.2, 1.0, 6)
            b = a + rng.uniform(0.05, 1.5, 6)
            rho = numpy.linspace(0, 1.05 * float(numpy.max(b)), 201)[1:]
            report = atom_gram_report(list(zip(a, b)), rho)
            self.assertGreater(report.smallest_singular_value, 0.0)
            self.assertTrue(numpy.isfinite(report.condition_number))
