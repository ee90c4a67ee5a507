import math
import unittest

import numpy

from xminpaq.core import Triangle2D
from xminpaq.error import DegenerateTriangleError, DomainError
from ..randomize import make_rng, random_enclosing_triangle, random_orthogonal
from .. import common


class TriangleTester(unittest.TestCase):
    def test_area_and_orientation(self):
        """Area, orientation, side lengths and vertex distances of the 3-4-5 triangle."""
        triangle = Triangle2D([(0, 0), (3, 0), (0, 4)])
        self.assertEqual(triangle.area, 6.0)
        self.assertGreater(triangle.signed_area, 0)
        self.assertLess(triangle.relabeled((0, 2, 1)).signed_area, 0)
        numpy.testing.assert_allclose(sorted(triangle.side_lengths), [3, 4, 5])
        numpy.testing.assert_allclose(triangle.vertex_distances, [0, 3, 4])

    def test_degenerate(self):
        """Collinear, short and non-finite vertex lists are rejected."""
        with self.assertRaises(DegenerateTriangleError):
            Triangle2D([(0, 0), (1, 1), (2, 2)])
        with self.assertRaises(DomainError):
            Triangle2D([(0, 0), (1, 1)])
        with self.assertRaises(DomainError):
            Triangle2D([(0, 0), (1, 1), (numpy.inf, 0)])

    def test_barycentric(self):
        """Vertices and centroid have the expected barycentric coordinates."""
        triangle = common.SCALENE
        for vertex, expected in zip(triangle.vertices, numpy.eye(3)):
            numpy.testing.assert_allclose(triangle.barycentric(vertex), expected, atol=1e-12)
        centroid = numpy.mean(triangle.vertices, axis=0)
        numpy.testing.assert_allclose(triangle.barycentric(centroid), [1 / 3] * 3, atol=1e-12)
        self.assertTrue(triangle.contains(centroid))
        self.assertFalse(triangle.contains((5.0, 5.0)))

    def test_enclosing(self):
        """The fixtures enclose the origin; a triangle with a vertex on it does not."""
        self.assertTrue(common.EQUILATERAL.enclosing)
        self.assertTrue(common.CASE_TWO.enclosing)
        self.assertTrue(common.CASE_THREE.enclosing)
        self.assertFalse(Triangle2D([(0, 0), (3, 0), (0, 4)]).enclosing)

    def test_orthogonal_images(self):
        """Orthogonal images keep vertex distances and are recognized as such."""
        rng = make_rng(1)
        for _ in range(20):
            triangle = random_enclosing_triangle(rng)
            image = triangle.transformed(random_orthogonal(rng))
            numpy.testing.assert_allclose(image.vertex_distances, triangle.vertex_distances)
            self.assertTrue(triangle.orthogonally_equivalent(image))
            self.assertTrue(triangle.orthogonally_equivalent(image.relabeled((2, 0, 1))))
            self.assertTrue(triangle.congruent(image))

    def test_congruent_but_moved(self):
        """A translated copy is congruent but not an orthogonal image about the origin."""
        triangle = common.SCALENE
        moved = Triangle2D(triangle.vertices + numpy.array([0.2, -0.1]))
        self.assertTrue(triangle.congruent(moved))
        self.assertFalse(triangle.orthogonally_equivalent(moved))

    def test_dict_round_trip(self):
        """Triangles survive the dictionary form."""
        data = common.CASE_TWO.to_dict()
        self.assertEqual(data["vertices"][1], [1.0, 3.0])
        self.assertTrue(Triangle2D.from_dict(data).orthogonally_equivalent(common.CASE_TWO))
        with self.assertRaises(DomainError):
            Triangle2D.from_dict({"points": []})

    def test_equilateral_fixture(self):
        """The equilateral fixture has sides sqrt 6."""
        numpy.testing.assert_allclose(
            common.EQUILATERAL.side_lengths, [math.sqrt(6.0)] * 3, atol=1e-12
        )
