import unittest

import numpy

from xminpaq.radon import compare_transforms, counterexample_pairs, radon_exact


class CounterexampleTester(unittest.TestCase):
    def setUp(self):
        self.rho = numpy.linspace(0, 4.2, 1001)[1:]
        self.pairs = {pair.name: pair for pair in counterexample_pairs()}

    def test_names(self):
        """Both counterexample pairs are provided."""
        self.assertEqual(set(self.pairs), {"corner", "symmetric"})

    def test_not_enclosing(self):
        """Counterexample triangles have the origin on their boundary."""
        for pair in self.pairs.values():
            self.assertFalse(pair.first.enclosing)
            self.assertFalse(pair.second.enclosing)

    def test_equal_transforms(self):
        """The transforms of each pair agree to 1e-12."""
        for pair in self.pairs.values():
            comparison = compare_transforms(pair.first, pair.second, self.rho)
            self.assertLessEqual(numpy.max(numpy.abs(comparison.difference)), 1e-12, pair.name)

    def test_corner_pair_is_mirrored(self):
        """The corner pair are mirror images."""
        pair = self.pairs["corner"]
        self.assertTrue(pair.first.orthogonally_equivalent(pair.second))

    def test_symmetric_pair_not_congruent(self):
        """The symmetric pair are not congruent."""
        pair = self.pairs["symmetric"]
        self.assertFalse(pair.first.congruent(pair.second, 1e-6))
        self.assertFalse(pair.first.orthogonally_equivalent(pair.second, 1e-6))

    def test_symmetric_is_twice_corner(self):
        """The symmetric transform is twice the corner one."""
        corner = radon_exact(self.pairs["corner"].first, self.rho)
        symmetric = radon_exact(self.pairs["symmetric"].first, self.rho)
        numpy.testing.assert_allclose(symmetric, 2 * corner, atol=1e-9)

    def test_comparison_fields(self):
        """The comparison carries both transforms and their difference."""
        pair = self.pairs["symmetric"]
        comparison = compare_transforms(pair.first, pair.second, self.rho)
        numpy.testing.assert_array_equal(comparison.rho, self.rho)
        numpy.testing.assert_allclose(comparison.first - comparison.second, comparison.difference)
