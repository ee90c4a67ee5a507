import math
import unittest

import mpmath
import numpy
import scipy.stats

from xminpaq.core import CovarianceMatrix3, kappa
from xminpaq.error import AdmissibilityError
from xminpaq.radon import decompose_atoms
from xminpaq.tail import TailModel, analytic_tail, m_forward, section_integral
from ..randomize import make_rng, random_admissible_sigma
from .. import common


class SectionIntegralTester(unittest.TestCase):
    def test_limits(self):
        """G vanishes at 0 and reaches 2 pi for large dilations."""
        atoms = decompose_atoms(common.SCALENE)
        self.assertAlmostEqual(float(section_integral(atoms, 0.0)), 0.0, places=12)
        self.assertAlmostEqual(float(section_integral(atoms, 60.0)), 2 * math.pi, places=10)

    def test_increasing(self):
        """G is nondecreasing in the dilation."""
        atoms = decompose_atoms(common.CASE_TWO)
        values = section_integral(atoms, numpy.linspace(0, 8, 200))
        self.assertTrue(numpy.all(numpy.diff(values) >= -1e-14))


class MForwardTester(unittest.TestCase):
    def test_identity(self):
        """The identity gives 1/8 at 0 and the cube of the normal tail at 1."""
        self.assertAlmostEqual(m_forward(common.IDENTITY, 0.0), 0.125, places=10)
        expected = scipy.stats.norm.sf(1.0) ** 3
        self.assertAlmostEqual(m_forward(common.IDENTITY, 1.0) / expected, 1.0, places=9)

    def test_equicorrelated_orthant(self):
        """The equicorrelated orthant probability has its closed form."""
        sigma = common.equicorrelated(-0.25)
        expected = 0.125 + 3 * math.asin(-0.25) / (4 * math.pi)
        self.assertAlmostEqual(m_forward(sigma, 0.0), expected, places=9)
        self.assertAlmostEqual(m_forward(sigma, 0.0), 0.064677, places=5)

    def test_diagonal_product(self):
        """Diagonal covariances give products of normal tails."""
        t = numpy.linspace(-2, 5, 15)
        expected = numpy.prod([scipy.stats.norm.sf(t / s) for s in (1.0, 2.0, 3.0)], axis=0)
        numpy.testing.assert_allclose(m_forward(common.DIAG149, t), expected, rtol=1e-8)

    def test_limits(self):
        """m tends to 1 far left and decreases strictly."""
        self.assertGreater(m_forward(common.NEGATIVE_CORRELATION, -8.0), 1 - 1e-9)
        values = m_forward(common.NEGATIVE_CORRELATION, numpy.linspace(-3, 5, 30))
        self.assertTrue(numpy.all(numpy.diff(values) < 0))

    def test_gaussian_decay(self):
        """-2 ln m / t^2 decreases towards kappa^2 for the identity."""
        sigma = common.IDENTITY
        k2 = kappa(sigma) ** 2
        t = numpy.array([3.0, 4.0, 5.0, 6.0])
        decay = -2 * numpy.log(m_forward(sigma, t)) / t**2
        self.assertTrue(numpy.all(decay > k2))
        self.assertLess(decay[-1], 1.2 * k2)
        self.assertTrue(numpy.all(numpy.diff(decay) < 0))

    def test_gaussian_decay_random(self):
        """-2 ln m / t^2 decreases towards kappa^2 from above on random covariances."""
        rng = make_rng(52)
        for _ in range(5):
            sigma = random_admissible_sigma(rng)
            k = kappa(sigma)
            t = numpy.array([4.0, 5.0, 6.0]) * math.sqrt(3) / k
            decay = -2 * numpy.log(m_forward(sigma, t)) / t**2
            self.assertTrue(numpy.all(decay > k**2), repr(sigma))
            self.assertTrue(numpy.all(numpy.diff(decay) < 0), repr(sigma))

    def test_scalar_and_array(self):
        """Scalars give floats and arrays keep their shape."""
        self.assertIsInstance(m_forward(common.IDENTITY, 0.5), float)
        self.assertEqual(m_forward(common.IDENTITY, numpy.zeros((2, 3))).shape, (2, 3))

    def test_inadmissible(self):
        """Inadmissible covariances are rejected."""
        sigma = CovarianceMatrix3([[1.0, 1.9, 0.0], [1.9, 4.0, 0.0], [0.0, 0.0, 1.0]])
        with self.assertRaises(AdmissibilityError):
            m_forward(sigma, 0.0)


class TailModelTester(unittest.TestCase):
    def test_matches_quadrature(self):
        """The tabulated model agrees with adaptive quadrature."""
        rng = make_rng(51)
        t = numpy.linspace(-2, 6, 17)
        for sigma in [common.IDENTITY, common.NEGATIVE_CORRELATION, random_admissible_sigma(rng)]:
            model = TailModel.from_sigma(sigma)
            numpy.testing.assert_allclose(model.tail(t), m_forward(sigma, t), rtol=1e-8)

    def test_log_tail_deep(self):
        """The log tail stays accurate at t = 20."""
        model = TailModel.from_sigma(common.IDENTITY)
        expected = 3 * scipy.stats.norm.logsf(20.0)
        self.assertAlmostEqual(float(model.log_tail(20.0)) / expected, 1.0, places=8)

    def test_laplace_relation(self):
        """F(s) is (2 pi)^(3/2) exp(s^2 / 2) m(s / kappa)."""
        model = TailModel.from_sigma(common.DIAG149)
        s = numpy.array([-1.0, 0.0, 2.0])
        expected = (2 * math.pi) ** 1.5 * numpy.exp(s**2 / 2) * m_forward(common.DIAG149, s / model.kappa)
        numpy.testing.assert_allclose(model.laplace(s), expected, rtol=1e-8)

    def test_extended_precision_matches_quadrature(self):
        """The mpmath evaluation agrees with adaptive quadrature on random covariances."""
        rng = make_rng(53)
        t = numpy.array([-1.0, 0.0, 1.0, 3.0])
        for sigma in [common.IDENTITY, common.DIAG149, random_admissible_sigma(rng)]:
            model = TailModel.from_sigma(sigma)
            with mpmath.workdps(30):
                values = [float(mpmath.exp(model.log_tail_mp(v))) for v in t]
            numpy.testing.assert_allclose(values, m_forward(sigma, t), rtol=1e-8)

    def test_cubic_prefactor(self):
        """Far out m(t) t^3 exp(kappa^2 t^2 / 2) settles to a constant with corrections in
        1 / t^2, on random covariances."""
        rng = make_rng(54)
        for sigma in [common.IDENTITY] + [random_admissible_sigma(rng) for _ in range(4)]:
            model = TailModel.from_sigma(sigma)
            with mpmath.workdps(40):
                scale = mpmath.mpf(model.kappa)
                levels = []
                for s in (50, 100, 200):
                    t = s / scale
                    levels.append(model.log_tail_mp(t) + s * s / 2 + 3 * mpmath.log(t))
                first = float(abs(levels[1] - levels[0]))
                second = float(abs(levels[2] - levels[1]))
            self.assertLessEqual(second, 0.3 * first + 1e-15, repr(sigma))

    def test_permutation_invariant(self):
        """Relabeling the coordinates leaves the tail unchanged."""
        t = numpy.linspace(-1, 4, 9)
        first = TailModel.from_sigma(common.NEGATIVE_CORRELATION).tail(t)
        second = TailModel.from_sigma(common.NEGATIVE_CORRELATION.permuted([2, 0, 1])).tail(t)
        numpy.testing.assert_allclose(first, second, rtol=1e-10)


class AnalyticTailTester(unittest.TestCase):
    def test_grid(self):
        """Analytic tails carry their model and hit 1/8 at t = 0."""
        tail = analytic_tail(common.IDENTITY, numpy.linspace(-2, 6, 41))
        self.assertEqual(tail.provenance, "analytic")
        self.assertIsNone(tail.stderr)
        self.assertIsNotNone(tail.model)
        self.assertTrue(numpy.all(numpy.diff(tail.m) <= 0))
        self.assertAlmostEqual(tail.m[20], 0.125, places=10)
