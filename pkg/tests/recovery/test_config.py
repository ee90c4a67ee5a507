import unittest

import numpy

from xminpaq.error import DomainError
from xminpaq.recovery import ROUTES, RecoveryConfig


class RecoveryConfigTester(unittest.TestCase):
    def test_defaults(self):
        """Defaults select the fit route with eight starts and an outer order of 16."""
        config = RecoveryConfig()
        self.assertEqual(config.route, "fit")
        self.assertEqual(config.multistart, 8)
        self.assertEqual(config.gs_order, 16)
        self.assertEqual((config.rho_points, config.rho_min, config.rho_max), (8, 0.8, 3.0))
        self.assertIsNone(config.kappa_window)
        self.assertEqual(set(ROUTES), {"fit", "constructive"})

    def test_unknown_option(self):
        """Misspelled options are rejected."""
        with self.assertRaises(DomainError):
            RecoveryConfig(multistarts=3)

    def test_invalid_values(self):
        """Out-of-range values of every option are rejected."""
        for options in [
            {"route": "spline"},
            {"multistart": 0},
            {"max_evaluations": 2.5},
            {"tolerance": 0.0},
            {"kappa_window": 1.0},
            {"gs_order": 7},
            {"gs_order": 2},
            {"t_min": 3.0, "t_max": 1.0},
            {"grid_points": 2},
            {"seed": -1},
            {"rho_min": 0.0},
            {"rho_min": 3.0, "rho_max": 2.0},
            {"rho_points": 2},
        ]:
            with self.assertRaises(DomainError, msg=repr(options)):
                RecoveryConfig(**options)

    def test_replace(self):
        """Replacing an option keeps the others and leaves the original alone."""
        config = RecoveryConfig(seed=3)
        changed = config.replace(multistart=2)
        self.assertEqual(changed.multistart, 2)
        self.assertEqual(changed.seed, 3)
        self.assertEqual(config.multistart, 8)
        with self.assertRaises(DomainError):
            config.replace(route="other")

    def test_integers_normalized(self):
        """Integral floats become ints."""
        self.assertIsInstance(RecoveryConfig(multistart=4.0).multistart, int)

    def test_tail_grid(self):
        """The tail grid spans t_min to t_max with grid_points points."""
        grid = RecoveryConfig(t_min=-1.0, t_max=1.0, grid_points=5).tail_grid()
        numpy.testing.assert_allclose(grid, [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_to_dict(self):
        """The dictionary form rebuilds the same configuration."""
        options = RecoveryConfig(route="constructive").to_dict()
        self.assertEqual(options["route"], "constructive")
        self.assertEqual(RecoveryConfig(**options).to_dict(), options)
