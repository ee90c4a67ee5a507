# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""The two ways of recovering a covariance from the tail of its minimum.

The fit route searches over section triangles and kappa for the tail that best
matches the data.  The constructive route inverts the Laplace chain to obtain the
circular transform of the section, then recovers the triangle from it.
"""

import abc
import logging
import math

import numpy
import scipy.optimize

from xminpaq.core.covariance import sigma_from_section
from xminpaq.error import DataError, ResolutionError, XminError
from xminpaq.radon.polar import gap_violation, random_polar, triangle_from_polar
from xminpaq.radon.recovery import recover_triangle
from xminpaq.tail.forward import TailModel
from xminpaq.tail.kappa import estimate_kappa, refine_kappa
from xminpaq.tail.laplace import radon_from_tail
from .config import RecoveryConfig
from .report import RecoveryReport

log = logging.getLogger(__name__)

#: Tail values outside (USABLE_LOW, 1 - USABLE_LOW) carry no information for the fit.
USABLE_LOW = 1e-6

#: Fewest usable tail points the fit route accepts.
MIN_USABLE_POINTS = 8

_EQUILATERAL = numpy.array([2 * math.pi / 3, 4 * math.pi / 3] + [0.5 * math.log(2.0)] * 3)


class AbstractRoute:
    """Abstract recovery route"""

    #: Name recorded in reports.
    name = None

    def __init__(self, config=None):
        """
        :param RecoveryConfig config: Options; defaults are used if omitted.
        """
        self.config = RecoveryConfig() if config is None else config

    def __repr__(self):
        return f"<{type(self).__name__} {self.config}>"

    def estimate_kappa(self, tail):
        """Run :func:`~xminpaq.tail.estimate_kappa` with the configured options."""
        return estimate_kappa(
            tail,
            window=self.config.kappa_window,
            log_prefactor=self.config.kappa_log_prefactor,
            weight_power=self.config.kappa_weight_power,
        )

    @abc.abstractmethod
    def recover(self, tail):
        """Recover a covariance from a tail.

        :param TailGrid tail: The tail of X_min.
        :rtype: RecoveryReport
        """

    def __call__(self, tail):
        return self.recover(tail)


class FitRoute(AbstractRoute):
    """Least-squares fit of the forward model to the tail.

    The unknowns are the polar parameters of the section triangle (its first vertex
    on the positive horizontal axis, the others counterclockwise) and log kappa.  A
    Nelder-Mead search from each start is polished by a trust-region least-squares
    solve, and the start with the smallest objective wins.
    """

    name = "fit"

    def recover(self, tail):
        config = self.config
        estimate = self.estimate_kappa(tail)
        usable = tail.usable(USABLE_LOW, 1.0 - USABLE_LOW)
        if int(numpy.sum(usable)) < MIN_USABLE_POINTS:
            raise ResolutionError(
                f"Only {int(numpy.sum(usable))} tail values lie in "
                f"({USABLE_LOW:g}, {1 - USABLE_LOW:g})"
            )
        t = tail.t[usable]
        m = tail.m[usable]
        if tail.empirical:
            weights = tail.weights()[usable]
            if len(t) < 3 * MIN_USABLE_POINTS:
                import warnings

                warnings.warn(f"Empirical tail has only {len(t)} usable points")
        else:
            weights = numpy.ones_like(t)
        root_weights = numpy.sqrt(weights)
        penalty = 1e3 * float(numpy.sqrt(numpy.sum(weights)))

        def residuals(params):
            triangle = triangle_from_polar(params[:5])
            if triangle is None:
                return numpy.full(len(t), penalty * (1.0 + gap_violation(params)))
            kappa = math.exp(numpy.clip(params[5], -50.0, 50.0))
            model = TailModel(triangle, kappa).tail(t)
            return root_weights * (model - m)

        def objective(params):
            return float(numpy.mean(residuals(params) ** 2))

        rng = numpy.random.default_rng(config.seed)
        log_kappa = math.log(estimate.kappa)
        starts = [numpy.append(_EQUILATERAL, log_kappa)]
        for _ in range(config.multistart - 1):
            starts.append(numpy.append(random_polar(rng, 0.5, 3.0), log_kappa))

        best = None
        history = []
        for index, start in enumerate(starts):
            simplex = scipy.optimize.minimize(
                objective,
                start,
                method="Nelder-Mead",
                options={
                    "maxfev": config.max_evaluations,
                    "xatol": 1e-10,
                    "fatol": 1e-3 * config.tolerance,
                },
            )
            params = simplex.x
            if triangle_from_polar(params[:5]) is not None:
                polish = scipy.optimize.least_squares(
                    residuals, params, method="trf", x_scale="jac", xtol=1e-14, ftol=1e-15
                )
                if objective(polish.x) <= simplex.fun:
                    params = polish.x
            value = objective(params)
            feasible = triangle_from_polar(params[:5]) is not None
            history.append({"start": index, "objective": value, "feasible": feasible})
            log.debug("Fit start %d: objective %.3e feasible %s", index, value, feasible)
            if feasible and (best is None or value < best[1]):
                best = (params, value, index)

        threshold = config.chi2_tolerance if tail.empirical else config.tolerance
        diagnostics = {
            "kappa_estimate": estimate.to_dict(),
            "usable_points": int(len(t)),
            "starts": history,
            "threshold": threshold,
        }
        if best is None:
            log.warning("No start of the fit route reached a feasible triangle")
            return RecoveryReport(
                None, estimate.kappa, None, math.inf, self.name, False, diagnostics=diagnostics
            )
        params, value, index = best
        triangle = triangle_from_polar(params[:5])
        kappa = math.exp(params[5])
        diagnostics["best_start"] = index
        success = value <= threshold
        if not success:
            log.warning("Fit objective %.3e exceeds the tolerance %.3e", value, threshold)
        return RecoveryReport(
            sigma_from_section(triangle, kappa),
            kappa,
            triangle,
            value,
            self.name,
            success,
            diagnostics=diagnostics,
        )


class ConstructiveRoute(AbstractRoute):
    """Double Laplace inversion to the circular transform, then triangle recovery.

    The tail must carry its model: kappa is sharpened on it in extended precision
    before the inversion, and the triangle is matched to the transform as smoothed
    by the outer inversion.  Reports are flagged experimental.
    """

    name = "constructive"

    def recover(self, tail):
        """
        :raises DataError: If the tail is empirical or carries no model.
        :raises InversionUnstableError: If the Laplace inversion breaks down.
        """
        import warnings

        if tail.empirical:
            raise DataError("The constructive route needs a noiseless tail; use the fit route")
        warnings.warn("The constructive route is experimental")
        config = self.config
        estimate = refine_kappa(tail, self.estimate_kappa(tail))
        profile = radon_from_tail(
            tail,
            estimate.kappa,
            order=config.gs_order,
            tolerance=config.gs_tolerance,
            rho_points=config.rho_points,
            rho_min=config.rho_min,
            rho_max=config.rho_max,
        )
        diagnostics = {
            "kappa_estimate": estimate.to_dict(),
            "profile_error": float(numpy.median(profile.errors)),
            "unstable_radii": int(numpy.sum(profile.errors >= 2 * math.pi)),
        }
        try:
            triangle = recover_triangle(profile, seed=config.seed)
        except XminError as exc:
            log.warning("Triangle recovery from the inverted profile failed: %s", exc)
            diagnostics["failure"] = str(exc)
            return RecoveryReport(
                None,
                estimate.kappa,
                None,
                math.inf,
                self.name,
                False,
                experimental=True,
                diagnostics=diagnostics,
            )

        usable = tail.usable(USABLE_LOW, 1.0 - USABLE_LOW)
        model = TailModel(triangle, estimate.kappa).tail(tail.t[usable])
        residual = float(numpy.mean((model - tail.m[usable]) ** 2))
        return RecoveryReport(
            sigma_from_section(triangle, estimate.kappa),
            estimate.kappa,
            triangle,
            residual,
            self.name,
            True,
            experimental=True,
            diagnostics=diagnostics,
        )


ROUTE_TYPES = {route.name: route for route in (FitRoute, ConstructiveRoute)}
