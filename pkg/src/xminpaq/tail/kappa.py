# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Estimation of kappa from the Gaussian decay of the tail of X_min."""

import logging

import mpmath
import numpy

from xminpaq.error import DataError, ResolutionError

log = logging.getLogger(__name__)


class KappaEstimate:
    """A fit ln m(t) + p ln t = q t^2 + c1 t + c0 with kappa = sqrt(-2 q)."""

    def __init__(self, kappa, coefficients, window, points, stderr, log_prefactor):
        self._kappa = kappa
        self._coefficients = tuple(coefficients)
        self._window = window
        self._points = points
        self._stderr = stderr
        self._log_prefactor = log_prefactor

    def __repr__(self):
        return f"<KappaEstimate {self._kappa:.6g} +/- {self._stderr:.2g} from {self._points} points>"

    def __float__(self):
        return self._kappa

    @property
    def kappa(self):
        return self._kappa

    @property
    def coefficients(self):
        """(q, c1, c0); the quadratic coefficient q is -kappa^2 / 2."""
        return self._coefficients

    @property
    def window(self):
        """The (first, last) t used in the fit."""
        return self._window

    @property
    def points(self):
        return self._points

    @property
    def stderr(self):
        """Standard error of kappa from the fit residuals (or sampling errors)."""
        return self._stderr

    @property
    def log_prefactor(self):
        return self._log_prefactor

    def log_tail(self, t):
        """The fitted ln m(t), usable for extrapolation beyond the window."""
        t = numpy.asarray(t, dtype=float)
        q, c1, c0 = self._coefficients
        return q * t**2 + c1 * t + c0 - self._log_prefactor * numpy.log(t)

    def to_dict(self):
        return {
            "kappa": self._kappa,
            "coefficients": list(self._coefficients),
            "window": list(self._window),
            "points": self._points,
            "stderr": self._stderr,
            "log_prefactor": self._log_prefactor,
        }


def estimate_kappa(tail, window=None, log_prefactor=3.0, weight_power=2.0, min_points=4):
    """Estimate kappa from the tail, where ln m(t) ~ -kappa^2 t^2 / 2.

    The fit is weighted least squares of ln m(t) + p ln t against t^2, t and 1 over
    the points with 0 < m(t) <= ``window``.  The polynomial correction p accounts for
    the t^-3 factor in the tail of a Gaussian over a cone with an interior section;
    p = 0 fits the bare quadratic.  Noiseless tails are weighted by t^w, empirical
    ones by the inverse variance of ln m.

    :param TailGrid tail: The tail.
    :param float window: Largest m used; defaults to 1e-6 for noiseless tails and
        1e-3 for empirical ones.  Widened to m < 1e-3 if too few points qualify.
    :param float log_prefactor: The power p.
    :param float weight_power: The power w.
    :param int min_points: Fewest points accepted.
    :rtype: KappaEstimate
    :raises ResolutionError: If the tail never drops below 1e-3, or too few points.
    :raises DataError: If the tail is zero or increasing inside the window, or does not
        decay faster than its linear term.
    """
    t = tail.t
    m = tail.m
    if not numpy.any((m > 0) & (m < 1e-3)):
        raise ResolutionError("The tail must reach values below 1e-3 to estimate kappa")
    if window is None:
        window = 1e-3 if tail.empirical else 1e-6

    if tail.empirical:
        # A zero count ends the usable part of an empirical tail.
        positive = m > 0
        last = len(m) if numpy.all(positive) else int(numpy.argmin(positive))
    else:
        last = len(m)
    selected = numpy.flatnonzero((m[:last] <= window) & (t[:last] > 0))
    if len(selected) < 2 * min_points:
        log.info("Only %d tail points below %.1e; widening the window to 1e-3", len(selected), window)
        selected = numpy.flatnonzero((m[:last] < 1e-3) & (t[:last] > 0))
    if len(selected) < min_points:
        raise ResolutionError(f"Only {len(selected)} tail points are usable for kappa")

    ts = t[selected]
    ms = m[selected]
    if numpy.any(ms <= 0):
        raise DataError("Tail vanishes inside the kappa window")
    if numpy.any(numpy.diff(ms) > 0):
        raise DataError("Tail increases inside the kappa window")

    y = numpy.log(ms) + log_prefactor * numpy.log(ts)
    design = numpy.column_stack([ts**2, ts, numpy.ones_like(ts)])
    if tail.empirical:
        weights = tail.n_samples * ms / (1.0 - ms)
    else:
        weights = ts**weight_power
    root = numpy.sqrt(weights)
    coefficients, *_ = numpy.linalg.lstsq(design * root[:, None], y * root, rcond=None)
    q = float(coefficients[0])
    if q >= 0:
        raise DataError("Tail does not decay like a Gaussian in the kappa window")
    k = float(numpy.sqrt(-2.0 * q))

    normal = design.T @ (design * weights[:, None])
    covariance = numpy.linalg.pinv(normal)
    if not tail.empirical:
        residual = y - design @ coefficients
        dof = max(len(ts) - 3, 1)
        covariance = covariance * float(numpy.sum(weights * residual**2)) / dof
    stderr = float(numpy.sqrt(max(covariance[0, 0], 0.0))) / k

    log.debug("kappa %.8g +/- %.2g from %d points", k, stderr, len(ts))
    return KappaEstimate(
        k, coefficients, (float(ts[0]), float(ts[-1])), len(ts), stderr, log_prefactor
    )


def refine_kappa(tail, start=None, dps=60):
    """Sharpen kappa on a tail known as a function, from the expansion

        ln m(t) + 3 ln t = -kappa^2 t^2 / 2 + c0 + c2 / t^2 + c4 / t^4 + ...

    solved exactly at four thresholds where kappa t runs from 1e3 to 8e3, evaluated
    with the model in mpmath arithmetic.  The standard error is the change against
    the expansion without c4 on the last three thresholds.

    :param TailGrid tail: A tail carrying its model.
    :param KappaEstimate start: Estimate fixing the thresholds; fitted if omitted.
    :param int dps: Decimal digits of the evaluation.
    :rtype: KappaEstimate
    :raises DataError: If the tail has no model to evaluate.
    """
    model = tail.model
    if model is None:
        raise DataError("Refining kappa needs the tail as a function, not just samples")
    if start is None:
        start = estimate_kappa(tail)
    with mpmath.workdps(dps):
        ts = [mpmath.mpf(1e3 / start.kappa) * 2**j for j in range(4)]
        ys = [model.log_tail_mp(t) + 3 * mpmath.log(t) for t in ts]

        def solve(points, values):
            design = mpmath.matrix([[t ** (2 - 2 * p) for p in range(len(points))] for t in points])
            return mpmath.lu_solve(design, mpmath.matrix(values))

        full = solve(ts, ys)
        short = solve(ts[1:], ys[1:])
        if full[0] >= 0:
            raise DataError("Tail does not decay like a Gaussian far out")
        kappa = mpmath.sqrt(-2 * full[0])
        stderr = float(abs(mpmath.sqrt(-2 * short[0]) - kappa))
        q, c0 = float(full[0]), float(full[1])
    log.debug("kappa refined from %.8g to %.17g", start.kappa, float(kappa))
    return KappaEstimate(
        float(kappa), (q, 0.0, c0), (float(ts[0]), float(ts[-1])), len(ts), stderr, 3.0
    )
