# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""The Laplace transform chain linking the tail of X_min to the circular transform.

With F(s) = (2 pi)^(3/2) exp(s^2 / 2) m(s / kappa), h(x) = exp(-x^2 / 2) G(x) and
g(rho) = R(sqrt(rho)), where R is the circular transform of the section triangle,

    F = L[h]        and        G(sqrt(2x)) / x = L[g](x),

so R(rho) = L^-1[ exp(x) / x * L^-1[F](sqrt(2x)) ](rho^2).  This module checks the
chain in the forward direction by quadrature and inverts it numerically with the
Gaver-Stehfest method in mpmath arithmetic, the inner inversion of an order that
grows with the dilation and the outer one of a fixed order.
"""

import functools
import logging
import math

import mpmath
import numpy
import scipy.integrate

from xminpaq.core.covariance import section_triangle, standard_square_root
from xminpaq.error import DataError, DomainError, InversionUnstableError, QuadratureError
from xminpaq.radon.atoms import decompose_atoms, radon_from_atoms
from xminpaq.radon.transform import RadonProfile, radon_exact
from xminpaq.utilities import TRUNCATION_SIGMAS
from .forward import LOG_TWO_PI, m_forward, section_integral

log = logging.getLogger(__name__)

LN2 = math.log(2.0)

#: The two candidate prefactors relating L[g] to h, keyed by name.
PREFACTORS = {
    "exp(x)/x": lambda x: math.exp(x) / x,
    "exp(x)/sqrt(2x)": lambda x: math.exp(x) / math.sqrt(2.0 * x),
}


@functools.lru_cache(maxsize=None)
def stehfest_weights(order):
    """The Gaver-Stehfest weights V_1 .. V_order, computed exactly with mpmath.

    :param int order: Even number of terms.
    :rtype: tuple(mpmath.mpf)
    :raises DomainError: If order is odd or below 2.
    """
    if order < 2 or order % 2:
        raise DomainError(f"Gaver-Stehfest order must be even and at least 2, got {order}")
    half = order // 2
    fac = mpmath.factorial
    weights = []
    with mpmath.workdps(max(50, order + 30)):
        for k in range(1, order + 1):
            total = mpmath.mpf(0)
            for j in range((k + 1) // 2, min(k, half) + 1):
                total += (
                    mpmath.mpf(j) ** half
                    * fac(2 * j)
                    / (fac(half - j) * fac(j) * fac(j - 1) * fac(k - j) * fac(2 * j - k))
                )
            weights.append((-1) ** (k + half) * total)
    return tuple(weights)


def gaver_stehfest(transform, t, order=12):
    """Invert a Laplace transform at positive points with the Gaver-Stehfest formula

        f(t) ~ ln 2 / t * sum_k V_k F(k ln 2 / t).

    The transform is evaluated once on a (order, len(t)) array of abscissae; the
    alternating sums are accumulated in mpmath.  Accuracy degrades near
    discontinuities of f and wherever f is tiny compared to F.

    :param transform: Vectorized callable F.
    :param t: Positive point or array of points.
    :param int order: Even number of terms.
    :returns: Approximations of f(t), shaped like ``t``.
    """
    weights = stehfest_weights(order)
    t = numpy.asarray(t, dtype=float)
    flat = t.ravel()
    if numpy.any(flat <= 0):
        raise DomainError("Laplace inversion needs positive points")
    abscissae = numpy.outer(LN2 * numpy.arange(1, order + 1), 1.0 / flat)
    with numpy.errstate(over="ignore", invalid="ignore"):
        values = numpy.asarray(transform(abscissae), dtype=float)
    result = numpy.empty(len(flat))
    with mpmath.workdps(30):
        for column in range(len(flat)):
            if not numpy.all(numpy.isfinite(values[:, column])):
                result[column] = numpy.nan
                continue
            total = mpmath.fsum(w * mpmath.mpf(float(v)) for w, v in zip(weights, values[:, column]))
            result[column] = float(total) * LN2 / flat[column]
    if t.ndim == 0:
        return float(result[0])
    return result.reshape(t.shape)


def _quad(integrand, upper, points=(), epsrel=1e-10):
    points = sorted(p for p in set(points) if 0 < p < upper)
    result = scipy.integrate.quad(
        integrand,
        0.0,
        upper,
        points=points or None,
        epsabs=0.0,
        epsrel=epsrel,
        limit=400,
        full_output=1,
    )
    value, error = result[0], result[1]
    if len(result) > 3 and error > 1e2 * epsrel * abs(value):
        raise QuadratureError(f"Quadrature on [0, {upper:.3g}] did not converge: {result[3]}")
    return value


def _breakpoints(atoms):
    return sorted({v for atom in atoms for v in (atom.a, atom.b)})


def _section_by_transform(atoms, u):
    """G(u) = int_0^inf rho exp(-rho^2 / 2) R(rho / u) d rho."""
    if u <= 0:
        return 0.0
    upper = min(u * atoms.max_radius, 2 * TRUNCATION_SIGMAS)
    return _quad(
        lambda r: r * math.exp(-0.5 * r * r) * radon_from_atoms(atoms, r / u),
        upper,
        [u * b for b in _breakpoints(atoms)],
    )


def _h(atoms, x):
    return math.exp(-0.5 * x * x) * _section_by_transform(atoms, x)


class LaplaceCheckReport:
    """Relative residuals of the forward Laplace identities and the prefactor
    adjudication."""

    def __init__(self, residuals, prefactor_residuals, details):
        self._residuals = dict(residuals)
        self._prefactor_residuals = dict(prefactor_residuals)
        self._details = details

    def __repr__(self):
        return f"<LaplaceCheckReport {self._residuals} prefactor={self.selected_prefactor}>"

    @property
    def residuals(self):
        """Largest relative residual per identity: "tail", "section", "composite" and
        "profile"."""
        return self._residuals

    @property
    def prefactor_residuals(self):
        """Largest relative residual of the composite identity for each prefactor."""
        return self._prefactor_residuals

    @property
    def selected_prefactor(self):
        return min(self._prefactor_residuals, key=self._prefactor_residuals.get)

    @property
    def separation(self):
        """Ratio of the rejected prefactor's residual to the selected one's."""
        ordered = sorted(self._prefactor_residuals.values())
        return ordered[-1] / max(ordered[0], 1e-300)

    @property
    def details(self):
        """Per-point values of both sides of every identity."""
        return self._details

    def to_dict(self):
        return {
            "residuals": self._residuals,
            "prefactor_residuals": self._prefactor_residuals,
            "selected_prefactor": self.selected_prefactor,
            "separation": self.separation,
        }


def laplace_identity_check(
    sigma, t_values=(1.0, 2.0, 3.0), x_values=(0.25, 0.5, 1.0, 4.0), rho_values=None
):
    """Verify the Laplace chain between m and the circular transform by quadrature.

    :param CovarianceMatrix3 sigma: An admissible covariance.
    :param t_values: Laplace variables for F = L[h].
    :param x_values: Laplace variables for G(sqrt(2x)) / x = L[g] and the composite.
    :param rho_values: Radii at which the atom sum is compared with the exact
        transform; defaults to 50 radii across the section.
    :rtype: LaplaceCheckReport
    :raises QuadratureError: If any quadrature fails to converge.
    """
    root = standard_square_root(sigma)
    triangle = section_triangle(root)
    atoms = decompose_atoms(triangle)
    kappa = root.kappa
    breakpoints = _breakpoints(atoms)
    details = {"tail": [], "section": [], "composite": [], "profile": []}

    def relative(left, right):
        return abs(left - right) / max(abs(left), abs(right), 1e-300)

    tail_residual = 0.0
    for s in t_values:
        s = float(s)
        left = math.exp(1.5 * LOG_TWO_PI + 0.5 * s * s) * m_forward(sigma, s / kappa)
        right = _quad(
            lambda x: math.exp(-s * x) * _h(atoms, x),
            TRUNCATION_SIGMAS,
            breakpoints,
            epsrel=1e-9,
        )
        details["tail"].append((s, left, right))
        tail_residual = max(tail_residual, relative(left, right))

    section_residual = 0.0
    prefactor_residuals = dict.fromkeys(PREFACTORS, 0.0)
    for x in x_values:
        x = float(x)
        u = math.sqrt(2.0 * x)
        left = float(section_integral(atoms, u)) / x
        right = _quad(
            lambda v: math.exp(-x * v) * radon_from_atoms(atoms, math.sqrt(v)),
            atoms.max_radius**2,
            [b * b for b in breakpoints],
        )
        details["section"].append((x, left, right))
        section_residual = max(section_residual, relative(left, right))

        h = _h(atoms, u)
        for name, prefactor in PREFACTORS.items():
            candidate = prefactor(x) * h
            details["composite"].append((name, x, candidate, right))
            prefactor_residuals[name] = max(prefactor_residuals[name], relative(candidate, right))

    if rho_values is None:
        rho_values = numpy.linspace(0.0, 1.05 * atoms.max_radius, 51)[1:]
    rho_values = numpy.asarray(rho_values, dtype=float)
    exact = radon_exact(triangle, rho_values)
    summed = radon_from_atoms(atoms, rho_values)
    profile_residual = float(numpy.max(numpy.abs(exact - summed))) / (2 * math.pi)
    details["profile"] = list(zip(rho_values.tolist(), exact.tolist(), summed.tolist()))

    report = LaplaceCheckReport(
        {
            "tail": tail_residual,
            "section": section_residual,
            "composite": min(prefactor_residuals.values()),
            "profile": profile_residual,
        },
        prefactor_residuals,
        details,
    )
    log.info(
        "Laplace chain residuals %s; prefactor %s selected by a factor %.3g",
        report.residuals,
        report.selected_prefactor,
        report.separation,
    )
    return report


#: The inner inversion at dilations up to u uses order INNER_BASE + INNER_SLOPE * u,
#: rounded up to even, which keeps its relative error near 1e-12.
INNER_BASE = 36
INNER_SLOPE = 14


def inner_order(u_max):
    """Even Gaver-Stehfest order of the inner inversion for dilations up to ``u_max``."""
    order = math.ceil(INNER_BASE + INNER_SLOPE * u_max)
    return order + order % 2


def working_digits(order):
    """Decimal digits absorbing the cancellation of a Gaver-Stehfest sum of this order."""
    return int(0.7 * order) + 20


def radon_stehfest(atoms, rho, order):
    """The circular transform of ``atoms`` as seen through an outer Gaver-Stehfest
    inversion of the given order, from the exact L[g](x) = G(sqrt(2x)) / x.

    :param atoms: The atoms of a triangle.
    :param rho: Positive radius or array of radii.
    :param int order: The outer order.
    """
    weights = numpy.array([float(w) for w in stehfest_weights(order)])
    rho = numpy.asarray(rho, dtype=float)
    step = LN2 / rho**2
    x = numpy.multiply.outer(numpy.arange(1, order + 1), step)
    values = section_integral(atoms, numpy.sqrt(2.0 * x)) / x
    return step * numpy.tensordot(weights, values, axes=1)


def _section_by_inversion(laplace, u, order):
    """G(u) from F, at orders ``order`` and ``order - 2`` on shared abscissae.

    The inverse of the shifted transform F(s - u) is exp(u x) h(x), which has its
    maximum at x = u, so G(u) = exp(-u^2 / 2) * ln 2 / u * sum_j V_j F(j ln 2 / u - u).
    """
    step = mpmath.ln2 / u
    values = [laplace(j * step - u) for j in range(1, order + 1)]
    scale = mpmath.exp(-u * u / 2) * step
    return tuple(
        scale * mpmath.fsum(w * v for w, v in zip(stehfest_weights(n), values))
        for n in (order, order - 2)
    )


def _invert_at(laplace, rho, order):
    """R(rho) at outer orders ``order`` and ``order - 2``, each paired with an inner
    order held fixed across its sum."""
    inner = inner_order(math.sqrt(2 * order * LN2) / rho)
    with mpmath.workdps(working_digits(inner)):
        step = mpmath.ln2 / mpmath.mpf(rho) ** 2
        sections = []
        for k in range(1, order + 1):
            x = k * step
            first, second = _section_by_inversion(laplace, mpmath.sqrt(2 * x), inner)
            sections.append((first / x, second / x))
        values = tuple(
            step
            * mpmath.fsum(w * pair[index] for w, pair in zip(stehfest_weights(n), sections))
            for index, n in enumerate((order, order - 2))
        )
    log.debug("R(%.4g) = %.6g with inner order %d", rho, float(values[0]), inner)
    return float(values[0]), float(values[1])


def radon_from_tail(
    tail,
    kappa,
    order=16,
    tolerance=0.25,
    rho_points=8,
    rho_min=0.8,
    rho_max=3.0,
    unstable_fraction=0.5,
    rho=None,
):
    """Recover the circular transform of the section triangle from an analytic tail
    by inverting both Laplace transforms of the chain with Gaver-Stehfest.

    The transform F(s) = (2 pi)^(3/2) exp(s^2 / 2) m(s / kappa) is evaluated from the
    tail's model in mpmath arithmetic.  ``kappa`` must be the model's own scale to
    double precision (see :func:`~xminpaq.tail.refine_kappa`): any error in it leaves
    a factor exp(c s^2) in F that no Laplace inversion survives.

    The result is the transform smoothed by the outer inversion, which rounds its
    breakpoints; the profile carries that smoothing so a triangle can be matched to
    it exactly.  Each radius gets the difference between outer orders ``order`` and
    ``order - 2`` as its error estimate against the true transform.  Radii where this
    exceeds ``tolerance`` are marked unusable: value pi with error 2 pi.

    :param TailGrid tail: A tail carrying its model.
    :param float kappa: The scale of the section.
    :param int order: Even outer Gaver-Stehfest order, at least 4.
    :param float tolerance: Largest acceptable error estimate.
    :param int rho_points: Number of radii.
    :param float rho_min: First radius.
    :param float rho_max: Last radius.
    :param float unstable_fraction: Largest tolerated share of unusable radii.
    :param rho: Explicit radii, overriding the three options above.
    :rtype: RadonProfile
    :raises DataError: If the tail is empirical or carries no model.
    :raises InversionUnstableError: If too many radii are unusable.
    """
    if tail.empirical:
        raise DataError("Empirical tails cannot be inverted; use the fit route")
    if tail.model is None:
        raise DataError("Laplace inversion needs the tail as a function, not just samples")
    if order < 4 or order % 2:
        raise DomainError(f"Gaver-Stehfest order must be even and at least 4, got {order}")
    if kappa <= 0:
        raise DomainError("kappa must be positive")
    if rho is None:
        if not 0 < rho_min < rho_max:
            raise DomainError("Radii need 0 < rho_min < rho_max")
        rho = numpy.linspace(rho_min, rho_max, rho_points)
    rho = numpy.asarray(rho, dtype=float)
    if numpy.any(rho <= 0):
        raise DomainError("Laplace inversion needs positive radii")

    model = tail.model
    scale = mpmath.mpf(kappa)

    def laplace(s):
        return mpmath.exp(
            3 * mpmath.log(2 * mpmath.pi) / 2 + s * s / 2 + model.log_tail_mp(s / scale)
        )

    first, second = numpy.array([_invert_at(laplace, float(r), order) for r in rho]).T
    errors = numpy.abs(first - second)
    unstable = ~(errors <= tolerance)
    share = float(numpy.mean(unstable))
    log.info(
        "Gaver-Stehfest inversion of order %d: %d of %d radii unusable",
        order,
        int(numpy.sum(unstable)),
        len(rho),
    )
    if share > unstable_fraction:
        raise InversionUnstableError(
            f"Laplace inversion is unstable at {share:.0%} of the radii; "
            "use the fit route instead"
        )
    values = numpy.where(unstable, math.pi, numpy.clip(first, 0.0, 2 * math.pi))
    errors = numpy.where(unstable, 2 * math.pi, errors)
    return RadonProfile(
        rho, values, errors=errors, smoothing=functools.partial(radon_stehfest, order=order)
    )
