# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""The tail of the minimum of a trivariate Gaussian: forward model, samples, kappa
and the Laplace chain."""

from .grid import PROVENANCES, TailGrid, MinSampleSet
from .forward import TailModel, section_integral, m_forward, analytic_tail
from .montecarlo import sample_xmin, empirical_tail
from .kappa import KappaEstimate, estimate_kappa, refine_kappa
from .laplace import (
    PREFACTORS,
    LaplaceCheckReport,
    stehfest_weights,
    gaver_stehfest,
    inner_order,
    laplace_identity_check,
    radon_stehfest,
    radon_from_tail,
)

__all__ = [
    "PROVENANCES",
    "TailGrid",
    "MinSampleSet",
    "TailModel",
    "section_integral",
    "m_forward",
    "analytic_tail",
    "sample_xmin",
    "empirical_tail",
    "KappaEstimate",
    "estimate_kappa",
    "refine_kappa",
    "PREFACTORS",
    "LaplaceCheckReport",
    "stehfest_weights",
    "gaver_stehfest",
    "inner_order",
    "laplace_identity_check",
    "radon_stehfest",
    "radon_from_tail",
]
