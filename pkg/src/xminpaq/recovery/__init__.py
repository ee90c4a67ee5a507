# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Recovery of a covariance from the tail of the minimum of its Gaussian vector."""

from .config import ROUTES, RecoveryConfig
from .report import RecoveryReport
from .routes import AbstractRoute, FitRoute, ConstructiveRoute, ROUTE_TYPES
from .pipeline import (
    recover_sigma,
    recover_sigma_fit,
    recover_sigma_constructive,
    roundtrip_report,
)

__all__ = [
    "ROUTES",
    "RecoveryConfig",
    "RecoveryReport",
    "AbstractRoute",
    "FitRoute",
    "ConstructiveRoute",
    "ROUTE_TYPES",
    "recover_sigma",
    "recover_sigma_fit",
    "recover_sigma_constructive",
    "roundtrip_report",
]
