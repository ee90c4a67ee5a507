# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Covariance matrices, their standard square roots and cone sections."""

from .triangle import Triangle2D, SIDES
from .covariance import (
    CovarianceMatrix3,
    AdmissibilityDiagnostics,
    StandardRoot,
    SectionTriangle,
    PermutationReport,
    validate_admissible,
    kappa,
    standard_square_root,
    eigen_square_root,
    roots_related,
    cone_directions,
    in_positive_cone,
    section_triangle,
    sigma_from_section,
    permutation_distance,
)

__all__ = [
    "Triangle2D",
    "SIDES",
    "CovarianceMatrix3",
    "AdmissibilityDiagnostics",
    "StandardRoot",
    "SectionTriangle",
    "PermutationReport",
    "validate_admissible",
    "kappa",
    "standard_square_root",
    "eigen_square_root",
    "roots_related",
    "cone_directions",
    "in_positive_cone",
    "section_triangle",
    "sigma_from_section",
    "permutation_distance",
]
