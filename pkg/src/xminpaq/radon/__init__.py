# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Circular transforms of triangles about the origin and their inversion."""

from .geometry import FootPoint, CaseLabel, heights, classify_case, basic_triangle
from .atoms import (
    Atom,
    AtomSet,
    GramReport,
    phi,
    decompose_atoms,
    radon_from_atoms,
    atom_gram_report,
)
from .transform import RadonProfile, radon_exact, radon_profile
from .parametric import ParametricForm, pairs_to_parametric, triangle_from_parametric
from .polar import triangle_from_polar, polar_parameters, random_polar
from .recovery import (
    ProfileFit,
    detect_breakpoints,
    fit_atoms,
    fit_triangle_to_profile,
    recover_triangle,
)
from .counterexample import CounterexamplePair, counterexample_pairs, compare_transforms

__all__ = [
    "FootPoint",
    "CaseLabel",
    "heights",
    "classify_case",
    "basic_triangle",
    "Atom",
    "AtomSet",
    "GramReport",
    "phi",
    "decompose_atoms",
    "radon_from_atoms",
    "atom_gram_report",
    "RadonProfile",
    "radon_exact",
    "radon_profile",
    "ParametricForm",
    "pairs_to_parametric",
    "triangle_from_parametric",
    "triangle_from_polar",
    "polar_parameters",
    "random_polar",
    "ProfileFit",
    "detect_breakpoints",
    "fit_atoms",
    "fit_triangle_to_profile",
    "recover_triangle",
    "CounterexamplePair",
    "counterexample_pairs",
    "compare_transforms",
]
