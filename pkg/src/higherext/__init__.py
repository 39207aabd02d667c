"""Higher extensions, higher central extensions and Hopf formulae for finite groups."""
from __future__ import annotations

__version__ = "0.1.0"

from .birkhoff import AB, BirkhoffDatum, ab_mod, is_central_extension, is_normal_extension, is_trivial_extension
from .cube import Cube, CubeMorphism, delta, is_n_fold_extension, iota, quotient_lattice_cube, rho
from .dsl import parse_cube, parse_group, serialize_cube
from .errors import AgreementFailure, HigherExtError, ResourceCapError, ValidationError
from .groups import FinGroup, GroupHom, Subgroup
from .higher_central import bracket_n_categorical, bracket_n_explicit, centralize_n, is_n_fold_central
from .homology import integral_homology, smith_normal_form
from .hopf import hopf_delta, hopf_delta_n, hopf_via_trivialization
from .library import library_group
from .properties import PropertyRunReport, run_property_suite

__all__ = [
    "__version__", "AB", "BirkhoffDatum", "ab_mod", "is_central_extension", "is_normal_extension",
    "is_trivial_extension", "Cube", "CubeMorphism", "delta", "is_n_fold_extension", "iota",
    "quotient_lattice_cube", "rho", "parse_cube", "parse_group", "serialize_cube", "AgreementFailure",
    "HigherExtError", "ResourceCapError", "ValidationError", "FinGroup", "GroupHom", "Subgroup",
    "bracket_n_categorical", "bracket_n_explicit", "centralize_n", "is_n_fold_central",
    "integral_homology", "smith_normal_form", "hopf_delta", "hopf_delta_n", "hopf_via_trivialization",
    "library_group", "PropertyRunReport", "run_property_suite",
]
