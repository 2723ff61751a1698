"""Cech cohomology of substitution tiling spaces from exact integer linear algebra."""

from .cohomology import CochainSystem, CohomologyResult, complex_cohomology, graph_system, validate_system
from .dlim import DlimPresentation, GroupDescription, describe, dlim_describe, dlim_equal_invariants, eventual_range
from .linalg import FgAbGroup, IntMatrix, smith
from .subst1d import Substitution1D, build_ap, build_bd, cech_1d, collar
from .subst2d import BlockSubstitution2D, build_ap2d, cech_2d, collar2d

__version__ = "0.1.0"

__all__ = [
    "BlockSubstitution2D",
    "CochainSystem",
    "CohomologyResult",
    "DlimPresentation",
    "FgAbGroup",
    "GroupDescription",
    "IntMatrix",
    "Substitution1D",
    "build_ap",
    "build_ap2d",
    "build_bd",
    "cech_1d",
    "cech_2d",
    "collar",
    "collar2d",
    "complex_cohomology",
    "describe",
    "dlim_describe",
    "dlim_equal_invariants",
    "eventual_range",
    "graph_system",
    "smith",
    "validate_system",
]
