"""Cech cohomology of good covers and the de Rham spot-check."""

from .complex import (
    CechComplex,
    build_complex,
    coboundary_matrix,
    coboundary_squared,
    cohomology_dims,
    nerve_components,
    nerve_graph,
)
from .cover import Cover, IntersectionFlag, Region, all_contractible, make_cover, validate_cover
from .fixtures import COVER_FIXTURES, EXPECTED_DIMS, cone_space, cover_names, get_cover
from .spotcheck import DeRhamReport, SpotCheck, de_rham_spotcheck, spotcheck_names

__all__ = [
    "Cover",
    "IntersectionFlag",
    "Region",
    "make_cover",
    "all_contractible",
    "validate_cover",
    "CechComplex",
    "build_complex",
    "coboundary_matrix",
    "coboundary_squared",
    "cohomology_dims",
    "nerve_graph",
    "nerve_components",
    "COVER_FIXTURES",
    "EXPECTED_DIMS",
    "cone_space",
    "cover_names",
    "get_cover",
    "DeRhamReport",
    "SpotCheck",
    "de_rham_spotcheck",
    "spotcheck_names",
]
