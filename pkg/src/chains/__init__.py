"""Singular cubes, integer chains, boundary and prism operators."""

from .chain import (
    CubicalChain,
    boundary,
    cube_boundary,
    homotopy_defect,
    inclusion_chain,
    prism_chain,
    pushforward_chain,
)
from .cube import (
    Box,
    SingularCube,
    affine_cube,
    endpoint_inclusion,
    face,
    identity_cube,
    map_cube,
    point_cube,
    prism,
    random_affine_cubes,
    singular_cube,
    unit_box,
)

__all__ = [
    "Box",
    "SingularCube",
    "singular_cube",
    "identity_cube",
    "affine_cube",
    "random_affine_cubes",
    "point_cube",
    "unit_box",
    "face",
    "prism",
    "endpoint_inclusion",
    "map_cube",
    "CubicalChain",
    "boundary",
    "cube_boundary",
    "prism_chain",
    "inclusion_chain",
    "pushforward_chain",
    "homotopy_defect",
]
