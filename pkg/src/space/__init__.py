"""Differential spaces, their elements and contractions."""

from .contraction import Contraction, radial_contraction, scaling_homotopy
from .fixtures import SPACE_FIXTURES, build_space, euclidean, get_space, space_names
from .model import (
    EQUALITY_TOLERANCE,
    MEMBERSHIP_TOLERANCE,
    SpaceModel,
    StructureElement,
    compose_elements,
    coordinate_generators,
    generated_element,
    make_space,
    product_with_interval,
)
from .predicates import (
    AllOf,
    AnyOf,
    Everything,
    Predicate,
    Relation,
    RelationKind,
    parse_predicate,
)
from .sampler import Branch, Sampler, box_sampler
from .topology import component_count, sampled_components, sampling_graph

__all__ = [
    "SpaceModel",
    "StructureElement",
    "make_space",
    "generated_element",
    "compose_elements",
    "coordinate_generators",
    "product_with_interval",
    "EQUALITY_TOLERANCE",
    "MEMBERSHIP_TOLERANCE",
    "Predicate",
    "Relation",
    "RelationKind",
    "AllOf",
    "AnyOf",
    "Everything",
    "parse_predicate",
    "Branch",
    "Sampler",
    "box_sampler",
    "Contraction",
    "radial_contraction",
    "scaling_homotopy",
    "component_count",
    "sampled_components",
    "sampling_graph",
    "SPACE_FIXTURES",
    "build_space",
    "euclidean",
    "get_space",
    "space_names",
]
