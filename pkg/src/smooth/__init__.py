"""Smooth maps as expression trees with exact forward-mode derivatives."""

from .nodes import (
    Bump,
    Compose,
    Const,
    Coord,
    FiberIntegral,
    Node,
    ONE,
    ZERO,
    bump_polynomial,
    compose_node,
    fiber_integral,
    unit_interval_rule,
)
from .parser import parse_expression, parse_map, parse_tree
from .smooth_map import (
    Jet,
    SmoothMap,
    as_points,
    compose,
    constant,
    coordinate,
    from_nodes,
    identity,
    linear_map,
    projection,
    shift_coordinates,
    stack,
)

__all__ = [
    "Node",
    "Const",
    "Coord",
    "Bump",
    "Compose",
    "FiberIntegral",
    "ZERO",
    "ONE",
    "bump_polynomial",
    "compose_node",
    "fiber_integral",
    "unit_interval_rule",
    "Jet",
    "SmoothMap",
    "as_points",
    "compose",
    "constant",
    "coordinate",
    "from_nodes",
    "identity",
    "linear_map",
    "projection",
    "shift_coordinates",
    "stack",
    "parse_expression",
    "parse_map",
    "parse_tree",
]
