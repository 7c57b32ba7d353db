"""Finite group actions, orbit-space models and the radius scaling experiment."""

from .fixtures import (
    ACTION_FIXTURES,
    ActionFixture,
    action_names,
    build_action,
    get_action,
    orbit_model,
)
from .group import (
    FiniteGroupAction,
    average_field,
    average_invariant,
    equivariance_residual,
    generate_group,
    invariance_residual,
    rational_matrix,
)
from .hilbert import (
    HilbertMap,
    OrbitSpaceModel,
    build_contraction,
    check_hilbert,
    contraction_equivariance,
    detect_degrees,
    orbit_pushforward,
    separation_failures,
    star_contraction,
)
from .scaling import (
    ScalingResult,
    ScalingRow,
    SlopeFit,
    angular_form,
    circle_cube,
    fit_slope,
    form_invariance_residual,
    scaling_experiment,
)

__all__ = [
    "FiniteGroupAction",
    "generate_group",
    "rational_matrix",
    "invariance_residual",
    "average_invariant",
    "average_field",
    "equivariance_residual",
    "HilbertMap",
    "OrbitSpaceModel",
    "check_hilbert",
    "detect_degrees",
    "separation_failures",
    "orbit_pushforward",
    "build_contraction",
    "star_contraction",
    "contraction_equivariance",
    "ScalingRow",
    "SlopeFit",
    "ScalingResult",
    "circle_cube",
    "angular_form",
    "fit_slope",
    "scaling_experiment",
    "form_invariance_residual",
    "ActionFixture",
    "ACTION_FIXTURES",
    "build_action",
    "action_names",
    "get_action",
    "orbit_model",
]
