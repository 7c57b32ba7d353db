"""Derivations, vector fields and their integral curves."""

from .curves import (
    CriterionReport,
    ExitReason,
    IntegralCurveResult,
    ProbeRow,
    closed_form_error,
    flow_map,
    integrate_curve,
    uniform_epsilon_probe,
    vector_field_criterion,
)
from .experiments import (
    FIELD_FIXTURES,
    FLOW_FIXTURES,
    FlowExperiment,
    FlowExperimentResult,
    FlowRun,
    build_experiment,
    field_model,
    get_field,
    get_flow,
    run_experiment,
    trajectory_rows,
)
from .group_checks import (
    GroupFlowResult,
    averaged_model,
    flow_commutation_check,
    induced_field,
    pushforward_check,
)
from .integrator import (
    IntegratorSettings,
    OneSidedRun,
    OrderStudy,
    StopReason,
    cash_karp_step,
    integrate_direction,
    integrate_fixed,
    order_study,
)
from .vector_field import TangentVector, VectorFieldModel, derivation_apply, leibniz_defect

__all__ = [
    "TangentVector",
    "VectorFieldModel",
    "derivation_apply",
    "leibniz_defect",
    "IntegratorSettings",
    "OneSidedRun",
    "OrderStudy",
    "StopReason",
    "cash_karp_step",
    "integrate_direction",
    "integrate_fixed",
    "order_study",
    "ExitReason",
    "IntegralCurveResult",
    "integrate_curve",
    "closed_form_error",
    "flow_map",
    "ProbeRow",
    "uniform_epsilon_probe",
    "CriterionReport",
    "vector_field_criterion",
    "GroupFlowResult",
    "flow_commutation_check",
    "pushforward_check",
    "averaged_model",
    "induced_field",
    "FlowExperiment",
    "FlowExperimentResult",
    "FlowRun",
    "FIELD_FIXTURES",
    "FLOW_FIXTURES",
    "build_experiment",
    "field_model",
    "get_field",
    "get_flow",
    "run_experiment",
    "trajectory_rows",
]
