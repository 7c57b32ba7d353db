"""Generator-tuple differential forms, pairings and the prism operator."""

from .forms import (
    FormTerm,
    GeneratorForm,
    exterior_derivative,
    pullback_form,
    wedge,
)
from .pairing import (
    DEFAULT_RULE,
    PairingResult,
    chain_rule_residual,
    classical_pairing,
    d_squared_value,
    lambda_eval,
    pair,
    stokes_residual,
)
from .prism import (
    Antiderivative,
    ConstancyReport,
    antiderivative_defect,
    closedness_residual,
    constancy_check,
    homotopy_identity_defect,
    poincare_antiderivative,
    prism_pullback,
    split_form,
)
from .quadrature import QuadratureResult, QuadratureRule, tensor_rule

__all__ = [
    "FormTerm",
    "GeneratorForm",
    "exterior_derivative",
    "wedge",
    "pullback_form",
    "QuadratureRule",
    "QuadratureResult",
    "tensor_rule",
    "DEFAULT_RULE",
    "PairingResult",
    "lambda_eval",
    "pair",
    "stokes_residual",
    "d_squared_value",
    "chain_rule_residual",
    "classical_pairing",
    "split_form",
    "prism_pullback",
    "homotopy_identity_defect",
    "Antiderivative",
    "closedness_residual",
    "poincare_antiderivative",
    "antiderivative_defect",
    "ConstancyReport",
    "constancy_check",
]
