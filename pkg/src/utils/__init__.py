"""Utility functions for diffspace-calculus."""

from .errors import (
    ChainError,
    ConfigError,
    ContractionError,
    CoverError,
    DiffSpaceError,
    DimensionMismatchError,
    EvaluationError,
    ExpressionParseError,
    FixtureNotFoundError,
    FormError,
    GroupActionError,
    InvarianceError,
    MembershipError,
    NormalizationError,
    NotClosedError,
    SeparationError,
    SpaceConstructionError,
)
from .logger import get_logger, set_log_level

__all__ = [
    "get_logger",
    "set_log_level",
    "DiffSpaceError",
    "ExpressionParseError",
    "EvaluationError",
    "DimensionMismatchError",
    "MembershipError",
    "SpaceConstructionError",
    "ChainError",
    "FormError",
    "NormalizationError",
    "NotClosedError",
    "ContractionError",
    "GroupActionError",
    "InvarianceError",
    "SeparationError",
    "CoverError",
    "ConfigError",
    "FixtureNotFoundError",
]
