"""Data models for diffspace-calculus."""

from .config import (
    SUITE_ORDER,
    ActionDefinition,
    BatteryConfig,
    CoverDefinition,
    FlowDefinition,
    IntegratorConfig,
    OrbitConfig,
    QuadratureConfig,
    SpaceDefinition,
    SuiteConfig,
    SuiteId,
    ToleranceConfig,
    load_document,
    load_suite_config,
    validate_config,
)
from .export import ExportFormat
from .report import (
    CohomologyRow,
    FlowSummary,
    OrbitRow,
    ReportFormat,
    SuiteReport,
    SuiteResult,
)

__all__ = [
    "SuiteId",
    "SUITE_ORDER",
    "SuiteConfig",
    "ToleranceConfig",
    "QuadratureConfig",
    "IntegratorConfig",
    "BatteryConfig",
    "OrbitConfig",
    "SpaceDefinition",
    "FlowDefinition",
    "CoverDefinition",
    "ActionDefinition",
    "load_document",
    "load_suite_config",
    "validate_config",
    "ExportFormat",
    "ReportFormat",
    "SuiteResult",
    "SuiteReport",
    "OrbitRow",
    "CohomologyRow",
    "FlowSummary",
]
