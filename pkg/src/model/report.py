"""Report-related models."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .config import SuiteId


class ReportFormat(str, Enum):
    """Supported report formats."""

    TEXT = "text"
    JSON = "json"
    YAML = "yaml"


class SuiteResult(BaseModel):
    """Outcome of one verification suite."""

    suite: SuiteId
    passed: bool
    max_residual: Optional[float]
    tolerance: float
    samples: int = 0
    notes: List[str] = Field(default_factory=list)
    rows: List[Dict[str, Any]] = Field(default_factory=list)


class SuiteReport(BaseModel):
    """Ordered suite results for one configuration."""

    seed: int
    config_digest: str
    results: List[SuiteResult] = Field(default_factory=list)
    passed: bool = True

    def result(self, suite: SuiteId) -> Optional[SuiteResult]:
        return next((r for r in self.results if r.suite == suite), None)


class OrbitRow(BaseModel):
    form: str
    radius: float
    value: float
    expected: Optional[float] = None
    slope: Optional[float] = None
    r_squared: Optional[float] = None


class CohomologyRow(BaseModel):
    cover: str
    degree: int
    dimension: int


class FlowSummary(BaseModel):
    experiment: str
    start: List[float]
    domain: List[float]
    open_below: bool
    open_above: bool
    exit_reason: str
    max_membership_residual: float
    tangency_residual: float
    closed_form_error: Optional[float] = None
