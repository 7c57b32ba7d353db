"""Suite configuration and definition-file models."""

import hashlib
import json
from enum import Enum
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..utils.errors import ConfigError
from ..utils.logger import get_logger
from .export import ExportFormat

logger = get_logger(__name__)

UNHASHED_FIELDS = {"output_dir", "workers", "report_format"}


class SuiteId(str, Enum):
    """Verification suites, in report order."""

    D_SQUARED = "d_squared"
    BOUNDARY_SQUARED = "boundary_squared"
    STOKES = "stokes"
    CHAIN_RULE = "chain_rule"
    HOMOTOPY = "homotopy"
    POINCARE = "poincare"
    REPRESENTATION = "representation"
    FLOW = "flow"
    ORBIT = "orbit"
    CECH = "cech"


SUITE_ORDER: Dict[SuiteId, int] = {suite: i for i, suite in enumerate(SuiteId)}


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ToleranceConfig(StrictModel):
    """Pass thresholds per suite."""

    d_squared: float = 1e-12
    boundary_squared: float = 1e-12
    stokes: float = 1e-8
    chain_rule: float = 1e-9
    homotopy: float = 1e-7
    poincare: float = 1e-7
    representation: float = 1e-10
    flow: float = 1e-6
    orbit: float = 1e-8
    cech: float = 0.0
    flow_membership: float = 1e-8

    @field_validator("*")
    @classmethod
    def non_negative(cls, value: float) -> float:
        if value < 0:
            raise ValueError("tolerances must be non-negative")
        return value

    def for_suite(self, suite: SuiteId) -> float:
        return float(getattr(self, suite.value))

    def replaced(self, value: float) -> "ToleranceConfig":
        return ToleranceConfig(**{name: value for name in type(self).model_fields})


class QuadratureConfig(StrictModel):
    order: int = Field(12, ge=1)
    max_order: int = Field(48, ge=1)
    fiber_order: int = Field(16, ge=1)

    @model_validator(mode="after")
    def orders_ordered(self) -> "QuadratureConfig":
        if self.max_order < self.order:
            raise ValueError(f"max_order {self.max_order} is below order {self.order}")
        return self


class IntegratorConfig(StrictModel):
    rtol: float = Field(1e-9, gt=0)
    atol: float = Field(1e-12, gt=0)
    min_step: float = Field(1e-10, gt=0)
    max_step: float = Field(0.5, gt=0)
    norm_cap: float = Field(1e8, gt=0)
    bisection_tol: float = Field(1e-10, gt=0)


class BatteryConfig(StrictModel):
    """Sizes of the randomly drawn test batteries."""

    stokes_forms: int = Field(50, ge=1)
    chain_rule_draws: int = Field(100, ge=1)
    poincare_forms: int = Field(20, ge=1)
    poincare_cubes: int = Field(20, ge=1)
    max_polynomial_degree: int = Field(4, ge=1)


class BranchDefinition(StrictModel):
    map: List[str]
    ranges: List[Tuple[float, float]]


class SamplerDefinition(StrictModel):
    branches: List[BranchDefinition] = Field(default_factory=list)
    points: List[List[float]] = Field(default_factory=list)


class SpaceDefinition(StrictModel):
    name: str
    ambient_dim: int = Field(ge=0)
    membership: Optional[str] = None
    generators: Optional[List[str]] = None
    locally_closed: bool = True
    sampler: SamplerDefinition = Field(default_factory=SamplerDefinition)


SpaceRef = Union[str, SpaceDefinition]


class PointValue(StrictModel):
    point: List[float]
    vector: List[float]


class FlowDefinition(StrictModel):
    name: str
    space: SpaceRef
    field: List[str]
    tangency: List[str] = Field(default_factory=list)
    point_values: List[PointValue] = Field(default_factory=list)
    start_points: List[List[float]]
    t_span: Tuple[float, float] = (-1.0, 1.0)
    exact: Optional[List[str]] = None
    collapsing: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def collapsing_in_range(self) -> "FlowDefinition":
        for i in self.collapsing:
            if not 0 <= i < len(self.start_points):
                raise ValueError(f"collapsing index {i} names no start point")
        return self


class IntersectionDefinition(StrictModel):
    indices: List[int]
    flag: Literal["empty", "contractible"]


class CoverDefinition(StrictModel):
    name: str
    space: SpaceRef
    regions: Dict[str, str]
    intersections: List[IntersectionDefinition] = Field(default_factory=list)
    max_degree: int = Field(2, ge=0)
    graph_radius: float = Field(0.35, gt=0)


class ActionDefinition(StrictModel):
    name: str
    ambient_dim: int = Field(ge=1)
    generators: List[List[List[str]]]
    hilbert: List[str]
    relations: List[str] = Field(default_factory=list)
    inequalities: List[str] = Field(default_factory=list)
    space: str = "plane"


class OrbitConfig(StrictModel):
    """Scaling experiment radii and acceptance thresholds."""

    action: Union[str, ActionDefinition] = "z2_plane"
    radii: List[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0, 4.0])
    omega_slope: float = 2.0
    omega_spread: float = 0.02
    quartic_slope: float = 4.0
    quartic_spread: float = 0.05
    generated_slope_min: float = 3.9
    vanishing_tolerance: float = 1e-9
    samples: int = Field(1000, ge=1)


def _default_covers() -> List[Union[str, CoverDefinition]]:
    return [
        "plane_halves",
        "plane_quadrants",
        "circle_three_arcs",
        "circle_four_arcs",
        "interval_two_sets",
        "interval_three_sets",
        "cone_single_chart",
        "cone_two_charts",
    ]


class SuiteConfig(StrictModel):
    """Everything a run depends on; equal configs give byte-identical reports."""

    seed: int = 7
    workers: int = Field(1, ge=1)
    output_dir: Path = Path("./results")
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    battery: BatteryConfig = Field(default_factory=BatteryConfig)
    orbit: OrbitConfig = Field(default_factory=OrbitConfig)
    suites: List[SuiteId] = Field(default_factory=lambda: list(SuiteId))
    flows: List[Union[str, FlowDefinition]] = Field(
        default_factory=lambda: ["singular_variety_backward"]
    )
    covers: List[Union[str, CoverDefinition]] = Field(default_factory=_default_covers)
    spaces: List[SpaceDefinition] = Field(default_factory=list)
    report_format: ExportFormat = ExportFormat.JSON

    @field_validator("report_format")
    @classmethod
    def document_format(cls, value: ExportFormat) -> ExportFormat:
        if value == ExportFormat.CSV:
            raise ValueError("reports are saved as json or yaml")
        return value

    def with_overrides(
        self,
        seed: Optional[int] = None,
        quad_order: Optional[int] = None,
        tol: Optional[float] = None,
        out: Optional[Path] = None,
        workers: Optional[int] = None,
    ) -> "SuiteConfig":
        """Command-line flags take precedence over the file."""
        data = self.model_dump()
        if seed is not None:
            data["seed"] = seed
        if quad_order is not None:
            data["quadrature"]["order"] = quad_order
            data["quadrature"]["max_order"] = max(data["quadrature"]["max_order"], quad_order)
        if tol is not None:
            data["tolerances"] = self.tolerances.replaced(tol).model_dump()
        if out is not None:
            data["output_dir"] = out
        if workers is not None:
            data["workers"] = workers
        return validate_config(data)

    def digest(self) -> str:
        """Short hash of the settings that affect results.

        Output location, worker count and saved-report format are left out.
        """
        payload = self.model_dump(mode="json", exclude=UNHASHED_FIELDS)
        text = json.dumps(payload, sort_keys=True)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def validate_config(data: dict) -> SuiteConfig:
    try:
        return SuiteConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid suite configuration: {e}") from e


def load_document(path: Path) -> dict:
    """Read a YAML or JSON mapping, chosen by file suffix."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Configuration file {path} does not exist")
    try:
        with open(path, "r") as f:
            if path.suffix in (".yaml", ".yml"):
                data = yaml.safe_load(f)
            else:
                data = json.load(f)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot parse {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping at the top level")
    return data


def load_suite_config(path: Optional[Path] = None) -> SuiteConfig:
    if path is None:
        return SuiteConfig()
    config = validate_config(load_document(path))
    logger.info(f"Loaded suite configuration from {path}")
    return config
