"""Bundled vector-field models and named flow experiments."""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..smooth.parser import parse_map
from ..smooth.smooth_map import SmoothMap
from ..space.fixtures import get_space
from ..space.model import SpaceModel
from ..utils.errors import FixtureNotFoundError
from ..utils.logger import get_logger
from .curves import IntegralCurveResult, closed_form_error, integrate_curve
from .integrator import IntegratorSettings
from .vector_field import VectorFieldModel

logger = get_logger(__name__)


def field_model(
    space: SpaceModel,
    field_exprs: Sequence[str],
    tangency: Sequence[str] = (),
    point_values: Sequence[Tuple[Sequence[float], Sequence[float]]] = (),
    name: str = "X",
) -> VectorFieldModel:
    """Vector-field model from text expressions in x1..xn."""
    n = space.ambient_dim
    return VectorFieldModel(
        space,
        parse_map(list(field_exprs), n),
        tuple(parse_map([h], n) for h in tangency),
        tuple((tuple(p), tuple(v)) for p, v in point_values),
        name=name,
    )


def singular_variety_field() -> VectorFieldModel:
    """Z = (x^3, 2y) on y^2 = h(x) y, with X(0,0) declared to be d/dx.

    grad(y^2 - h y) . Z = 4 (y^2 - h y), so Z is tangent to both branches.
    """
    return field_model(
        get_space("singular_variety"),
        ["x1**3", "2*x2"],
        tangency=["x2**2 - bump(x1)*x2"],
        point_values=[((0.0, 0.0), (1.0, 0.0))],
        name="Z",
    )


def disk_axis_field() -> VectorFieldModel:
    return field_model(get_space("disk_with_axis"), ["1", "0"], name="d/dx")


def plane_translation() -> VectorFieldModel:
    return field_model(get_space("plane"), ["1", "0"], name="d/dx")


def euler_field() -> VectorFieldModel:
    return field_model(get_space("plane"), ["x1", "x2"], name="euler")


def line_growth() -> VectorFieldModel:
    return field_model(get_space("line"), ["x1"], name="x d/dx")


FIELD_FIXTURES: Dict[str, Callable[[], VectorFieldModel]] = {
    "singular_variety": singular_variety_field,
    "disk_with_axis": disk_axis_field,
    "plane_translation": plane_translation,
    "euler": euler_field,
    "line_growth": line_growth,
}


@dataclass(frozen=True, eq=False)
class FlowExperiment:
    """Start points and a time span for one field, with an optional closed form in t.

    ``collapses`` flags, per start point, a curve expected to exist only at t = 0.
    """

    name: str
    model: VectorFieldModel
    start_points: Tuple[Tuple[float, ...], ...]
    t_span: Tuple[float, float]
    exact: Optional[SmoothMap] = None
    collapses: Tuple[bool, ...] = ()

    def __post_init__(self):
        flags = tuple(self.collapses) or (False,) * len(self.start_points)
        if len(flags) != len(self.start_points):
            raise ValueError(
                f"Flow {self.name} has {len(self.start_points)} start points "
                f"but {len(flags)} collapse flags"
            )
        object.__setattr__(self, "collapses", flags)


@dataclass
class FlowRun:
    start: Tuple[float, ...]
    curve: IntegralCurveResult
    closed_form_error: Optional[float] = None
    tangency_residual: float = 0.0

    def summary(self) -> Dict[str, object]:
        return {
            "start": list(self.start),
            "domain": list(self.curve.domain),
            "open_below": self.curve.open_below,
            "open_above": self.curve.open_above,
            "exit_reason": self.curve.exit_reason.value,
            "max_membership_residual": self.curve.max_residual(),
            "tangency_residual": self.tangency_residual,
            "closed_form_error": self.closed_form_error,
        }


@dataclass
class FlowExperimentResult:
    experiment: str
    runs: List[FlowRun] = field(default_factory=list)


def run_experiment(
    experiment: FlowExperiment, settings: Optional[IntegratorSettings] = None
) -> FlowExperimentResult:
    """Integrate from every start point; the closed form only applies to the first."""
    result = FlowExperimentResult(experiment.name)
    model = experiment.model
    for i, start in enumerate(experiment.start_points):
        curve = integrate_curve(model, start, experiment.t_span, settings)
        error = None
        if experiment.exact is not None and i == 0 and not curve.collapsed:
            error = closed_form_error(curve, experiment.exact)
        run = FlowRun(tuple(start), curve, error, model.tangency_residual(curve.points))
        result.runs.append(run)
        logger.info(
            f"{experiment.name} from {list(start)}: domain {curve.domain}, "
            f"exit {curve.exit_reason.value}"
        )
    return result


def trajectory_rows(run: FlowRun) -> List[List[float]]:
    """CSV rows t, x1..xn, residual."""
    curve = run.curve
    return [
        [float(t), *(float(v) for v in point), float(r)]
        for t, point, r in zip(curve.times, curve.points, curve.residuals)
    ]


def build_experiment(
    name: str,
    model: VectorFieldModel,
    start_points: Sequence[Sequence[float]],
    t_span: Sequence[float],
    exact: Optional[Sequence[str]] = None,
    collapsing: Sequence[int] = (),
) -> FlowExperiment:
    """Closed forms use x1 for t; ``collapsing`` lists start indices expected to collapse."""
    for i in collapsing:
        if not 0 <= i < len(start_points):
            raise ValueError(f"Flow {name} has no start point {i}")
    return FlowExperiment(
        name,
        model,
        tuple(tuple(float(v) for v in p) for p in start_points),
        (float(t_span[0]), float(t_span[1])),
        parse_map(list(exact), 1) if exact else None,
        tuple(i in collapsing for i in range(len(start_points))),
    )


def singular_variety_backward() -> FlowExperiment:
    """Backward curve from (1, 1/e): ((1 - 2t)^{-1/2}, e^{2t - 1}), plus the collapsed origin."""
    return build_experiment(
        "singular_variety_backward",
        singular_variety_field(),
        [[1.0, math.exp(-1.0)], [0.0, 0.0]],
        (-10.0, 0.0),
        exact=["1/sqrt(1 - 2*x1)", "exp(2*x1 - 1)"],
        collapsing=[1],
    )


def line_growth_experiment() -> FlowExperiment:
    return build_experiment(
        "line_growth", line_growth(), [[1.0], [-0.5]], (-1.0, 1.0), exact=["exp(x1)"]
    )


def plane_translation_experiment() -> FlowExperiment:
    return build_experiment(
        "plane_translation",
        plane_translation(),
        [[0.0, 0.0], [1.0, -1.0]],
        (-1.0, 1.0),
        exact=["x1", "0"],
    )


FLOW_FIXTURES: Dict[str, Callable[[], FlowExperiment]] = {
    "singular_variety_backward": singular_variety_backward,
    "line_growth": line_growth_experiment,
    "plane_translation": plane_translation_experiment,
}


def get_flow(name: str) -> FlowExperiment:
    factory = FLOW_FIXTURES.get(name)
    if factory is None:
        raise FixtureNotFoundError("flow", name, list(FLOW_FIXTURES))
    return factory()


def get_field(name: str) -> VectorFieldModel:
    factory = FIELD_FIXTURES.get(name)
    if factory is None:
        raise FixtureNotFoundError("field", name, list(FIELD_FIXTURES))
    return factory()
