"""Maximal integral curves, flow maps and the uniform-epsilon probe."""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..smooth.smooth_map import SmoothMap
from ..utils.errors import MembershipError
from ..utils.logger import get_logger
from .integrator import (
    IntegratorSettings,
    OneSidedRun,
    RightHandSide,
    StopReason,
    integrate_direction,
)
from .vector_field import VectorFieldModel

logger = get_logger(__name__)

COLLAPSE_FACTOR = 10.0


class ExitReason(str, Enum):
    MAX_TIME = "max-time"
    LEFT_SPACE = "left-space"
    BLOW_UP = "blow-up"
    COLLAPSED = "collapsed-to-point"


_FROM_STOP = {
    StopReason.MAX_TIME: ExitReason.MAX_TIME,
    StopReason.LEFT_SPACE: ExitReason.LEFT_SPACE,
    StopReason.BLOW_UP: ExitReason.BLOW_UP,
}


@dataclass
class IntegralCurveResult:
    """Base curve c with c(0) = x0 on its computed maximal domain."""

    times: np.ndarray
    points: np.ndarray
    residuals: np.ndarray
    domain: Tuple[float, float]
    open_below: bool
    open_above: bool
    backward_exit: ExitReason
    forward_exit: ExitReason

    @property
    def collapsed(self) -> bool:
        return self.forward_exit == ExitReason.COLLAPSED

    @property
    def exit_reason(self) -> ExitReason:
        if self.forward_exit != ExitReason.MAX_TIME:
            return self.forward_exit
        return self.backward_exit

    @property
    def open_domain(self) -> bool:
        """No endpoint of the maximal domain is attained; window-capped ends count as open."""
        if self.collapsed:
            return False
        below = self.open_below or self.backward_exit == ExitReason.MAX_TIME
        above = self.open_above or self.forward_exit == ExitReason.MAX_TIME
        return below and above

    @property
    def length(self) -> float:
        return self.domain[1] - self.domain[0]

    def max_residual(self) -> float:
        return float(np.max(self.residuals, initial=0.0))

    def at(self, t: float) -> np.ndarray:
        """Linear interpolation between recorded points."""
        lo, hi = self.domain
        if not lo <= t <= hi:
            raise MembershipError(f"t={t} is outside the computed domain [{lo}, {hi}]")
        columns = range(self.points.shape[1])
        return np.array([np.interp(t, self.times, self.points[:, k]) for k in columns])


def _collapsed(model: VectorFieldModel, x0: np.ndarray) -> IntegralCurveResult:
    return IntegralCurveResult(
        times=np.zeros(1),
        points=x0.reshape(1, -1),
        residuals=model.space.violation(x0.reshape(1, -1)),
        domain=(0.0, 0.0),
        open_below=False,
        open_above=False,
        backward_exit=ExitReason.COLLAPSED,
        forward_exit=ExitReason.COLLAPSED,
    )


def _open(run: OneSidedRun) -> bool:
    return run.reason != StopReason.MAX_TIME and run.end != 0.0


def _stopped(start: np.ndarray) -> OneSidedRun:
    """A side on which no curve leaves the start point."""
    return OneSidedRun(times=[0.0], points=[start], end=0.0, reason=StopReason.LEFT_SPACE)


def _stationary(y: np.ndarray) -> np.ndarray:
    return np.zeros_like(y)


def integrate_curve(
    model: VectorFieldModel,
    x0: Sequence[float],
    t_span: Tuple[float, float] = (-1.0, 1.0),
    settings: Optional[IntegratorSettings] = None,
) -> IntegralCurveResult:
    """Integrate both time directions from x0 until the span ends or the curve exits S."""
    settings = settings or IntegratorSettings()
    start = model.space.require_member(x0, "Start point")[0]
    lo, hi = t_span
    if lo > 0.0 or hi < 0.0:
        raise ValueError(f"Time span {t_span} must contain 0")

    rhs: RightHandSide = model.rhs
    admitted = {1.0: True, -1.0: True}
    if model.overrides_field(start):
        declared = model.value_at(start)
        if np.any(declared):
            admitted = {sign: model.admits_curve(start, declared, sign) for sign in admitted}
        else:
            rhs = _stationary
        logger.info(
            f"{model.name} at {start} is declared {declared}; curves admitted forward "
            f"{admitted[1.0]}, backward {admitted[-1.0]}"
        )

    def inside(y: np.ndarray) -> bool:
        return bool(model.space.contains(y))

    def side(sign: float, t_end: float) -> OneSidedRun:
        if not admitted[sign]:
            return _stopped(start)
        return integrate_direction(rhs, start, t_end, settings, inside)

    forward, backward = side(1.0, hi), side(-1.0, lo)

    threshold = COLLAPSE_FACTOR * settings.min_step
    if (hi > 0.0 or lo < 0.0) and max(forward.end, -backward.end) < threshold:
        return _collapsed(model, start)

    times = np.concatenate([np.asarray(backward.times[:0:-1]), np.asarray(forward.times)])
    points = np.vstack(backward.points[:0:-1] + forward.points)
    result = IntegralCurveResult(
        times=times,
        points=points,
        residuals=model.space.violation(points),
        domain=(backward.end, forward.end),
        open_below=_open(backward),
        open_above=_open(forward),
        backward_exit=_FROM_STOP[backward.reason],
        forward_exit=_FROM_STOP[forward.reason],
    )
    logger.debug(
        f"Curve of {model.name} from {start}: domain {result.domain}, "
        f"exits {result.backward_exit.value}/{result.forward_exit.value}, "
        f"{backward.rejected + forward.rejected} rejected steps"
    )
    return result


def closed_form_error(result: IntegralCurveResult, exact: SmoothMap) -> float:
    """max |c(t) - exact(t)| over the recorded times; ``exact`` takes t as its only input."""
    if exact.input_dim != 1:
        raise ValueError("Closed form must be a map of the single variable t")
    expected = exact.evaluate_batch(result.times.reshape(-1, 1))
    return float(np.max(np.abs(expected - result.points), initial=0.0))


def flow_map(
    model: VectorFieldModel, settings: Optional[IntegratorSettings] = None
) -> Callable[[float, Sequence[float]], np.ndarray]:
    """phi(t, x): the point reached at time t along the integral curve through x."""
    settings = settings or IntegratorSettings()

    def phi(t: float, x: Sequence[float]) -> np.ndarray:
        start = np.asarray(x, dtype=float)
        run = integrate_direction(
            model.rhs, start, t, settings, lambda y: bool(model.space.contains(y))
        )
        if run.reason != StopReason.MAX_TIME:
            raise MembershipError(
                f"Integral curve of {model.name} from {start} stops at t={run.end:.6g} "
                f"({run.reason.value}) before t={t}"
            )
        return run.points[-1]

    return phi


@dataclass(frozen=True)
class ProbeRow:
    radius: float
    samples: int
    min_domain_length: float
    shortest_from: Tuple[float, ...]
    all_open: bool


def uniform_epsilon_probe(
    model: VectorFieldModel,
    center: Sequence[float],
    radii: Sequence[float],
    rng: np.random.Generator,
    span: float = 1.0,
    count: int = 48,
    settings: Optional[IntegratorSettings] = None,
) -> List[ProbeRow]:
    """Minimum two-sided domain length of curves through S-points near the center."""
    settings = settings or IntegratorSettings()
    model.space.require_member(center, "Probe center")
    rows: List[ProbeRow] = []
    for radius in radii:
        points = model.space.sample_near(center, radius, rng, count=count)
        shortest, where = 2.0 * span, tuple(float(v) for v in np.asarray(center, dtype=float))
        all_open = True
        for x in points:
            curve = integrate_curve(model, x, (-span, span), settings)
            all_open = all_open and curve.open_domain
            if curve.length < shortest:
                shortest, where = curve.length, tuple(float(v) for v in x)
        rows.append(ProbeRow(float(radius), int(points.shape[0]), shortest, where, all_open))
        logger.debug(
            f"Probe radius {radius:g}: {points.shape[0]} points, min domain {shortest:.3e}, "
            f"all open={all_open}"
        )
    return rows


@dataclass(frozen=True)
class CriterionReport:
    """Declared local closedness against the observed behaviour of the probe."""

    space: str
    locally_closed: bool
    probe: Tuple[ProbeRow, ...]
    floor: float

    @property
    def shrinks(self) -> bool:
        return bool(self.probe) and self.probe[-1].min_domain_length < self.floor

    @property
    def is_vector_field(self) -> bool:
        return not self.shrinks

    @property
    def all_open(self) -> bool:
        return all(row.all_open for row in self.probe)

    @property
    def consistent(self) -> bool:
        """On a locally closed space, open maximal domains rule out shrinking ones."""
        return not (self.locally_closed and self.all_open and self.shrinks)

    @property
    def open_but_shrinking(self) -> bool:
        """Every domain is open and still no uniform epsilon exists."""
        return self.all_open and self.shrinks


def vector_field_criterion(
    model: VectorFieldModel,
    center: Sequence[float],
    radii: Sequence[float],
    rng: np.random.Generator,
    span: float = 1.0,
    floor: float = 0.05,
    settings: Optional[IntegratorSettings] = None,
) -> CriterionReport:
    probe = uniform_epsilon_probe(model, center, radii, rng, span=span, settings=settings)
    report = CriterionReport(model.space.name, model.space.locally_closed, tuple(probe), floor)
    logger.info(
        f"{model.name} on {model.space.name}: locally closed={report.locally_closed}, "
        f"domains shrink={report.shrinks}, all open={report.all_open}"
    )
    return report
