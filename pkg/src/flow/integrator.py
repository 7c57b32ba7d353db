"""Embedded Cash-Karp 5(4) integration with Hermite dense output and exit detection."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..utils.logger import get_logger

logger = get_logger(__name__)

RightHandSide = Callable[[np.ndarray], np.ndarray]
InsideTest = Callable[[np.ndarray], bool]

# Cash-Karp stage coefficients
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
)
_B5 = np.array([37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771])
_B4 = np.array([2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 1 / 4])
_ERROR_WEIGHTS = _B5 - _B4

ORDER = 5


class StopReason(str, Enum):
    """Why integration in one direction ended."""

    MAX_TIME = "max-time"
    LEFT_SPACE = "left-space"
    BLOW_UP = "blow-up"


@dataclass(frozen=True)
class IntegratorSettings:
    rtol: float = 1e-9
    atol: float = 1e-12
    min_step: float = 1e-10
    max_step: float = 0.5
    norm_cap: float = 1e8
    bisection_tol: float = 1e-10
    max_steps: int = 200_000


@dataclass
class OneSidedRun:
    """Trajectory from t = 0 in one time direction."""

    times: List[float] = field(default_factory=list)
    points: List[np.ndarray] = field(default_factory=list)
    end: float = 0.0
    reason: StopReason = StopReason.MAX_TIME
    rejected: int = 0


def cash_karp_step(rhs: RightHandSide, y: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """One step; returns the fifth-order solution and the embedded error estimate."""
    stages: List[np.ndarray] = []
    for row in _A:
        increment = y + h * sum(a * k for a, k in zip(row, stages)) if row else y
        stages.append(np.asarray(rhs(increment), dtype=float))
    k = np.stack(stages)
    return y + h * (_B5 @ k), h * (_ERROR_WEIGHTS @ k)


def hermite(
    y0: np.ndarray, f0: np.ndarray, y1: np.ndarray, f1: np.ndarray, h: float, theta: float
) -> np.ndarray:
    """Cubic Hermite interpolant on a step at fraction theta in [0, 1]."""
    t2, t3 = theta * theta, theta**3
    return (
        (2 * t3 - 3 * t2 + 1) * y0
        + (t3 - 2 * t2 + theta) * h * f0
        + (-2 * t3 + 3 * t2) * y1
        + (t3 - t2) * h * f1
    )


def _locate_exit(
    inside: InsideTest,
    y0: np.ndarray,
    f0: np.ndarray,
    y1: np.ndarray,
    f1: np.ndarray,
    h: float,
    tol: float,
) -> float:
    """Bisect the dense output for the last fraction of the step that stays inside."""
    lo, hi = 0.0, 1.0
    while (hi - lo) * abs(h) > tol:
        mid = 0.5 * (lo + hi)
        if inside(hermite(y0, f0, y1, f1, h, mid)):
            lo = mid
        else:
            hi = mid
    return lo


def integrate_direction(
    rhs: RightHandSide,
    x0: np.ndarray,
    t_end: float,
    settings: IntegratorSettings,
    inside: Optional[InsideTest] = None,
) -> OneSidedRun:
    """Adaptive integration from t = 0 to t_end (either sign) with exit detection."""
    run = OneSidedRun(times=[0.0], points=[np.asarray(x0, dtype=float)])
    if t_end == 0.0:
        return run
    direction = 1.0 if t_end > 0 else -1.0
    t, y = 0.0, run.points[0]
    f_y = np.asarray(rhs(y), dtype=float)
    h = direction * min(settings.max_step, 0.01 * abs(t_end))

    for _ in range(settings.max_steps):
        remaining = t_end - t
        if direction * remaining <= 0.0:
            run.end, run.reason = t_end, StopReason.MAX_TIME
            return run
        h = direction * min(abs(h), abs(remaining), settings.max_step)
        y_new, error = cash_karp_step(rhs, y, h)
        scale = settings.atol + settings.rtol * np.maximum(np.abs(y), np.abs(y_new))
        error_norm = float(np.max(np.abs(error) / scale)) if y.size else 0.0
        if not np.isfinite(error_norm) or not np.all(np.isfinite(y_new)):
            error_norm = np.inf

        if error_norm <= 1.0:
            f_new = np.asarray(rhs(y_new), dtype=float)
            if np.linalg.norm(y_new) > settings.norm_cap or not np.all(np.isfinite(f_new)):
                run.end, run.reason = t + h, StopReason.BLOW_UP
                return run
            if inside is not None and not inside(y_new):
                theta = _locate_exit(inside, y, f_y, y_new, f_new, h, settings.bisection_tol)
                t_exit = t + theta * h
                if theta > 0.0:
                    run.times.append(t_exit)
                    run.points.append(hermite(y, f_y, y_new, f_new, h, theta))
                run.end, run.reason = t_exit, StopReason.LEFT_SPACE
                return run
            t, y, f_y = t + h, y_new, f_new
            run.times.append(t)
            run.points.append(y)
        else:
            run.rejected += 1
            logger.debug(f"Rejected step {h:.3e} at t={t:.6g} (error {error_norm:.3e})")

        factor = 5.0 if error_norm == 0.0 else 0.9 * error_norm ** (-1.0 / ORDER)
        h *= min(5.0, max(0.2, factor))
        if abs(h) < settings.min_step:
            run.end, run.reason = t, StopReason.BLOW_UP
            return run

    logger.warning(f"Integration stopped after {settings.max_steps} steps at t={t:.6g}")
    run.end, run.reason = t, StopReason.BLOW_UP
    return run


def integrate_fixed(rhs: RightHandSide, x0: np.ndarray, t_end: float, steps: int) -> np.ndarray:
    """Fixed-step fifth-order propagation, used for convergence-order studies."""
    y = np.asarray(x0, dtype=float)
    h = t_end / steps
    for _ in range(steps):
        y, _ = cash_karp_step(rhs, y, h)
    return y


@dataclass(frozen=True)
class OrderStudy:
    steps: Tuple[int, ...]
    errors: Tuple[float, ...]
    observed_order: float


def order_study(steps: Tuple[int, ...] = (2, 4, 8, 16)) -> OrderStudy:
    """Convergence order on x' = x, x(0) = 1 over [0, 1] against e."""
    errors = tuple(
        abs(float(integrate_fixed(lambda y: y, np.ones(1), 1.0, n)[0]) - np.e) for n in steps
    )
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return OrderStudy(tuple(steps), errors, float(-slope))
