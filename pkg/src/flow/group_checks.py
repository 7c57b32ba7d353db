"""Flows under finite group actions: commutation, averaging and orbit-space pushforward."""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from ..orbit.group import FiniteGroupAction, average_field, equivariance_residual
from ..orbit.hilbert import HilbertMap
from ..smooth.smooth_map import SmoothMap
from ..utils.errors import InvarianceError
from ..utils.logger import get_logger
from .curves import flow_map
from .integrator import IntegratorSettings, StopReason, integrate_direction
from .vector_field import VectorFieldModel

logger = get_logger(__name__)

EQUIVARIANCE_TOLERANCE = 1e-10
LIFT_ITERATIONS = 25


@dataclass(frozen=True)
class GroupFlowResult:
    """Outcome of a check that first requires the field to be G-invariant."""

    invariance_residual: float
    residual: Optional[float]

    @property
    def ran(self) -> bool:
        return self.residual is not None


def _invariance_precheck(
    model: VectorFieldModel, action: FiniteGroupAction, points: np.ndarray, strict: bool
) -> Optional[float]:
    residual = equivariance_residual(model.field, action, points)
    scale = max(1.0, float(np.max(np.abs(model.field.evaluate_batch(points)), initial=0.0)))
    if residual > EQUIVARIANCE_TOLERANCE * scale:
        message = f"{model.name} is not {action.name}-invariant (residual {residual:.3e})"
        if strict:
            raise InvarianceError(message, residual)
        logger.warning(message)
        return None
    return residual


def flow_commutation_check(
    model: VectorFieldModel,
    action: FiniteGroupAction,
    t_samples: Sequence[float],
    x_samples: np.ndarray,
    settings: Optional[IntegratorSettings] = None,
    strict: bool = False,
) -> GroupFlowResult:
    """max over g, t, x of |g phi_t(x) - phi_t(g x)|, after the invariance pre-check."""
    points = np.asarray(x_samples, dtype=float)
    invariance = _invariance_precheck(model, action, points, strict)
    if invariance is None:
        return GroupFlowResult(equivariance_residual(model.field, action, points), None)
    phi = flow_map(model, settings)
    worst = 0.0
    for x in points:
        for t in t_samples:
            moved_after = phi(t, x)
            for i in range(action.order):
                g = action.float_matrices[i]
                worst = max(worst, float(np.max(np.abs(g @ moved_after - phi(t, g @ x)))))
    logger.info(f"Flow of {model.name} commutes with {action.name} to {worst:.3e}")
    return GroupFlowResult(invariance, worst)


def averaged_model(model: VectorFieldModel, action: FiniteGroupAction) -> VectorFieldModel:
    """The field (1/|G|) sum_g g^{-1} X(g x) on the same space."""
    return VectorFieldModel(
        model.space,
        average_field(model.field, action),
        model.tangency,
        name=f"avg({model.name})",
    )


def _lift(components: SmoothMap, target: np.ndarray, guess: np.ndarray) -> np.ndarray:
    """Gauss-Newton solve of pi(m) = target starting from guess."""
    m = guess.copy()
    for _ in range(LIFT_ITERATIONS):
        values, jacobian = components.jet_batch(m.reshape(1, -1))
        step, _, _, _ = np.linalg.lstsq(jacobian[0], target - values[0], rcond=None)
        m = m + step
        if np.max(np.abs(step)) <= 1e-14 * (1.0 + float(np.max(np.abs(m)))):
            break
    return m


def induced_field(
    model: VectorFieldModel, components: SmoothMap, start: np.ndarray
) -> Callable[[np.ndarray], np.ndarray]:
    """X-bar on image coordinates: D pi(m) X(m) at a lift m of the image point."""
    state = {"lift": np.asarray(start, dtype=float)}

    def rhs(p: np.ndarray) -> np.ndarray:
        m = _lift(components, p, state["lift"])
        state["lift"] = m
        _, jacobian = components.jet_batch(m.reshape(1, -1))
        return jacobian[0] @ model.field.evaluate(m)

    return rhs


def pushforward_check(
    model: VectorFieldModel,
    hilbert: HilbertMap,
    action: FiniteGroupAction,
    t_samples: Sequence[float],
    x_samples: np.ndarray,
    settings: Optional[IntegratorSettings] = None,
    strict: bool = False,
) -> GroupFlowResult:
    """max over t, x of |pi(phi_t(x)) - phibar_t(pi(x))| with phibar the induced flow."""
    settings = settings or IntegratorSettings()
    points = np.asarray(x_samples, dtype=float)
    invariance = _invariance_precheck(model, action, points, strict)
    if invariance is None:
        return GroupFlowResult(equivariance_residual(model.field, action, points), None)
    pi = hilbert.components
    phi = flow_map(model, settings)
    worst = 0.0
    for x in points:
        image = pi.evaluate(x)
        for t in t_samples:
            upstairs = pi.evaluate(phi(t, x))
            run = integrate_direction(induced_field(model, pi, x), image, t, settings)
            if run.reason != StopReason.MAX_TIME:
                raise InvarianceError(
                    f"Induced flow from {image} stops at t={run.end:.6g}", float("nan")
                )
            worst = max(worst, float(np.max(np.abs(upstairs - run.points[-1]))))
    logger.info(f"Orbit-space flow of {model.name} matches the pushed flow to {worst:.3e}")
    return GroupFlowResult(invariance, worst)
