"""Tangent vectors, derivations and vector-field models on a space."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..smooth.nodes import ZERO, Node, add, mul
from ..smooth.smooth_map import SmoothMap
from ..space.model import SpaceModel, StructureElement
from ..utils.errors import DimensionMismatchError
from ..utils.logger import get_logger

logger = get_logger(__name__)

POINT_MATCH_TOLERANCE = 1e-12
TANGENT_CONE_TOLERANCE = 1e-8
VELOCITY_MATCH_TOLERANCE = 1e-3
ADMISSIBILITY_STEPS = (1e-4, 1e-6, 1e-8)


@dataclass(frozen=True, eq=False)
class TangentVector:
    """v_x: a derivation at a point of S, given by ambient components."""

    space: SpaceModel
    base: np.ndarray
    components: np.ndarray

    def __post_init__(self):
        n = self.space.ambient_dim
        base = self.space.require_member(self.base, "Tangent vector base")[0]
        components = np.asarray(self.components, dtype=float).reshape(-1)
        if components.shape != (n,):
            raise DimensionMismatchError(
                f"Tangent vector on {self.space.name} needs {n} components, got {components.size}"
            )
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "components", components)


def derivation_apply(v: TangentVector, element: StructureElement) -> float:
    """v(f) = grad f(x) . v."""
    _, grad = element.node.forward(v.base.reshape(1, -1))
    return float(grad[0] @ v.components)


def leibniz_defect(v: TangentVector, first: StructureElement, second: StructureElement) -> float:
    """|v(f g) - v(f) g(x) - f(x) v(g)|."""
    product = first * second
    lhs = derivation_apply(v, product)
    rhs = derivation_apply(v, first) * float(second(v.base)) + float(first(v.base)) * (
        derivation_apply(v, second)
    )
    return abs(lhs - rhs)


@dataclass(frozen=True, eq=False)
class VectorFieldModel:
    """A derivation of C^inf(S) given by an ambient field, with tangency certificates.

    ``point_values`` override the ambient field at isolated points, which is how a
    derivation that is not the restriction of its representative is declared.
    """

    space: SpaceModel
    field: SmoothMap
    tangency: Tuple[SmoothMap, ...] = ()
    point_values: Tuple[Tuple[Tuple[float, ...], Tuple[float, ...]], ...] = ()
    name: str = "X"

    def __post_init__(self):
        n = self.space.ambient_dim
        if self.field.input_dim != n or self.field.output_dim != n:
            raise DimensionMismatchError(
                f"Field on {self.space.name} must map R^{n} -> R^{n}, got "
                f"R^{self.field.input_dim} -> R^{self.field.output_dim}"
            )
        for h in self.tangency:
            if h.input_dim != n or not h.is_scalar:
                raise DimensionMismatchError(f"Tangency certificate {h} is not a function on R^{n}")
        object.__setattr__(self, "tangency", tuple(self.tangency))
        object.__setattr__(
            self,
            "point_values",
            tuple(
                (tuple(float(a) for a in p), tuple(float(b) for b in v))
                for p, v in self.point_values
            ),
        )

    def declared_value(self, x: Sequence[float]) -> Optional[np.ndarray]:
        point = np.asarray(x, dtype=float)
        for p, v in self.point_values:
            if np.max(np.abs(point - np.asarray(p)), initial=0.0) <= POINT_MATCH_TOLERANCE:
                return np.asarray(v)
        return None

    def overrides_field(self, x: Sequence[float]) -> bool:
        """A declared value at x that differs from the ambient representative."""
        declared = self.declared_value(x)
        if declared is None:
            return False
        ambient = self.field.evaluate(np.asarray(x, dtype=float))
        return bool(np.max(np.abs(declared - ambient), initial=0.0) > POINT_MATCH_TOLERANCE)

    def value_at(self, x: Sequence[float]) -> np.ndarray:
        declared = self.declared_value(x)
        return declared if declared is not None else self.field.evaluate(np.asarray(x, float))

    def at(self, x: Sequence[float]) -> TangentVector:
        return TangentVector(self.space, np.asarray(x, dtype=float), self.value_at(x))

    def apply(self, element: StructureElement) -> StructureElement:
        """X(f) = sum_k Z_k df/dx_k as an element (valid away from declared points)."""
        node: Node = ZERO
        for k, z in enumerate(self.field.components):
            node = add(node, mul(z, element.node.diff(k)))
        return StructureElement(SmoothMap(self.space.ambient_dim, (node,)), self.space)

    def rhs(self, y: np.ndarray) -> np.ndarray:
        return self.field.evaluate_batch(y.reshape(1, -1))[0]

    def tangency_residual(self, points: np.ndarray) -> float:
        """max |grad H . Z| over the points for every certificate H."""
        if points.shape[0] == 0 or not self.tangency:
            return 0.0
        z = self.field.evaluate_batch(points)
        worst = 0.0
        for h in self.tangency:
            _, grad = h.node.forward(points)
            worst = max(worst, float(np.max(np.abs(np.sum(grad * z, axis=1)))))
        return worst

    def certificate_slope(self, x: Sequence[float], velocity: np.ndarray) -> float:
        """max |grad H(x) . v|: zero when v is tangent to every certificate level set at x."""
        if not self.tangency:
            return 0.0
        point = np.asarray(x, dtype=float).reshape(1, -1)
        return max(abs(float(h.node.forward(point)[1][0] @ velocity)) for h in self.tangency)

    def admits_curve(self, x: Sequence[float], velocity: np.ndarray, sign: float) -> bool:
        """Whether a C^1 curve on S can leave x with ``velocity`` in the time direction ``sign``.

        The curve must follow the ambient field for t != 0, so v has to lie in the tangent
        cone of S at x (certificate slopes and membership of x + s v) and the field along
        x + s v has to approach v as s shrinks. A zero velocity is the stationary curve.
        """
        v = np.asarray(velocity, dtype=float)
        if not np.any(v):
            return True
        if self.certificate_slope(x, v) > TANGENT_CONE_TOLERANCE:
            return False
        base = np.asarray(x, dtype=float)
        gap = np.inf
        for s in ADMISSIBILITY_STEPS:
            y = base + sign * s * v
            if not self.space.contains(y):
                return False
            gap = float(np.max(np.abs(self.rhs(y) - v)))
        return gap <= VELOCITY_MATCH_TOLERANCE * max(1.0, float(np.max(np.abs(v))))

    def check_tangency(self, rng: np.random.Generator, count: int = 128) -> float:
        residual = self.tangency_residual(self.space.sample(count, rng))
        logger.debug(f"Tangency residual of {self.name} on {self.space.name}: {residual:.3e}")
        return residual
