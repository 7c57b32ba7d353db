"""Immutable expression nodes with vectorized evaluation and forward-mode jets.

Every node evaluates on a batch of points shaped ``(N, d)`` and returns ``(N,)``
values. ``forward`` additionally returns the exact gradient ``(N, d)`` by
propagating (value, gradient) pairs through the tree, and ``diff`` builds the
symbolic partial derivative as a new tree.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import FrozenSet, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss

from ..utils.errors import DimensionMismatchError, EvaluationError

Jets = Tuple[np.ndarray, np.ndarray]
Number = Union[int, float]

# Below this |x| the factor e^{-1/x^2} underflows to zero in double precision.
BUMP_CUTOFF = 1.0 / np.sqrt(700.0)

_MAX_LABEL = 80


class Node:
    """Base class for expression nodes."""

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Evaluate on an (N, d) batch of points."""
        raise NotImplementedError

    def forward(self, points: np.ndarray) -> Jets:
        """Return values (N,) and exact gradients (N, d)."""
        raise NotImplementedError

    def _diff(self, k: int) -> "Node":
        raise NotImplementedError

    def _collect_variables(self) -> FrozenSet[int]:
        raise NotImplementedError

    def render(self) -> str:
        raise NotImplementedError

    @cached_property
    def _variables(self) -> FrozenSet[int]:
        return self._collect_variables()

    def variables(self) -> FrozenSet[int]:
        """Coordinate indices the node depends on."""
        return self._variables

    def diff(self, k: int) -> "Node":
        """Symbolic partial derivative with respect to coordinate k."""
        if k not in self.variables():
            return ZERO
        return self._diff(k)

    def label(self) -> str:
        text = self.render()
        return text if len(text) <= _MAX_LABEL else text[: _MAX_LABEL - 3] + "..."

    def __str__(self) -> str:
        return self.render()

    # Arithmetic builds new trees; nothing is mutated.
    def __add__(self, other: "NodeLike") -> "Node":
        return add(self, as_node(other))

    def __radd__(self, other: "NodeLike") -> "Node":
        return add(as_node(other), self)

    def __sub__(self, other: "NodeLike") -> "Node":
        return sub(self, as_node(other))

    def __rsub__(self, other: "NodeLike") -> "Node":
        return sub(as_node(other), self)

    def __mul__(self, other: "NodeLike") -> "Node":
        return mul(self, as_node(other))

    def __rmul__(self, other: "NodeLike") -> "Node":
        return mul(as_node(other), self)

    def __truediv__(self, other: "NodeLike") -> "Node":
        return div(self, as_node(other))

    def __rtruediv__(self, other: "NodeLike") -> "Node":
        return div(as_node(other), self)

    def __neg__(self) -> "Node":
        return neg(self)

    def __pow__(self, exponent: Number) -> "Node":
        return power(self, float(exponent))


NodeLike = Union[Node, Number]


def _batch_size(points: np.ndarray) -> int:
    return points.shape[0]


@dataclass(frozen=True)
class Const(Node):
    value: float

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return np.full(_batch_size(points), self.value, dtype=float)

    def forward(self, points: np.ndarray) -> Jets:
        return self.evaluate(points), np.zeros(points.shape, dtype=float)

    def _diff(self, k: int) -> Node:
        return ZERO

    def _collect_variables(self) -> FrozenSet[int]:
        return frozenset()

    def render(self) -> str:
        return repr(float(self.value)) if self.value != int(self.value) else str(int(self.value))


ZERO = Const(0.0)
ONE = Const(1.0)


@dataclass(frozen=True)
class Coord(Node):
    """Projection onto coordinate ``index`` (0-based; rendered 1-based as x1, x2, ...)."""

    index: int

    def _column(self, points: np.ndarray) -> np.ndarray:
        if self.index >= points.shape[1]:
            raise DimensionMismatchError(
                f"Coordinate x{self.index + 1} requested on {points.shape[1]}-dimensional points"
            )
        return np.array(points[:, self.index], dtype=float)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self._column(points)

    def forward(self, points: np.ndarray) -> Jets:
        values = self._column(points)
        grad = np.zeros(points.shape, dtype=float)
        grad[:, self.index] = 1.0
        return values, grad

    def _diff(self, k: int) -> Node:
        return ONE

    def _collect_variables(self) -> FrozenSet[int]:
        return frozenset({self.index})

    def render(self) -> str:
        return f"x{self.index + 1}"


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self.left.evaluate(points) + self.right.evaluate(points)

    def forward(self, points: np.ndarray) -> Jets:
        va, ga = self.left.forward(points)
        vb, gb = self.right.forward(points)
        return va + vb, ga + gb

    def _diff(self, k: int) -> Node:
        return add(self.left.diff(k), self.right.diff(k))

    def _collect_variables(self) -> FrozenSet[int]:
        return self.left.variables() | self.right.variables()

    def render(self) -> str:
        return f"({self.left.render()} + {self.right.render()})"


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self.left.evaluate(points) - self.right.evaluate(points)

    def forward(self, points: np.ndarray) -> Jets:
        va, ga = self.left.forward(points)
        vb, gb = self.right.forward(points)
        return va - vb, ga - gb

    def _diff(self, k: int) -> Node:
        return sub(self.left.diff(k), self.right.diff(k))

    def _collect_variables(self) -> FrozenSet[int]:
        return self.left.variables() | self.right.variables()

    def render(self) -> str:
        return f"({self.left.render()} - {self.right.render()})"


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self.left.evaluate(points) * self.right.evaluate(points)

    def forward(self, points: np.ndarray) -> Jets:
        va, ga = self.left.forward(points)
        vb, gb = self.right.forward(points)
        return va * vb, ga * vb[:, None] + va[:, None] * gb

    def _diff(self, k: int) -> Node:
        return add(mul(self.left.diff(k), self.right), mul(self.left, self.right.diff(k)))

    def _collect_variables(self) -> FrozenSet[int]:
        return self.left.variables() | self.right.variables()

    def render(self) -> str:
        return f"{self.left.render()}*{self.right.render()}"


@dataclass(frozen=True)
class Div(Node):
    left: Node
    right: Node

    def _denominator(self, values: np.ndarray) -> np.ndarray:
        if np.any(values == 0.0):
            raise EvaluationError(self.label(), "division by zero")
        return values

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        vb = self._denominator(self.right.evaluate(points))
        return self.left.evaluate(points) / vb

    def forward(self, points: np.ndarray) -> Jets:
        va, ga = self.left.forward(points)
        vb, gb = self.right.forward(points)
        vb = self._denominator(vb)
        return va / vb, (ga * vb[:, None] - va[:, None] * gb) / (vb * vb)[:, None]

    def _diff(self, k: int) -> Node:
        numerator = sub(mul(self.left.diff(k), self.right), mul(self.left, self.right.diff(k)))
        return div(numerator, power(self.right, 2.0))

    def _collect_variables(self) -> FrozenSet[int]:
        return self.left.variables() | self.right.variables()

    def render(self) -> str:
        return f"{self.left.render()}/({self.right.render()})"


@dataclass(frozen=True)
class Neg(Node):
    arg: Node

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return -self.arg.evaluate(points)

    def forward(self, points: np.ndarray) -> Jets:
        value, grad = self.arg.forward(points)
        return -value, -grad

    def _diff(self, k: int) -> Node:
        return neg(self.arg.diff(k))

    def _collect_variables(self) -> FrozenSet[int]:
        return self.arg.variables()

    def render(self) -> str:
        return f"(-{self.arg.render()})"


@dataclass(frozen=True)
class Pow(Node):
    """Power with a constant real exponent."""

    base: Node
    exponent: float

    def _checked_base(self, values: np.ndarray) -> np.ndarray:
        c = self.exponent
        if c != int(c):
            bad = values < 0.0 if c >= 1.0 else values <= 0.0
            if np.any(bad):
                raise EvaluationError(self.label(), "fractional power of a non-positive base")
        elif c < 0 and np.any(values == 0.0):
            raise EvaluationError(self.label(), "negative power of zero")
        return values

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return np.power(self._checked_base(self.base.evaluate(points)), self.exponent)

    def forward(self, points: np.ndarray) -> Jets:
        value, grad = self.base.forward(points)
        value = self._checked_base(value)
        c = self.exponent
        slope = c * np.power(value, c - 1.0)
        return np.power(value, c), slope[:, None] * grad

    def _diff(self, k: int) -> Node:
        outer = mul(Const(self.exponent), power(self.base, self.exponent - 1.0))
        return mul(outer, self.base.diff(k))

    def _collect_variables(self) -> FrozenSet[int]:
        return self.base.variables()

    def render(self) -> str:
        return f"({self.base.render()})**{Const(self.exponent).render()}"


@dataclass(frozen=True)
class UnaryFunction(Node):
    """Named smooth function of one argument."""

    arg: Node

    name = "f"

    def _apply(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _slope(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _slope_node(self) -> Node:
        raise NotImplementedError

    def _check(self, u: np.ndarray) -> np.ndarray:
        return u

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self._apply(self._check(self.arg.evaluate(points)))

    def forward(self, points: np.ndarray) -> Jets:
        u, grad = self.arg.forward(points)
        u = self._check(u)
        return self._apply(u), self._slope(u)[:, None] * grad

    def _diff(self, k: int) -> Node:
        return mul(self._slope_node(), self.arg.diff(k))

    def _collect_variables(self) -> FrozenSet[int]:
        return self.arg.variables()

    def render(self) -> str:
        return f"{self.name}({self.arg.render()})"


@dataclass(frozen=True)
class Exp(UnaryFunction):
    name = "exp"

    def _apply(self, u: np.ndarray) -> np.ndarray:
        return np.exp(u)

    def _slope(self, u: np.ndarray) -> np.ndarray:
        return np.exp(u)

    def _slope_node(self) -> Node:
        return self


@dataclass(frozen=True)
class Log(UnaryFunction):
    name = "log"

    def _check(self, u: np.ndarray) -> np.ndarray:
        if np.any(u <= 0.0):
            raise EvaluationError(self.label(), "log of a non-positive argument")
        return u

    def _apply(self, u: np.ndarray) -> np.ndarray:
        return np.log(u)

    def _slope(self, u: np.ndarray) -> np.ndarray:
        return 1.0 / u

    def _slope_node(self) -> Node:
        return div(ONE, self.arg)


@dataclass(frozen=True)
class Sin(UnaryFunction):
    name = "sin"

    def _apply(self, u: np.ndarray) -> np.ndarray:
        return np.sin(u)

    def _slope(self, u: np.ndarray) -> np.ndarray:
        return np.cos(u)

    def _slope_node(self) -> Node:
        return Cos(self.arg)


@dataclass(frozen=True)
class Cos(UnaryFunction):
    name = "cos"

    def _apply(self, u: np.ndarray) -> np.ndarray:
        return np.cos(u)

    def _slope(self, u: np.ndarray) -> np.ndarray:
        return -np.sin(u)

    def _slope_node(self) -> Node:
        return neg(Sin(self.arg))


@dataclass(frozen=True)
class Sqrt(UnaryFunction):
    name = "sqrt"

    def _check(self, u: np.ndarray) -> np.ndarray:
        if np.any(u <= 0.0):
            raise EvaluationError(self.label(), "sqrt outside its open domain (0, inf)")
        return u

    def _apply(self, u: np.ndarray) -> np.ndarray:
        return np.sqrt(u)

    def _slope(self, u: np.ndarray) -> np.ndarray:
        return 0.5 / np.sqrt(u)

    def _slope_node(self) -> Node:
        return div(Const(0.5), self)


@lru_cache(maxsize=None)
def bump_polynomial(order: int) -> Polynomial:
    """P_n with d^n/dx^n e^{-1/x^2} = P_n(1/x) e^{-1/x^2}."""
    poly = Polynomial([1.0])
    u_squared = Polynomial([0.0, 0.0, 1.0])
    u_cubed = Polynomial([0.0, 0.0, 0.0, 1.0])
    for _ in range(order):
        poly = -u_squared * poly.deriv() + 2.0 * u_cubed * poly
    return poly


@dataclass(frozen=True)
class Bump(Node):
    """The n-th derivative of e^{-1/x^2}, extended by 0 at x = 0."""

    arg: Node
    order: int = 0

    def _values(self, u: np.ndarray, order: int) -> np.ndarray:
        out = np.zeros_like(u, dtype=float)
        mask = np.abs(u) > BUMP_CUTOFF
        if np.any(mask):
            w = 1.0 / u[mask]
            out[mask] = bump_polynomial(order)(w) * np.exp(-w * w)
        return out

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self._values(self.arg.evaluate(points), self.order)

    def forward(self, points: np.ndarray) -> Jets:
        u, grad = self.arg.forward(points)
        slope = self._values(u, self.order + 1)
        return self._values(u, self.order), slope[:, None] * grad

    def _diff(self, k: int) -> Node:
        return mul(Bump(self.arg, self.order + 1), self.arg.diff(k))

    def _collect_variables(self) -> FrozenSet[int]:
        return self.arg.variables()

    def render(self) -> str:
        if self.order == 0:
            return f"bump({self.arg.render()})"
        return f"bump[{self.order}]({self.arg.render()})"


@dataclass(frozen=True)
class Compose(Node):
    """outer(inner_1(x), ..., inner_m(x)); outer's coordinates index the inner tuple."""

    outer: Node
    inner: Tuple[Node, ...]

    def _stack(self, points: np.ndarray) -> np.ndarray:
        if not self.inner:
            return np.empty((_batch_size(points), 0), dtype=float)
        return np.column_stack([node.evaluate(points) for node in self.inner])

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self.outer.evaluate(self._stack(points))

    def forward(self, points: np.ndarray) -> Jets:
        n, d = points.shape
        values = np.empty((n, len(self.inner)), dtype=float)
        grads = np.zeros((n, len(self.inner), d), dtype=float)
        used = self.outer.variables()
        for j, node in enumerate(self.inner):
            if j in used:
                values[:, j], grads[:, j, :] = node.forward(points)
            else:
                values[:, j] = node.evaluate(points)
        outer_value, outer_grad = self.outer.forward(values)
        return outer_value, np.einsum("nm,nmd->nd", outer_grad, grads)

    def _diff(self, k: int) -> Node:
        total: Node = ZERO
        for j in sorted(self.outer.variables()):
            term = mul(compose_node(self.outer.diff(j), self.inner), self.inner[j].diff(k))
            total = add(total, term)
        return total

    def _collect_variables(self) -> FrozenSet[int]:
        found: FrozenSet[int] = frozenset()
        for j in self.outer.variables():
            found = found | self.inner[j].variables()
        return found

    def render(self) -> str:
        args = ", ".join(node.render() for node in self.inner)
        return f"[{self.outer.render()}]({args})"


@dataclass(frozen=True)
class FiberIntegral(Node):
    """x -> sum_k w_k a(t_k, x): the integral over t in [0, 1] by fixed nodes.

    The integrand's coordinate 0 is the fiber variable t; coordinate j >= 1 is x_j.
    """

    integrand: Node
    nodes: Tuple[float, ...]
    weights: Tuple[float, ...]

    def _fiber_points(self, points: np.ndarray) -> np.ndarray:
        n, d = points.shape
        k = len(self.nodes)
        lifted = np.empty((k * n, d + 1), dtype=float)
        lifted[:, 0] = np.repeat(np.asarray(self.nodes, dtype=float), n)
        lifted[:, 1:] = np.tile(points, (k, 1))
        return lifted

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        values = self.integrand.evaluate(self._fiber_points(points))
        return np.asarray(self.weights) @ values.reshape(len(self.nodes), points.shape[0])

    def forward(self, points: np.ndarray) -> Jets:
        n, d = points.shape
        k = len(self.nodes)
        values, grads = self.integrand.forward(self._fiber_points(points))
        weights = np.asarray(self.weights)
        value = weights @ values.reshape(k, n)
        grad = np.einsum("k,knd->nd", weights, grads.reshape(k, n, d + 1)[:, :, 1:])
        return value, grad

    def _diff(self, k: int) -> Node:
        inner = self.integrand.diff(k + 1)
        if is_zero(inner):
            return ZERO
        return FiberIntegral(inner, self.nodes, self.weights)

    def _collect_variables(self) -> FrozenSet[int]:
        return frozenset(v - 1 for v in self.integrand.variables() if v >= 1)

    def render(self) -> str:
        return f"fiber{len(self.nodes)}({self.integrand.render()})"


def as_node(value: NodeLike) -> Node:
    if isinstance(value, Node):
        return value
    return Const(float(value))


def is_zero(node: Node) -> bool:
    return isinstance(node, Const) and node.value == 0.0


def is_one(node: Node) -> bool:
    return isinstance(node, Const) and node.value == 1.0


def add(a: Node, b: Node) -> Node:
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return Add(a, b)


def sub(a: Node, b: Node) -> Node:
    if is_zero(b):
        return a
    if is_zero(a):
        return neg(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    return Sub(a, b)


def mul(a: Node, b: Node) -> Node:
    if is_zero(a) or is_zero(b):
        return ZERO
    if is_one(a):
        return b
    if is_one(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return Mul(a, b)


def div(a: Node, b: Node) -> Node:
    if is_one(b):
        return a
    if is_zero(a) and not is_zero(b):
        return ZERO
    return Div(a, b)


def neg(a: Node) -> Node:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def power(a: Node, exponent: float) -> Node:
    if exponent == 0.0:
        return ONE
    if exponent == 1.0:
        return a
    if isinstance(a, Const) and (a.value > 0.0 or exponent == int(exponent)):
        return Const(a.value**exponent)
    return Pow(a, exponent)


def compose_node(outer: Node, inner: Tuple[Node, ...]) -> Node:
    """Substitute ``inner`` into ``outer``, short-circuiting constants and projections."""
    if isinstance(outer, Const):
        return outer
    if isinstance(outer, Coord):
        return inner[outer.index]
    return Compose(outer, tuple(inner))


@lru_cache(maxsize=None)
def unit_interval_rule(order: int) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = leggauss(order)
    return tuple(float(v) for v in 0.5 * (x + 1.0)), tuple(float(v) for v in 0.5 * w)


def fiber_integral(integrand: Node, order: int = 16) -> Node:
    """Build x -> integral_0^1 integrand(t, x) dt with ``order`` fixed nodes."""
    if is_zero(integrand):
        return ZERO
    if 0 not in integrand.variables():
        # t-independent integrand: the fiber integral is the integrand at any t
        shifted = tuple([ZERO] + [Coord(j) for j in range(max(integrand.variables(), default=0))])
        return compose_node(integrand, shifted)
    nodes, weights = unit_interval_rule(order)
    return FiberIntegral(integrand, nodes, weights)
