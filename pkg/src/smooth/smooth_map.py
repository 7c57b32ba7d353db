"""Smooth maps R^n -> R^m built from expression nodes."""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from ..utils.errors import DimensionMismatchError
from .nodes import (
    Const,
    Coord,
    Node,
    NodeLike,
    ZERO,
    add,
    as_node,
    compose_node,
    mul,
)

MapLike = Union["SmoothMap", Node, int, float]


@dataclass(frozen=True)
class Jet:
    """Value and Jacobian of a map at one point."""

    value: np.ndarray
    jacobian: np.ndarray


def as_points(x: Union[Sequence[float], np.ndarray], dim: int) -> Tuple[np.ndarray, bool]:
    """Coerce a point or batch into an (N, dim) array and report whether it was one point."""
    array = np.asarray(x, dtype=float)
    single = array.ndim <= 1
    if single:
        array = array.reshape(1, -1) if dim > 0 else np.zeros((1, 0))
    if array.ndim != 2 or array.shape[1] != dim:
        raise DimensionMismatchError(f"Expected points of dimension {dim}, got shape {array.shape}")
    return array, single


@dataclass(frozen=True)
class SmoothMap:
    """A map R^input_dim -> R^output_dim with one expression tree per output."""

    input_dim: int
    components: Tuple[Node, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.input_dim < 0:
            raise DimensionMismatchError(f"Negative input dimension {self.input_dim}")
        if not self.components:
            raise DimensionMismatchError("A smooth map needs at least one component")
        for node in self.components:
            used = node.variables()
            if used and max(used) >= self.input_dim:
                raise DimensionMismatchError(
                    f"Component {node.label()} uses x{max(used) + 1} "
                    f"but the map has input dimension {self.input_dim}"
                )

    @property
    def output_dim(self) -> int:
        return len(self.components)

    @property
    def is_scalar(self) -> bool:
        return self.output_dim == 1

    def evaluate(self, x: Union[Sequence[float], np.ndarray]) -> np.ndarray:
        """Evaluate at a point (returns (m,)) or a batch (returns (N, m))."""
        points, single = as_points(x, self.input_dim)
        values = self.evaluate_batch(points)
        return values[0] if single else values

    def __call__(self, x: Union[Sequence[float], np.ndarray]) -> np.ndarray:
        return self.evaluate(x)

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        return np.column_stack([node.evaluate(points) for node in self.components])

    def jet(self, x: Union[Sequence[float], np.ndarray]) -> Jet:
        """Value and exact Jacobian at a single point."""
        points, single = as_points(x, self.input_dim)
        if not single:
            raise DimensionMismatchError("jet expects a single point; use jet_batch")
        values, jacobians = self.jet_batch(points)
        return Jet(value=values[0], jacobian=jacobians[0])

    def jet_batch(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Values (N, m) and Jacobians (N, m, n)."""
        n = points.shape[0]
        values = np.empty((n, self.output_dim), dtype=float)
        jacobians = np.empty((n, self.output_dim, self.input_dim), dtype=float)
        for i, node in enumerate(self.components):
            values[:, i], jacobians[:, i, :] = node.forward(points)
        return values, jacobians

    def partial(self, k: int) -> "SmoothMap":
        """Componentwise partial derivative with respect to coordinate k (0-based)."""
        if not 0 <= k < self.input_dim:
            raise DimensionMismatchError(f"No coordinate x{k + 1} on R^{self.input_dim}")
        return SmoothMap(self.input_dim, tuple(node.diff(k) for node in self.components))

    def component(self, i: int) -> "SmoothMap":
        return SmoothMap(self.input_dim, (self.components[i],))

    def __getitem__(self, i: int) -> "SmoothMap":
        return self.component(i)

    @property
    def node(self) -> Node:
        """The single tree of a scalar map."""
        if not self.is_scalar:
            raise DimensionMismatchError(f"Map has {self.output_dim} components, expected 1")
        return self.components[0]

    def variables(self) -> frozenset:
        found: frozenset = frozenset()
        for node in self.components:
            found = found | node.variables()
        return found

    def _binary(self, other: MapLike, op) -> "SmoothMap":
        other_map = as_map(other, self.input_dim)
        if other_map.input_dim != self.input_dim:
            raise DimensionMismatchError(
                f"Cannot combine maps on R^{self.input_dim} and R^{other_map.input_dim}"
            )
        if other_map.output_dim == 1 and self.output_dim > 1:
            right = other_map.components * self.output_dim
        elif other_map.output_dim != self.output_dim:
            raise DimensionMismatchError(
                f"Cannot combine {self.output_dim}- and {other_map.output_dim}-component maps"
            )
        else:
            right = other_map.components
        return SmoothMap(self.input_dim, tuple(op(a, b) for a, b in zip(self.components, right)))

    def __add__(self, other: MapLike) -> "SmoothMap":
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other: MapLike) -> "SmoothMap":
        return self._binary(other, lambda a, b: b + a)

    def __sub__(self, other: MapLike) -> "SmoothMap":
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other: MapLike) -> "SmoothMap":
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other: MapLike) -> "SmoothMap":
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other: MapLike) -> "SmoothMap":
        return self._binary(other, lambda a, b: b * a)

    def __truediv__(self, other: MapLike) -> "SmoothMap":
        return self._binary(other, lambda a, b: a / b)

    def __neg__(self) -> "SmoothMap":
        return SmoothMap(self.input_dim, tuple(-node for node in self.components))

    def __pow__(self, exponent: float) -> "SmoothMap":
        return SmoothMap(self.input_dim, tuple(node**exponent for node in self.components))

    def __str__(self) -> str:
        if self.is_scalar:
            return self.components[0].render()
        return "(" + ", ".join(node.render() for node in self.components) + ")"


def as_map(value: MapLike, input_dim: int) -> SmoothMap:
    if isinstance(value, SmoothMap):
        return value
    return SmoothMap(input_dim, (as_node(value),))


def from_nodes(input_dim: int, nodes: Iterable[NodeLike]) -> SmoothMap:
    return SmoothMap(input_dim, tuple(as_node(node) for node in nodes))


def constant(value: float, input_dim: int) -> SmoothMap:
    return SmoothMap(input_dim, (Const(float(value)),))


def coordinate(index: int, input_dim: int) -> SmoothMap:
    """The projection x -> x_{index + 1}."""
    return SmoothMap(input_dim, (Coord(index),))


def identity(dim: int) -> SmoothMap:
    return SmoothMap(dim, tuple(Coord(i) for i in range(dim)))


def projection(indices: Sequence[int], input_dim: int) -> SmoothMap:
    return SmoothMap(input_dim, tuple(Coord(i) for i in indices))


def linear_map(matrix: Union[Sequence[Sequence[float]], np.ndarray]) -> SmoothMap:
    """x -> A x as a map R^cols -> R^rows."""
    a = np.asarray(matrix, dtype=float)
    rows, cols = a.shape
    components = []
    for r in range(rows):
        row: Node = ZERO
        for c in range(cols):
            if a[r, c] != 0.0:
                row = add(row, mul(Const(float(a[r, c])), Coord(c)))
        components.append(row)
    return SmoothMap(cols, tuple(components))


def stack(maps: Sequence[SmoothMap]) -> SmoothMap:
    """Concatenate the components of maps sharing an input dimension."""
    if not maps:
        raise DimensionMismatchError("Nothing to stack")
    dim = maps[0].input_dim
    if any(m.input_dim != dim for m in maps):
        raise DimensionMismatchError("Stacked maps must share an input dimension")
    return SmoothMap(dim, tuple(node for m in maps for node in m.components))


def compose(outer: SmoothMap, inner: SmoothMap) -> SmoothMap:
    """x -> outer(inner(x))."""
    if inner.output_dim != outer.input_dim:
        raise DimensionMismatchError(
            f"Cannot compose: inner map has {inner.output_dim} outputs, "
            f"outer map expects {outer.input_dim} inputs"
        )
    return SmoothMap(
        inner.input_dim, tuple(compose_node(node, inner.components) for node in outer.components)
    )


def shift_coordinates(f: SmoothMap, offset: int, input_dim: int) -> SmoothMap:
    """Re-read f's coordinates x_j as x_{j + offset} of a larger space."""
    return compose(f, projection(range(offset, offset + f.input_dim), input_dim))
