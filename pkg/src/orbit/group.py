"""Finite linear group actions with exact rational matrices."""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple, Union

import numpy as np
import sympy as sp

from ..smooth.smooth_map import SmoothMap, compose, linear_map
from ..utils.errors import GroupActionError
from ..utils.logger import get_logger

logger = get_logger(__name__)

MAX_GROUP_ORDER = 512

MatrixLike = Union[sp.Matrix, Sequence[Sequence[Union[str, int, float]]]]


def rational_matrix(entries: MatrixLike) -> sp.ImmutableMatrix:
    """Exact matrix from rational literals such as "-1", "1/2" or 0.5."""
    if isinstance(entries, sp.MatrixBase):
        return sp.ImmutableMatrix(entries)
    try:
        rows = [[sp.Rational(str(v)) for v in row] for row in entries]
    except (TypeError, ValueError) as e:
        raise GroupActionError(f"Matrix entries must be rational literals: {e}") from e
    return sp.ImmutableMatrix(rows)


@dataclass(frozen=True, eq=False)
class FiniteGroupAction:
    """A finite group G acting linearly on R^n, listed element by element."""

    ambient_dim: int
    elements: Tuple[sp.ImmutableMatrix, ...]
    name: str = "G"

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def float_matrices(self) -> Tuple[np.ndarray, ...]:
        return tuple(np.array(m.tolist(), dtype=float) for m in self.elements)

    @cached_property
    def inverse_matrices(self) -> Tuple[np.ndarray, ...]:
        return tuple(np.array(m.inv().tolist(), dtype=float) for m in self.elements)

    @cached_property
    def maps(self) -> Tuple[SmoothMap, ...]:
        return tuple(linear_map(m) for m in self.float_matrices)

    def act(self, index: int, points: np.ndarray) -> np.ndarray:
        """g_index . x for a batch of points (N, n)."""
        return points @ self.float_matrices[index].T

    def orbit(self, x: Sequence[float]) -> np.ndarray:
        point = np.asarray(x, dtype=float)
        return np.array([m @ point for m in self.float_matrices])

    def verify(self) -> None:
        """Exact identity, closure and invertibility checks."""
        identity = sp.ImmutableMatrix(sp.eye(self.ambient_dim))
        members = set(self.elements)
        if identity not in members:
            raise GroupActionError(f"{self.name} does not contain the identity")
        for g in self.elements:
            if g.det() == 0:
                raise GroupActionError(f"{self.name} contains a singular matrix {g.tolist()}")
            if sp.ImmutableMatrix(g.inv()) not in members:
                raise GroupActionError(f"{self.name} is missing the inverse of {g.tolist()}")
            for h in self.elements:
                if sp.ImmutableMatrix(g * h) not in members:
                    raise GroupActionError(f"{self.name} is not closed under products")


def generate_group(
    generators: Sequence[MatrixLike], ambient_dim: int, name: str = "G"
) -> FiniteGroupAction:
    """Close a set of generators under products (breadth first) and verify the result."""
    gens = [rational_matrix(g) for g in generators]
    for g in gens:
        if g.shape != (ambient_dim, ambient_dim):
            raise GroupActionError(f"Generator of shape {g.shape} does not act on R^{ambient_dim}")
        if g.det() == 0:
            raise GroupActionError(f"Generator {g.tolist()} is not invertible")

    identity = sp.ImmutableMatrix(sp.eye(ambient_dim))
    elements: List[sp.ImmutableMatrix] = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for g in gens:
                product = sp.ImmutableMatrix(g * element)
                if product not in seen:
                    seen.add(product)
                    elements.append(product)
                    next_frontier.append(product)
                    if len(elements) > MAX_GROUP_ORDER:
                        raise GroupActionError(
                            f"{name} exceeds {MAX_GROUP_ORDER} elements; generators must "
                            f"generate a finite group"
                        )
        frontier = next_frontier

    action = FiniteGroupAction(ambient_dim, tuple(elements), name)
    action.verify()
    logger.debug(f"Generated {name} of order {action.order} on R^{ambient_dim}")
    return action


def invariance_residual(f: SmoothMap, action: FiniteGroupAction, points: np.ndarray) -> float:
    """max over g and x of |f(g x) - f(x)|."""
    if points.shape[0] == 0:
        return 0.0
    base = f.evaluate_batch(points)
    worst = 0.0
    for i in range(action.order):
        moved = f.evaluate_batch(action.act(i, points))
        worst = max(worst, float(np.max(np.abs(moved - base))))
    return worst


def average_invariant(f: SmoothMap, action: FiniteGroupAction) -> SmoothMap:
    """(1/|G|) sum_g f o g."""
    total = compose(f, action.maps[0])
    for g in action.maps[1:]:
        total = total + compose(f, g)
    return (1.0 / action.order) * total


def average_field(field: SmoothMap, action: FiniteGroupAction) -> SmoothMap:
    """(1/|G|) sum_g g^{-1} Y(g x): the equivariant average of a field."""
    total = None
    for g, g_inv in zip(action.maps, action.inverse_matrices):
        term = compose(linear_map(g_inv), compose(field, g))
        total = term if total is None else total + term
    return (1.0 / action.order) * total


def equivariance_residual(field: SmoothMap, action: FiniteGroupAction, points: np.ndarray) -> float:
    """max over g and x of |Y(g x) - g Y(x)|."""
    if points.shape[0] == 0:
        return 0.0
    base = field.evaluate_batch(points)
    worst = 0.0
    for i in range(action.order):
        moved = field.evaluate_batch(action.act(i, points))
        worst = max(worst, float(np.max(np.abs(moved - action.act(i, base)))))
    return worst
