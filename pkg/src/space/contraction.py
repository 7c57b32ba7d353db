"""Contractions h: I x S -> S with h(1, x) = x and h(0, x) = x0."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..smooth.nodes import Const, Coord, Node, add, mul, sub
from ..smooth.smooth_map import SmoothMap
from ..utils.errors import ContractionError, DimensionMismatchError
from ..utils.logger import get_logger
from .model import SpaceModel

logger = get_logger(__name__)

ENDPOINT_TOLERANCE = 1e-12
T_GRID = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)


@dataclass(frozen=True, eq=False)
class Contraction:
    """A homotopy from the constant map at ``base_point`` to the identity of S."""

    space: SpaceModel
    homotopy: SmoothMap
    base_point: np.ndarray

    def __post_init__(self):
        n = self.space.ambient_dim
        if self.homotopy.input_dim != n + 1 or self.homotopy.output_dim != n:
            raise DimensionMismatchError(
                f"Contraction of {self.space.name} must map R^{n + 1} -> R^{n}, got "
                f"R^{self.homotopy.input_dim} -> R^{self.homotopy.output_dim}"
            )
        object.__setattr__(self, "base_point", np.asarray(self.base_point, dtype=float).reshape(n))

    def __call__(self, t: float, x: Sequence[float]) -> np.ndarray:
        return self.homotopy.evaluate(np.concatenate([[t], np.asarray(x, dtype=float)]))

    def validate(self, rng: np.random.Generator, count: int = 64) -> None:
        """Check the endpoint identities and h(I x S) inside S on samples."""
        points = self.space.sample(count, rng)
        if points.shape[0] == 0:
            return
        for t in T_GRID:
            lifted = np.column_stack([np.full(points.shape[0], t), points])
            images = self.homotopy.evaluate_batch(lifted)
            inside = self.space.membership.contains(images, self.space.tolerance)
            if not np.all(inside):
                bad = points[~inside][0]
                raise ContractionError(
                    f"h({t}, {np.array2string(bad, precision=6)}) leaves {self.space.name}"
                )
            if t == 1.0:
                error = float(np.max(np.abs(images - points)))
                if error > ENDPOINT_TOLERANCE:
                    raise ContractionError(f"h(1, x) differs from x by {error:.3e}")
            if t == 0.0:
                error = float(np.max(np.abs(images - self.base_point)))
                if error > ENDPOINT_TOLERANCE:
                    raise ContractionError(f"h(0, x) differs from the base point by {error:.3e}")
        logger.debug(f"Contraction of {self.space.name} validated on {points.shape[0]} samples")


def scaling_homotopy(base_point: Sequence[float], weights: Sequence[int]) -> SmoothMap:
    """h(t, x)_i = b_i + t^{w_i} (x_i - b_i) on R^{1+n}."""
    base = np.asarray(base_point, dtype=float)
    n = len(base)
    t = Coord(0)
    components = []
    for i, w in enumerate(weights):
        factor: Node = t**w if w != 1 else t
        offset = Const(float(base[i]))
        components.append(add(offset, mul(factor, sub(Coord(i + 1), offset))))
    return SmoothMap(n + 1, tuple(components))


def radial_contraction(
    space: SpaceModel, base_point: Sequence[float], rng: np.random.Generator
) -> Contraction:
    """h(t, x) = x0 + t (x - x0), validated as a star-shape check on samples."""
    n = space.ambient_dim
    contraction = Contraction(space, scaling_homotopy(base_point, [1] * n), np.asarray(base_point))
    contraction.validate(rng)
    return contraction
