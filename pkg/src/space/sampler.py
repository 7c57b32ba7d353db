"""Seedable samplers producing points of a space."""

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from ..smooth.nodes import Coord
from ..smooth.smooth_map import SmoothMap, compose, projection
from ..utils.errors import DimensionMismatchError


@dataclass(frozen=True)
class Branch:
    """A parametrized piece of the space: parameters drawn uniformly from ``ranges``."""

    parametrization: SmoothMap
    ranges: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "ranges", tuple((float(a), float(b)) for a, b in self.ranges))
        if len(self.ranges) != self.parametrization.input_dim:
            raise DimensionMismatchError(
                f"Branch has {self.parametrization.input_dim} parameters "
                f"but {len(self.ranges)} ranges"
            )

    def draw(self, count: int, rng: np.random.Generator) -> np.ndarray:
        lows = np.array([a for a, _ in self.ranges])
        highs = np.array([b for _, b in self.ranges])
        params = lows + (highs - lows) * rng.random((count, len(self.ranges)))
        return self.parametrization.evaluate_batch(params)


@dataclass(frozen=True, eq=False)
class Sampler:
    """Fixed points (singular strata) plus random draws from parametrized branches."""

    ambient_dim: int
    branches: Tuple[Branch, ...] = ()
    points: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        pts = np.asarray(self.points, dtype=float)
        if not (pts.ndim == 2 and pts.shape[1] == self.ambient_dim):
            pts = pts.reshape(-1, self.ambient_dim) if pts.size else np.zeros((0, self.ambient_dim))
        object.__setattr__(self, "points", pts)
        for branch in self.branches:
            if branch.parametrization.output_dim != self.ambient_dim:
                raise DimensionMismatchError(
                    f"Branch maps into R^{branch.parametrization.output_dim}, "
                    f"expected R^{self.ambient_dim}"
                )

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """All fixed points followed by ``count`` random draws spread over the branches."""
        chunks = [self.points]
        if self.branches and count > 0:
            share, extra = divmod(count, len(self.branches))
            for i, branch in enumerate(self.branches):
                size = share + (1 if i < extra else 0)
                if size:
                    chunks.append(branch.draw(size, rng))
        return np.vstack(chunks) if chunks else np.zeros((0, self.ambient_dim))

    def product_with_interval(self) -> "Sampler":
        """Sampler of I x S: t drawn from [0, 1] for branches, t in {0, 1/2, 1} for fixed points."""
        dim = self.ambient_dim + 1
        branches = []
        for branch in self.branches:
            k = branch.parametrization.input_dim
            # new parameters (t, s_1..s_k) -> (t, branch(s))
            tail = compose(branch.parametrization, projection(range(1, k + 1), k + 1))
            lifted = SmoothMap(k + 1, (Coord(0),) + tail.components)
            branches.append(Branch(lifted, ((0.0, 1.0),) + branch.ranges))
        fixed = [
            np.concatenate([[t], point]) for point in self.points for t in (0.0, 0.5, 1.0)
        ]
        points = np.array(fixed).reshape(-1, dim)
        return Sampler(dim, tuple(branches), points)


def box_sampler(
    bounds: Sequence[Tuple[float, float]], points: Sequence[Sequence[float]] = ()
) -> Sampler:
    """Uniform sampler of an axis-parallel box, with optional fixed points."""
    dim = len(bounds)
    ident = projection(range(dim), dim)
    fixed = np.asarray(points, dtype=float).reshape(-1, dim)
    return Sampler(dim, (Branch(ident, tuple(bounds)),), fixed)
