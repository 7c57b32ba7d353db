"""Open covers with declared intersection flags, validated by sampling."""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from ..space.model import SpaceModel
from ..space.predicates import Predicate, parse_predicate
from ..space.topology import component_count
from ..utils.errors import CoverError
from ..utils.logger import get_logger

logger = get_logger(__name__)

Simplex = Tuple[int, ...]

DEFAULT_SAMPLES = 800
DEFAULT_GRAPH_RADIUS = 0.35


class IntersectionFlag(str, Enum):
    EMPTY = "empty"
    CONTRACTIBLE = "contractible"


@dataclass(frozen=True)
class Region:
    label: str
    predicate: Predicate
    text: str


@dataclass(frozen=True, eq=False)
class Cover:
    """Regions U_0..U_{m-1} of S; undeclared intersections of two or more regions are empty."""

    name: str
    space: SpaceModel
    regions: Tuple[Region, ...]
    flags: Dict[Simplex, IntersectionFlag] = field(default_factory=dict)
    max_degree: int = 2
    graph_radius: float = DEFAULT_GRAPH_RADIUS

    def __post_init__(self):
        if not self.regions:
            raise CoverError(f"Cover {self.name} has no regions")
        if self.max_degree < 0:
            raise CoverError(f"Cover {self.name} has negative max_degree {self.max_degree}")
        m = len(self.regions)
        for indices in self.flags:
            if len(indices) < 2 or list(indices) != sorted(set(indices)):
                raise CoverError(
                    f"Intersection {list(indices)} must list at least two distinct indices "
                    f"in increasing order"
                )
            if indices[-1] >= m or indices[0] < 0:
                raise CoverError(f"Intersection {list(indices)} refers to a missing region")

    @property
    def size(self) -> int:
        return len(self.regions)

    def flag(self, indices: Simplex) -> IntersectionFlag:
        if len(indices) == 1:
            return IntersectionFlag.CONTRACTIBLE
        return self.flags.get(tuple(indices), IntersectionFlag.EMPTY)

    def simplices(self, degree: int) -> List[Simplex]:
        """Index tuples i_0 < ... < i_degree with a nonempty intersection."""
        return [
            s
            for s in combinations(range(self.size), degree + 1)
            if self.flag(s) == IntersectionFlag.CONTRACTIBLE
        ]

    def membership(self, points: np.ndarray) -> np.ndarray:
        """(N, m) boolean table of which region holds each point."""
        return np.column_stack(
            [r.predicate.contains(points, self.space.tolerance) for r in self.regions]
        )


def make_cover(
    name: str,
    space: SpaceModel,
    regions: Mapping[str, str],
    intersections: Iterable[Tuple[Sequence[int], str]] = (),
    max_degree: int = 2,
    graph_radius: float = DEFAULT_GRAPH_RADIUS,
) -> Cover:
    """Cover from predicate text per region label, in insertion order."""
    built = tuple(
        Region(label, parse_predicate(text, space.ambient_dim), text)
        for label, text in regions.items()
    )
    flags: Dict[Simplex, IntersectionFlag] = {}
    for indices, flag in intersections:
        try:
            flags[tuple(int(i) for i in indices)] = IntersectionFlag(flag)
        except ValueError as e:
            raise CoverError(f"Unknown intersection flag '{flag}' in cover {name}") from e
    return Cover(name, space, built, flags, max_degree, graph_radius)


def all_contractible(size: int) -> List[Tuple[Simplex, str]]:
    """Flags for a cover whose every intersection is nonempty and contractible."""
    return [
        (s, IntersectionFlag.CONTRACTIBLE.value)
        for k in range(2, size + 1)
        for s in combinations(range(size), k)
    ]


def validate_cover(
    cover: Cover, rng: np.random.Generator, count: int = DEFAULT_SAMPLES
) -> Dict[Simplex, int]:
    """Check the declared flags against a sample of S; returns hits per nonempty intersection.

    Every sample must lie in some region, an intersection flagged empty must contain no
    sample, and one flagged contractible must contain samples forming one connected
    piece of the sampling graph.
    """
    points = cover.space.sample(count, rng)
    table = cover.membership(points)
    uncovered = ~np.any(table, axis=1)
    if np.any(uncovered):
        bad = points[uncovered][0]
        raise CoverError(f"Cover {cover.name} misses {bad.tolist()} of {cover.space.name}")

    hits: Dict[Simplex, int] = {}
    top = min(cover.size, cover.max_degree + 2)
    for k in range(1, top + 1):
        for s in combinations(range(cover.size), k):
            inside = np.all(table[:, list(s)], axis=1)
            found = int(np.count_nonzero(inside))
            if cover.flag(s) == IntersectionFlag.EMPTY:
                if found:
                    raise CoverError(
                        f"Intersection {list(s)} of {cover.name} is flagged empty but holds "
                        f"{points[inside][0].tolist()}"
                    )
                continue
            if not found:
                raise CoverError(
                    f"Intersection {list(s)} of {cover.name} is flagged contractible but no "
                    f"sample lands in it"
                )
            pieces = component_count(points[inside], cover.graph_radius)
            if pieces > 1:
                raise CoverError(
                    f"Intersection {list(s)} of {cover.name} splits into {pieces} sampled pieces"
                )
            hits[s] = found
    logger.debug(f"Cover {cover.name} validated on {points.shape[0]} samples")
    return hits
