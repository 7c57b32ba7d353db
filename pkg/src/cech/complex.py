"""The Cech complex of a cover with locally constant real coefficients."""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import networkx as nx
import sympy as sp

from ..utils.errors import CoverError
from ..utils.logger import get_logger
from .cover import Cover, IntersectionFlag, Simplex

logger = get_logger(__name__)


@dataclass(frozen=True)
class CechComplex:
    """Nerve simplices per degree 0..max_degree+1 and delta^q for q = 0..max_degree."""

    cover: str
    simplices: Tuple[Tuple[Simplex, ...], ...]
    coboundaries: Tuple[sp.ImmutableMatrix, ...]

    @property
    def max_degree(self) -> int:
        return len(self.coboundaries) - 1

    def cochain_dim(self, q: int) -> int:
        return len(self.simplices[q]) if q < len(self.simplices) else 0


def _check_faces(cover: Cover, top: int) -> None:
    """A nonempty intersection cannot have an empty sub-intersection."""
    for k in range(3, top + 1):
        for s in combinations(range(cover.size), k):
            if cover.flag(s) != IntersectionFlag.CONTRACTIBLE:
                continue
            for sub in combinations(s, k - 1):
                if cover.flag(sub) == IntersectionFlag.EMPTY:
                    raise CoverError(
                        f"{cover.name}: {list(s)} is flagged nonempty but its face "
                        f"{list(sub)} is flagged empty"
                    )


def coboundary_matrix(rows: Tuple[Simplex, ...], cols: Tuple[Simplex, ...]) -> sp.ImmutableMatrix:
    """(delta f)(i_0..i_{q+1}) = sum_j (-1)^j f(i_0..^i_j..i_{q+1}), restriction being identity."""
    position: Dict[Simplex, int] = {s: c for c, s in enumerate(cols)}
    matrix = sp.zeros(len(rows), len(cols))
    for r, simplex in enumerate(rows):
        for j in range(len(simplex)):
            face = simplex[:j] + simplex[j + 1 :]
            matrix[r, position[face]] += (-1) ** j
    return sp.ImmutableMatrix(matrix)


def build_complex(cover: Cover, max_degree: Optional[int] = None) -> CechComplex:
    degree = cover.max_degree if max_degree is None else max_degree
    if degree < 0:
        raise CoverError(f"max_degree must be non-negative, got {degree}")
    _check_faces(cover, min(cover.size, degree + 2))
    simplices = tuple(tuple(cover.simplices(q)) for q in range(degree + 2))
    coboundaries = tuple(
        coboundary_matrix(simplices[q + 1], simplices[q]) for q in range(degree + 1)
    )
    logger.debug(
        f"Cech complex of {cover.name}: cochain dims {[len(s) for s in simplices[:-1]]}"
    )
    return CechComplex(cover.name, simplices, coboundaries)


def _rank(matrix: sp.MatrixBase) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return int(matrix.rank())


def coboundary_squared(cx: CechComplex) -> int:
    """Largest absolute entry of delta^{q+1} delta^q over q; zero for a valid complex."""
    worst = 0
    for q in range(len(cx.coboundaries) - 1):
        product = cx.coboundaries[q + 1] * cx.coboundaries[q]
        worst = max(worst, max((abs(int(v)) for v in product), default=0))
    return worst


def cohomology_dims(cx: CechComplex) -> List[int]:
    """dim H^q = dim C^q - rank delta^q - rank delta^{q-1}, with exact ranks."""
    ranks = [_rank(d) for d in cx.coboundaries]
    dims = []
    for q in range(cx.max_degree + 1):
        previous = ranks[q - 1] if q > 0 else 0
        dims.append(cx.cochain_dim(q) - ranks[q] - previous)
    logger.info(f"Cech cohomology of {cx.cover}: {dims}")
    return dims


def nerve_graph(cx: CechComplex) -> nx.Graph:
    """1-skeleton of the nerve."""
    graph = nx.Graph()
    graph.add_nodes_from(s[0] for s in cx.simplices[0])
    if len(cx.simplices) > 1:
        graph.add_edges_from(cx.simplices[1])
    return graph


def nerve_components(cx: CechComplex) -> int:
    return nx.number_connected_components(nerve_graph(cx))
