"""Integer chains of singular cubes and the operators on them."""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

from ..smooth.smooth_map import SmoothMap
from ..space.model import SpaceModel
from ..utils.errors import ChainError
from ..utils.logger import get_logger
from .cube import SingularCube, endpoint_inclusion, face, map_cube, prism

logger = get_logger(__name__)

Term = Tuple[int, SingularCube]


def _merge(terms: Iterable[Term]) -> Tuple[Term, ...]:
    """Collect equal cubes, drop zero coefficients and sort canonically."""
    merged: List[List] = []
    for coefficient, cube in terms:
        if coefficient == 0:
            continue
        for entry in merged:
            if entry[1].same_map(cube):
                entry[0] += coefficient
                break
        else:
            merged.append([coefficient, cube])
    kept = [(c, cube) for c, cube in merged if c != 0]
    kept.sort(key=lambda term: term[1].sort_key() + (term[0],))
    return tuple(kept)


@dataclass(frozen=True)
class CubicalChain:
    """Finite formal sum of singular cubes with integer coefficients."""

    terms: Tuple[Term, ...] = ()

    @classmethod
    def of(cls, terms: Iterable[Term]) -> "CubicalChain":
        return cls(_merge(terms))

    @classmethod
    def from_cube(cls, cube: SingularCube, coefficient: int = 1) -> "CubicalChain":
        return cls.of([(coefficient, cube)])

    def is_empty(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __add__(self, other: "CubicalChain") -> "CubicalChain":
        return CubicalChain.of(self.terms + other.terms)

    def __neg__(self) -> "CubicalChain":
        return CubicalChain(tuple((-c, cube) for c, cube in self.terms))

    def __sub__(self, other: "CubicalChain") -> "CubicalChain":
        return self + (-other)

    def __rmul__(self, k: int) -> "CubicalChain":
        return CubicalChain.of((k * c, cube) for c, cube in self.terms)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({cube.dim for _, cube in self.terms}))

    def describe(self) -> List[str]:
        return [f"{c:+d} {cube}" for c, cube in self.terms]


def _as_chain(c) -> CubicalChain:
    return CubicalChain.from_cube(c) if isinstance(c, SingularCube) else c


def cube_boundary(cube: SingularCube) -> List[Term]:
    """Sum over all axes i of (-1)^{i+1} [sigma o phi_i^+ - sigma o phi_i^-]."""
    if cube.dim == 0:
        raise ChainError("The boundary of a 0-cube is undefined")
    terms: List[Term] = []
    for i in range(1, cube.dim + 1):
        sign = 1 if i % 2 == 1 else -1
        terms.append((sign, face(cube, i, 1)))
        terms.append((-sign, face(cube, i, -1)))
    return terms


def boundary(chain) -> CubicalChain:
    chain = _as_chain(chain)
    terms: List[Term] = []
    for coefficient, cube in chain:
        terms.extend((coefficient * sign, f) for sign, f in cube_boundary(cube))
    return CubicalChain.of(terms)


def prism_chain(chain) -> CubicalChain:
    chain = _as_chain(chain)
    return CubicalChain.of((c, prism(cube)) for c, cube in chain)


def inclusion_chain(i: int, chain) -> CubicalChain:
    chain = _as_chain(chain)
    return CubicalChain.of((c, endpoint_inclusion(i, cube)) for c, cube in chain)


def pushforward_chain(f: SmoothMap, chain, target: SpaceModel) -> CubicalChain:
    chain = _as_chain(chain)
    return CubicalChain.of((c, map_cube(f, cube, target)) for c, cube in chain)


def homotopy_defect(cube: SingularCube) -> CubicalChain:
    """K(d sigma) + d(K sigma) - (u1 sigma - u0 sigma); empty when the prism identity holds.

    For a 0-cube d sigma vanishes and the identity reads d(K sigma) = u1 sigma - u0 sigma.
    """
    base = CubicalChain.from_cube(cube)
    lhs = boundary(prism_chain(base))
    if cube.dim > 0:
        lhs = lhs + prism_chain(boundary(base))
    defect = lhs - (inclusion_chain(1, base) - inclusion_chain(0, base))
    logger.debug(f"Homotopy defect of a {cube.dim}-cube has {len(defect)} term(s)")
    return defect
