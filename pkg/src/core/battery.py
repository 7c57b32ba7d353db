"""Random polynomial forms, maps and cubes for the identity suites."""

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Tuple

import numpy as np

from ..chains.cube import SingularCube, identity_cube, random_affine_cubes, unit_box
from ..forms.forms import GeneratorForm
from ..smooth.parser import parse_expression, parse_map
from ..smooth.smooth_map import SmoothMap
from ..space.fixtures import euclidean
from ..space.model import SpaceModel, StructureElement

MAX_TERMS = 4
COEFFICIENT_STEPS = 4
IDENTITY_CUBE_DIMS = (1, 2, 3, 4)
CUBE_RADIUS = 0.5


def _monomial(exponents: Tuple[int, ...]) -> str:
    factors = []
    for i, k in enumerate(exponents):
        if k == 1:
            factors.append(f"x{i + 1}")
        elif k > 1:
            factors.append(f"x{i + 1}**{k}")
    return "*".join(factors)


def _monomials(n: int, degree: int) -> List[Tuple[int, ...]]:
    result: List[Tuple[int, ...]] = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            result.append(tuple(combo.count(i) for i in range(n)))
    return result


def random_polynomial(rng: np.random.Generator, n: int, degree: int) -> str:
    """A sparse polynomial in x1..xn with quarter-integer coefficients in [-1, 1]."""
    basis = _monomials(n, degree)
    picks = rng.choice(len(basis), size=min(MAX_TERMS, len(basis)), replace=False)
    parts = []
    for index in sorted(int(i) for i in picks):
        steps = int(rng.integers(-COEFFICIENT_STEPS, COEFFICIENT_STEPS + 1))
        if steps == 0:
            steps = 1
        coefficient = steps / COEFFICIENT_STEPS
        monomial = _monomial(basis[index])
        parts.append(f"({coefficient!r})" + (f"*{monomial}" if monomial else ""))
    return " + ".join(parts)


def random_form(
    space: SpaceModel, p: int, rng: np.random.Generator, max_degree: int = 4
) -> GeneratorForm:
    """One or two lambda_p terms with random polynomial entries."""
    n = space.ambient_dim
    terms = []
    for _ in range(int(rng.integers(1, 3))):
        functions = tuple(random_polynomial(rng, n, max_degree) for _ in range(p + 1))
        terms.append((1.0, functions))
    return GeneratorForm.from_terms(space, terms, degree=p)


@dataclass(frozen=True, eq=False)
class StokesDraw:
    form: GeneratorForm
    cube: SingularCube


def stokes_battery(
    space: SpaceModel, count: int, rng: np.random.Generator, max_degree: int = 4
) -> List[StokesDraw]:
    """Forms of degree p = 0, 1, ... cycling up to n - 1, each with an affine (p+1)-cube."""
    draws = []
    top = max(1, space.ambient_dim)
    for i in range(count):
        p = i % top
        form = random_form(space, p, rng, max_degree)
        cube = random_affine_cubes(space, p + 1, 1, rng, radius=CUBE_RADIUS)[0]
        draws.append(StokesDraw(form, cube))
    return draws


@dataclass(frozen=True, eq=False)
class ChainRuleDraw:
    outer: SmoothMap
    elements: Tuple[StructureElement, ...]
    segment: SingularCube


def chain_rule_battery(
    space: SpaceModel, count: int, rng: np.random.Generator, max_degree: int = 4
) -> List[ChainRuleDraw]:
    """Outer F: R^2 -> R of degree <= 3 and two elements of degree <= 2 on short segments."""
    n = space.ambient_dim
    outer_degree = min(3, max_degree)
    inner_degree = min(2, max_degree)
    draws = []
    for _ in range(count):
        outer = parse_map([random_polynomial(rng, 2, outer_degree)], 2)
        elements = tuple(
            space.element(parse_expression(random_polynomial(rng, n, inner_degree), n))
            for _ in range(2)
        )
        segment = random_affine_cubes(space, 1, 1, rng, radius=CUBE_RADIUS)[0]
        draws.append(ChainRuleDraw(outer, elements, segment))
    return draws


def identity_cubes() -> List[SingularCube]:
    """id: [0,1]^p -> R^p for p = 1..4."""
    return [identity_cube(euclidean(p), unit_box(p)) for p in IDENTITY_CUBE_DIMS]
