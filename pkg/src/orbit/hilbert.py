"""Hilbert maps, orbit-space models and their contractions."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..smooth.smooth_map import SmoothMap, compose
from ..space.contraction import Contraction, scaling_homotopy
from ..space.model import SpaceModel, coordinate_generators, make_space
from ..space.predicates import AllOf, Everything, Predicate, Relation, RelationKind
from ..space.sampler import Branch, Sampler
from ..utils.errors import (
    ContractionError,
    DimensionMismatchError,
    InvarianceError,
    SeparationError,
)
from ..utils.logger import get_logger
from .group import FiniteGroupAction, invariance_residual

logger = get_logger(__name__)

INVARIANCE_TOLERANCE = 1e-10
SEPARATION_TOLERANCE = 1e-9
SCALING_FACTORS = (0.5, 2.0, 3.0)


@dataclass(frozen=True, eq=False)
class HilbertMap:
    """Invariant components pi = (pi_1..pi_k) with the relations and inequalities of the image."""

    components: SmoothMap
    relations: Tuple[SmoothMap, ...] = ()
    inequalities: Tuple[SmoothMap, ...] = ()

    def __post_init__(self):
        k = self.components.output_dim
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        for f in self.relations + self.inequalities:
            if f.input_dim != k or not f.is_scalar:
                raise DimensionMismatchError(f"Image condition {f} must be a function on R^{k}")

    @property
    def image_dim(self) -> int:
        return self.components.output_dim

    def image_predicate(self) -> Predicate:
        parts = [Relation(r.node, RelationKind.EQ) for r in self.relations]
        parts += [Relation(q.node, RelationKind.GE) for q in self.inequalities]
        return AllOf(tuple(parts)) if parts else Everything()


def detect_degrees(
    components: SmoothMap, points: np.ndarray, tol: float = 1e-9
) -> Optional[Tuple[int, ...]]:
    """Homogeneity degree of each component, or None if some component is not homogeneous."""
    degrees: List[int] = []
    base = components.evaluate_batch(points)
    for i in range(components.output_dim):
        usable = np.abs(base[:, i]) > 1e-6
        if not np.any(usable):
            return None
        scaled = components.evaluate_batch(2.0 * points[usable])[:, i]
        estimate = np.log2(np.abs(scaled / base[usable, i]))
        degree = int(round(float(np.median(estimate))))
        for s in SCALING_FACTORS:
            lhs = components.evaluate_batch(s * points)[:, i]
            rhs = s**degree * base[:, i]
            if np.max(np.abs(lhs - rhs)) > tol * max(1.0, float(np.max(np.abs(rhs)))):
                return None
        degrees.append(degree)
    return tuple(degrees)


@dataclass(frozen=True, eq=False)
class OrbitSpaceModel:
    """The orbit space M/G realized as the image of a Hilbert map."""

    space: SpaceModel
    orbit_map: SmoothMap
    hilbert: HilbertMap
    action: FiniteGroupAction
    upstairs: SpaceModel
    degrees: Optional[Tuple[int, ...]]

    def project(self, points: np.ndarray) -> np.ndarray:
        return self.orbit_map.evaluate_batch(points)


def check_hilbert(
    hilbert: HilbertMap, action: FiniteGroupAction, points: np.ndarray
) -> Tuple[float, float, float]:
    """Invariance residual of the components, relation residual and inequality violation."""
    invariance = invariance_residual(hilbert.components, action, points)
    image = hilbert.components.evaluate_batch(points)
    relation = max(
        (float(np.max(np.abs(r.evaluate_batch(image)))) for r in hilbert.relations), default=0.0
    )
    inequality = max(
        (float(np.max(np.maximum(-q.evaluate_batch(image), 0.0))) for q in hilbert.inequalities),
        default=0.0,
    )
    return invariance, relation, inequality


def separation_failures(
    hilbert: HilbertMap,
    action: FiniteGroupAction,
    points: np.ndarray,
    tol: float = SEPARATION_TOLERANCE,
) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Sampled pairs with equal images that are not related by any group element."""
    image = hilbert.components.evaluate_batch(points)
    failures = []
    for i in range(points.shape[0]):
        close = np.max(np.abs(image[i + 1 :] - image[i]), axis=1, initial=0.0) <= tol
        for j in np.nonzero(close)[0] + i + 1:
            orbit = action.orbit(points[i])
            if np.min(np.max(np.abs(orbit - points[j]), axis=1)) > tol:
                failures.append((points[i], points[j]))
    return failures


def _pushed_sampler(upstairs: SpaceModel, components: SmoothMap) -> Sampler:
    branches = tuple(
        Branch(compose(components, b.parametrization), b.ranges) for b in upstairs.sampler.branches
    )
    fixed = (
        components.evaluate_batch(upstairs.sampler.points)
        if upstairs.sampler.points.shape[0]
        else np.zeros((0, components.output_dim))
    )
    return Sampler(components.output_dim, branches, fixed)


def orbit_pushforward(
    upstairs: SpaceModel,
    hilbert: HilbertMap,
    action: FiniteGroupAction,
    rng: np.random.Generator,
    count: int = 200,
    extra_points: Optional[np.ndarray] = None,
    name: Optional[str] = None,
) -> OrbitSpaceModel:
    """Build M/G inside R^k from the Hilbert map, after invariance and separation checks."""
    if hilbert.components.input_dim != upstairs.ambient_dim:
        raise DimensionMismatchError(
            f"Hilbert map takes R^{hilbert.components.input_dim}, "
            f"{upstairs.name} lives in R^{upstairs.ambient_dim}"
        )
    points = upstairs.sample(count, rng)
    if extra_points is not None:
        points = np.vstack([points, np.asarray(extra_points, dtype=float)])
    invariance, relation, inequality = check_hilbert(hilbert, action, points)
    scale = max(1.0, float(np.max(np.abs(hilbert.components.evaluate_batch(points)))))
    if invariance > INVARIANCE_TOLERANCE * scale:
        raise InvarianceError(f"Hilbert components are not {action.name}-invariant", invariance)
    if relation > upstairs.tolerance or inequality > upstairs.tolerance:
        raise InvarianceError(
            f"Image conditions fail on pushed samples (relation {relation:.2e}, "
            f"inequality {inequality:.2e})",
            max(relation, inequality),
        )
    failures = separation_failures(hilbert, action, points)
    if failures:
        a, b = failures[0]
        raise SeparationError(
            f"Components do not separate orbits: {a.tolist()} and {b.tolist()} share an image "
            f"but lie on different {action.name}-orbits"
        )
    k = hilbert.image_dim
    space = make_space(
        k,
        hilbert.image_predicate(),
        _pushed_sampler(upstairs, hilbert.components),
        coordinate_generators(k),
        name=name or f"{upstairs.name}/{action.name}",
        tolerance=upstairs.tolerance,
    )
    degrees = detect_degrees(hilbert.components, points)
    logger.info(
        f"Orbit space {space.name} in R^{k}: {len(hilbert.relations)} relation(s), "
        f"degrees {degrees}"
    )
    return OrbitSpaceModel(space, hilbert.components, hilbert, action, upstairs, degrees)


def build_contraction(
    model: OrbitSpaceModel, rng: np.random.Generator, count: int = 128
) -> Contraction:
    """h(t, pi) = (t^{d_i} pi_i), i.e. pi(t x), on an orbit space with homogeneous components."""
    if model.degrees is None:
        raise ContractionError(f"Components of {model.space.name} are not homogeneous")
    base = np.zeros(model.space.ambient_dim)
    contraction = Contraction(model.space, scaling_homotopy(base, model.degrees), base)
    contraction.validate(rng, count)
    return contraction


def star_contraction(
    space: SpaceModel, base_point: Sequence[float], rng: np.random.Generator, count: int = 128
) -> Contraction:
    """h(t, x) = x0 + t (x - x0), validated by sampling t x membership."""
    base = np.asarray(base_point, dtype=float)
    contraction = Contraction(space, scaling_homotopy(base, [1] * space.ambient_dim), base)
    contraction.validate(rng, count)
    return contraction


def contraction_equivariance(
    contraction: Contraction, action: FiniteGroupAction, points: np.ndarray
) -> float:
    """max |h(t, g x) - g h(t, x)| over t in a grid, g in G and the points."""
    worst = 0.0
    for t in (0.0, 0.3, 0.7, 1.0):
        lifted = np.column_stack([np.full(points.shape[0], t), points])
        base = contraction.homotopy.evaluate_batch(lifted)
        for i in range(action.order):
            moved = np.column_stack([np.full(points.shape[0], t), action.act(i, points)])
            lhs = contraction.homotopy.evaluate_batch(moved)
            worst = max(worst, float(np.max(np.abs(lhs - action.act(i, base)), initial=0.0)))
    return worst

