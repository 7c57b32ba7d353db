"""Prism pullback K*, the homotopy identity and Poincare antiderivatives.

Forms on I x S are handled in split shape: every term is either
``a dt ^ df_1 ^ ... ^ df_p`` with f_i independent of t, or has no dt factor
and all entries independent of t. ``split_form`` produces that shape for an
arbitrary form by expanding each Jacobian determinant in product coordinates.
"""

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import List, Optional, Sequence

import numpy as np

from ..chains.cube import SingularCube, endpoint_inclusion, point_cube
from ..smooth.nodes import (
    ZERO,
    Coord,
    Node,
    add,
    compose_node,
    fiber_integral,
    is_zero,
    mul,
    sub,
)
from ..smooth.smooth_map import SmoothMap
from ..space.contraction import Contraction
from ..space.model import SpaceModel, StructureElement, product_with_interval
from ..utils.errors import FormError, NormalizationError, NotClosedError
from ..utils.logger import get_logger
from .forms import FormTerm, GeneratorForm, exterior_derivative, pullback_form
from .pairing import DEFAULT_RULE, lambda_eval
from .quadrature import QuadratureRule

logger = get_logger(__name__)

FIBER_ORDER = 16
CLOSEDNESS_TOLERANCE = 1e-8


def _parity(perm: Sequence[int]) -> int:
    sign, seen = 1, list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def _determinant(rows: List[List[Node]]) -> Node:
    """Leibniz expansion of a small matrix of expression trees."""
    size = len(rows)
    total: Node = ZERO
    for perm in permutations(range(size)):
        product: Optional[Node] = None
        for i, j in enumerate(perm):
            entry = rows[i][j]
            product = entry if product is None else mul(product, entry)
            if is_zero(product):
                break
        if product is None or is_zero(product):
            continue
        total = add(total, product) if _parity(perm) > 0 else sub(total, product)
    return total


def split_form(form: GeneratorForm) -> GeneratorForm:
    """Rewrite a form on a product space in coordinate-differential shape.

    Each term c f_0 df_1 ^ ... ^ df_q becomes sum_J c f_0 det(d f_i / d z_J) dz_J with
    z = (t, x); the coordinate differentials make every term canonical.
    """
    dim = form.space.ambient_dim
    if form.degree == 0:
        return form
    terms: List[FormTerm] = []
    for term in form.terms:
        lead = term.functions[0].node
        partials = [[f.node.diff(j) for j in range(dim)] for f in term.functions[1:]]
        for subset in combinations(range(dim), form.degree):
            minor = [[row[j] for j in subset] for row in partials]
            coefficient = mul(lead, _determinant(minor))
            if is_zero(coefficient):
                continue
            functions = (SmoothMap(dim, (coefficient,)),) + tuple(
                SmoothMap(dim, (Coord(j),)) for j in subset
            )
            terms.append(FormTerm(term.coefficient, functions))
    logger.debug(f"Split a {form.degree}-form into {len(terms)} coordinate term(s)")
    return GeneratorForm(form.space, form.degree, tuple(terms))


def _drop_fiber(node: Node, base_dim: int) -> Node:
    """Re-read a t-independent tree on I x R^n as a tree on R^n."""
    inner = (ZERO,) + tuple(Coord(j) for j in range(base_dim))
    return compose_node(node, inner)


def prism_pullback(form: GeneratorForm, fiber_order: int = FIBER_ORDER) -> GeneratorForm:
    """K*: p+1-forms on I x S in split shape to p-forms on S.

    a dt ^ df_1 ^ ... ^ df_p goes to (int_0^1 a dt) df_1 ^ ... ^ df_p; terms without
    dt go to zero.
    """
    base: Optional[SpaceModel] = form.space.base
    if base is None:
        raise FormError(f"{form.space.name} is not a product I x S")
    if form.degree == 0:
        raise FormError("K* takes forms of degree at least 1")
    n = base.ambient_dim
    terms: List[FormTerm] = []
    for term in form.terms:
        nodes = [f.node for f in term.functions]
        rest = nodes[2:]
        if any(0 in node.variables() for node in rest):
            raise NormalizationError(f"Term {term.render()} has t-dependent differentials")
        if nodes[1] == Coord(0):
            lead = fiber_integral(nodes[0], fiber_order)
            functions = (SmoothMap(n, (lead,)),) + tuple(
                SmoothMap(n, (_drop_fiber(node, n),)) for node in rest
            )
            terms.append(FormTerm(term.coefficient, functions))
        elif 0 in nodes[1].variables():
            raise NormalizationError(f"Term {term.render()} is not in split shape")
    return GeneratorForm(base, form.degree - 1, tuple(terms))


def homotopy_identity_defect(
    form: GeneratorForm,
    cube: SingularCube,
    rule: QuadratureRule = DEFAULT_RULE,
    fiber_order: int = FIBER_ORDER,
) -> float:
    """|<(dK* + K*d) omega, sigma> - <omega, u_1 sigma> + <omega, u_0 sigma>| for omega on I x S.

    For a function omega the identity reads K* d omega = u_1* omega - u_0* omega.
    """
    if form.space.base is None:
        raise FormError(f"{form.space.name} is not a product I x S")
    through_d = prism_pullback(split_form(exterior_derivative(form)), fiber_order)
    lhs = lambda_eval(through_d, cube, rule).value
    if form.degree > 0:
        lhs += lambda_eval(
            exterior_derivative(prism_pullback(split_form(form), fiber_order)), cube, rule
        ).value
    upper = lambda_eval(form, endpoint_inclusion(1, cube), rule).value
    lower = lambda_eval(form, endpoint_inclusion(0, cube), rule).value
    return abs(lhs - (upper - lower))


@dataclass(frozen=True, eq=False)
class Antiderivative:
    """beta with d beta = alpha, plus the closedness residual that certified alpha."""

    beta: GeneratorForm
    closedness_residual: float


def closedness_residual(
    form: GeneratorForm, cubes: Sequence[SingularCube], rule: QuadratureRule = DEFAULT_RULE
) -> float:
    """max |<d alpha, tau>| over (p+1)-cubes."""
    d_form = exterior_derivative(form)
    return max((abs(lambda_eval(d_form, tau, rule).value) for tau in cubes), default=0.0)


def poincare_antiderivative(
    form: GeneratorForm,
    contraction: Contraction,
    certificate: Sequence[SingularCube],
    rule: QuadratureRule = DEFAULT_RULE,
    tol: float = CLOSEDNESS_TOLERANCE,
    fiber_order: int = FIBER_ORDER,
    rng: Optional[np.random.Generator] = None,
) -> Antiderivative:
    """beta = K*(h* alpha) for a closed alpha of degree >= 1 on a contractible space."""
    if form.degree < 1:
        raise FormError("Antiderivatives exist for forms of degree at least 1")
    if not form.space.same_as(contraction.space):
        raise FormError(
            f"Contraction of {contraction.space.name} used for a form on {form.space.name}"
        )
    if not certificate:
        raise FormError("Closedness needs at least one certificate cube")
    residual = closedness_residual(form, certificate, rule)
    if residual > tol:
        raise NotClosedError(residual, tol)
    product = product_with_interval(form.space)
    omega = pullback_form(contraction.homotopy, form, product, rng=rng)
    beta = prism_pullback(split_form(omega), fiber_order)
    logger.info(
        f"Antiderivative of a {form.degree}-form on {form.space.name}: "
        f"{len(beta.terms)} term(s), closedness residual {residual:.2e}"
    )
    return Antiderivative(beta, residual)


def antiderivative_defect(
    form: GeneratorForm,
    beta: GeneratorForm,
    cubes: Sequence[SingularCube],
    rule: QuadratureRule = DEFAULT_RULE,
) -> float:
    """max |<d beta - alpha, sigma>| over the cubes."""
    d_beta = exterior_derivative(beta)
    return max(
        (abs(lambda_eval(d_beta, s, rule).value - lambda_eval(form, s, rule).value) for s in cubes),
        default=0.0,
    )


@dataclass(frozen=True)
class ConstancyReport:
    closedness_residual: float
    spread: float
    prism_residual: float


def constancy_check(
    f: StructureElement,
    contraction: Contraction,
    segments: Sequence[SingularCube],
    points: np.ndarray,
    rule: QuadratureRule = DEFAULT_RULE,
    fiber_order: int = FIBER_ORDER,
) -> ConstancyReport:
    """A function with df = 0 on a contractible space is constant.

    Reports max |<df, sigma>| over segments, max |f(x) - f(x0)| over points, and how well
    K*(h* df) at each point reproduces f(x) - f(x0).
    """
    space = contraction.space
    as_form = GeneratorForm.lam(space, f)
    df = exterior_derivative(as_form)
    closed = closedness_residual(as_form, segments, rule)
    base_value = float(f(contraction.base_point))
    values = np.asarray(f(points), dtype=float).reshape(-1)
    spread = float(np.max(np.abs(values - base_value), initial=0.0))
    product = product_with_interval(space)
    pulled = pullback_form(contraction.homotopy, df, product)
    lifted = prism_pullback(split_form(pulled), fiber_order)
    prism_residual = 0.0
    for x, value in zip(points, values):
        at_x = lambda_eval(lifted, point_cube(space, x), rule).value
        prism_residual = max(prism_residual, abs(at_x - (value - base_value)))
    return ConstancyReport(closed, spread, prism_residual)
