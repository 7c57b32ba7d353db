"""Pairing of forms with cubes and chains by quadrature."""

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..chains.chain import CubicalChain, boundary
from ..chains.cube import SingularCube
from ..smooth.smooth_map import SmoothMap, compose, stack
from ..space.model import StructureElement
from ..utils.errors import FormError
from ..utils.logger import get_logger
from .forms import FormTerm, GeneratorForm, exterior_derivative
from .quadrature import QuadratureRule

logger = get_logger(__name__)

DEFAULT_RULE = QuadratureRule()


@dataclass(frozen=True)
class PairingResult:
    value: float
    order: int
    converged: bool = True


def _check_pairable(form: GeneratorForm, cube: SingularCube) -> None:
    if form.degree != cube.dim:
        raise FormError(f"Cannot pair a {form.degree}-form with a {cube.dim}-cube")
    if not form.space.same_as(cube.space):
        raise FormError(f"Form on {form.space.name} paired with a cube of {cube.space.name}")


def _term_gradients(term: FormTerm, images: np.ndarray) -> Tuple[np.ndarray, List[np.ndarray]]:
    """Leading values (M,) and ambient gradients (M, n) of f_1..f_p at the image points."""
    lead = term.functions[0].node.evaluate(images)
    grads = [f.node.forward(images)[1] for f in term.functions[1:]]
    return lead, grads


def _generator_integrand(form: GeneratorForm, cube: SingularCube):
    def integrand(t: np.ndarray) -> np.ndarray:
        images, jacobian = cube.representative.jet_batch(t)
        total = np.zeros(t.shape[0])
        for term in form.terms:
            lead, grads = _term_gradients(term, images)
            if not grads:
                total += term.coefficient * lead
                continue
            # rows d(f_i o sigma)/dt = grad f_i(sigma(t)) . D sigma(t)
            rows = np.stack([np.einsum("mn,mnp->mp", g, jacobian) for g in grads], axis=1)
            total += term.coefficient * lead * np.linalg.det(rows)
        return total

    return integrand


def lambda_eval(
    form: GeneratorForm, cube: SingularCube, rule: QuadratureRule = DEFAULT_RULE
) -> PairingResult:
    """<alpha, sigma> = sum of c * int_box (f_0 o sigma) det D(f_1 o sigma, ..., f_p o sigma)."""
    _check_pairable(form, cube)
    if not form.terms:
        return PairingResult(0.0, 0)
    result = rule.integrate(_generator_integrand(form, cube), cube.box)
    return PairingResult(result.value, result.order, result.converged)


def pair(
    form: GeneratorForm,
    chain: Union[CubicalChain, SingularCube],
    rule: QuadratureRule = DEFAULT_RULE,
) -> PairingResult:
    """Pairing extended linearly over an integer chain."""
    if isinstance(chain, SingularCube):
        return lambda_eval(form, chain, rule)
    value, order, converged = 0.0, 0, True
    for coefficient, cube in chain:
        part = lambda_eval(form, cube, rule)
        value += coefficient * part.value
        order = max(order, part.order)
        converged = converged and part.converged
    return PairingResult(value, order, converged)


def stokes_residual(
    form: GeneratorForm, cube: SingularCube, rule: QuadratureRule = DEFAULT_RULE
) -> float:
    """|<d alpha, sigma> - <alpha, boundary sigma>|."""
    if cube.dim != form.degree + 1:
        raise FormError(f"Stokes needs a {form.degree + 1}-cube, got a {cube.dim}-cube")
    lhs = lambda_eval(exterior_derivative(form), cube, rule).value
    rhs = pair(form, boundary(cube), rule).value
    return abs(lhs - rhs)


def d_squared_value(
    form: GeneratorForm, cube: SingularCube, rule: QuadratureRule = DEFAULT_RULE
) -> float:
    return abs(lambda_eval(exterior_derivative(exterior_derivative(form)), cube, rule).value)


def chain_rule_residual(
    outer: SmoothMap,
    elements: Sequence[StructureElement],
    cubes: Sequence[SingularCube],
    rule: QuadratureRule = DEFAULT_RULE,
) -> float:
    """max over 1-cubes of |<d phi, sigma> - <sum_i dF/dg_i(g) dg_i, sigma>| with phi = F(g)."""
    if not elements:
        raise FormError("Chain rule needs at least one element")
    if outer.input_dim != len(elements) or not outer.is_scalar:
        raise FormError(f"Outer function must be scalar on R^{len(elements)}")
    space = elements[0].space
    inner = stack([e.representative for e in elements])
    phi = compose(outer, inner)
    lhs_form = exterior_derivative(GeneratorForm.lam(space, phi))
    rhs_form = GeneratorForm.from_terms(
        space,
        [(1.0, (compose(outer.partial(i), inner), e)) for i, e in enumerate(elements)],
        degree=1,
    )
    worst = 0.0
    for cube in cubes:
        lhs = lambda_eval(lhs_form, cube, rule).value
        rhs = lambda_eval(rhs_form, cube, rule).value
        worst = max(worst, abs(lhs - rhs))
    return worst


def _classical_integrand(form: GeneratorForm, cube: SingularCube):
    """Expand each term as sum_J c_J dx_J and pull back coordinate-wise (Cauchy-Binet)."""
    n = cube.space.ambient_dim

    def integrand(t: np.ndarray) -> np.ndarray:
        images, jacobian = cube.representative.jet_batch(t)
        total = np.zeros(t.shape[0])
        for term in form.terms:
            lead, grads = _term_gradients(term, images)
            p = len(grads)
            if p == 0:
                total += term.coefficient * lead
                continue
            gradient_rows = np.stack(grads, axis=1)
            for subset in combinations(range(n), p):
                columns = list(subset)
                coefficient = lead * np.linalg.det(gradient_rows[:, :, columns])
                total += term.coefficient * coefficient * np.linalg.det(jacobian[:, columns, :])
        return total

    return integrand


def classical_pairing(
    form: GeneratorForm, cube: SingularCube, rule: Optional[QuadratureRule] = None
) -> PairingResult:
    """Evaluate through the classical expansion sum_J c_J dx_J instead of generator Jacobians."""
    _check_pairable(form, cube)
    rule = rule or DEFAULT_RULE
    if not form.terms:
        return PairingResult(0.0, 0)
    result = rule.integrate(_classical_integrand(form, cube), cube.box)
    return PairingResult(result.value, result.order, result.converged)
