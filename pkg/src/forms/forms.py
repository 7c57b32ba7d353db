"""Generator-tuple differential forms and their algebra."""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..smooth.nodes import Node, as_node
from ..smooth.parser import parse_expression
from ..smooth.smooth_map import SmoothMap, compose, constant
from ..space.model import SpaceModel, StructureElement
from ..utils.errors import DimensionMismatchError, FormError, MembershipError
from ..utils.logger import get_logger

logger = get_logger(__name__)

FunctionLike = Union[StructureElement, SmoothMap, Node, str, float, int]

_PULLBACK_SAMPLES = 128


@dataclass(frozen=True)
class FormTerm:
    """coefficient * f_0 df_1 ^ ... ^ df_p, each f_i a scalar map on the ambient space."""

    coefficient: float
    functions: Tuple[SmoothMap, ...]

    def render(self) -> str:
        lead = str(self.functions[0])
        tail = " ^ ".join(f"d({f})" for f in self.functions[1:])
        body = f"{lead} {tail}".strip() if tail else lead
        return f"{self.coefficient:g} * {body}"


def _as_function(value: FunctionLike, space: SpaceModel) -> SmoothMap:
    if isinstance(value, StructureElement):
        if not value.space.same_as(space):
            raise FormError(f"Element of {value.space.name} used in a form on {space.name}")
        return value.representative
    if isinstance(value, SmoothMap):
        rep = value
    elif isinstance(value, str):
        rep = SmoothMap(space.ambient_dim, (parse_expression(value, space.ambient_dim),))
    else:
        rep = SmoothMap(space.ambient_dim, (as_node(value),))
    if not rep.is_scalar or rep.input_dim != space.ambient_dim:
        raise DimensionMismatchError(
            f"Form entries on {space.name} must be scalar maps on R^{space.ambient_dim}"
        )
    return rep


@dataclass(frozen=True, eq=False)
class GeneratorForm:
    """A p-form on S: a finite sum of lambda_p(f_0, ..., f_p) with real coefficients."""

    space: SpaceModel
    degree: int
    terms: Tuple[FormTerm, ...] = ()

    def __post_init__(self):
        if self.degree < 0:
            raise FormError(f"Negative form degree {self.degree}")
        object.__setattr__(self, "terms", tuple(self.terms))
        for term in self.terms:
            if len(term.functions) != self.degree + 1:
                raise FormError(
                    f"A {self.degree}-form needs {self.degree + 1} functions per term, "
                    f"got {len(term.functions)}"
                )

    @classmethod
    def lam(
        cls, space: SpaceModel, *functions: FunctionLike, coefficient: float = 1.0
    ) -> "GeneratorForm":
        """The single-term form coefficient * lambda_p(f_0, ..., f_p)."""
        if not functions:
            raise FormError("lambda_p needs at least the leading function")
        maps = tuple(_as_function(f, space) for f in functions)
        return cls(space, len(maps) - 1, (FormTerm(float(coefficient), maps),))

    @classmethod
    def from_terms(
        cls,
        space: SpaceModel,
        terms: Iterable[Tuple[float, Sequence[FunctionLike]]],
        degree: Optional[int] = None,
    ) -> "GeneratorForm":
        built = [
            FormTerm(float(c), tuple(_as_function(f, space) for f in functions))
            for c, functions in terms
        ]
        if degree is None:
            if not built:
                raise FormError("Cannot infer the degree of an empty form")
            degree = len(built[0].functions) - 1
        return cls(space, degree, tuple(built))

    @classmethod
    def zero(cls, space: SpaceModel, degree: int) -> "GeneratorForm":
        return cls(space, degree, ())

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "GeneratorForm") -> None:
        if not self.space.same_as(other.space):
            raise FormError(f"Forms on {self.space.name} and {other.space.name}")
        if self.degree != other.degree:
            raise FormError(f"Cannot add forms of degree {self.degree} and {other.degree}")

    def __add__(self, other: "GeneratorForm") -> "GeneratorForm":
        self._check_compatible(other)
        return GeneratorForm(self.space, self.degree, self.terms + other.terms)

    def __neg__(self) -> "GeneratorForm":
        return (-1.0) * self

    def __sub__(self, other: "GeneratorForm") -> "GeneratorForm":
        return self + (-other)

    def __rmul__(self, scalar: float) -> "GeneratorForm":
        terms = tuple(FormTerm(float(scalar) * t.coefficient, t.functions) for t in self.terms)
        return GeneratorForm(self.space, self.degree, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(term.render() for term in self.terms)


def exterior_derivative(form: GeneratorForm) -> GeneratorForm:
    """lambda_p(f_0, ..., f_p) -> lambda_{p+1}(1, f_0, ..., f_p)."""
    unit = constant(1.0, form.space.ambient_dim)
    terms = tuple(FormTerm(t.coefficient, (unit,) + t.functions) for t in form.terms)
    return GeneratorForm(form.space, form.degree + 1, terms)


def wedge(alpha: GeneratorForm, beta: GeneratorForm) -> GeneratorForm:
    """(f_0, f_1..f_p) ^ (g_0, g_1..g_q) = (f_0 g_0, f_1..f_p, g_1..g_q), extended bilinearly."""
    if not alpha.space.same_as(beta.space):
        raise FormError(f"Cannot wedge forms on {alpha.space.name} and {beta.space.name}")
    terms: List[FormTerm] = []
    for a in alpha.terms:
        for b in beta.terms:
            lead = a.functions[0] * b.functions[0]
            terms.append(
                FormTerm(a.coefficient * b.coefficient, (lead,) + a.functions[1:] + b.functions[1:])
            )
    return GeneratorForm(alpha.space, alpha.degree + beta.degree, tuple(terms))


def pullback_form(
    f: SmoothMap,
    form: GeneratorForm,
    source: SpaceModel,
    rng: Optional[np.random.Generator] = None,
    check: bool = True,
) -> GeneratorForm:
    """F*alpha: compose every entry with F, after checking F(source) lands in alpha's space."""
    if f.input_dim != source.ambient_dim or f.output_dim != form.space.ambient_dim:
        raise DimensionMismatchError(
            f"Map R^{f.input_dim} -> R^{f.output_dim} does not go from "
            f"{source.name} to {form.space.name}"
        )
    if check:
        rng = rng if rng is not None else np.random.default_rng(0)
        points = source.sample(_PULLBACK_SAMPLES, rng)
        if points.shape[0]:
            images = f.evaluate_batch(points)
            inside = form.space.membership.contains(images, form.space.tolerance)
            if not np.all(inside):
                bad = points[~inside][0]
                raise MembershipError(
                    f"Pullback map sends {np.array2string(bad, precision=6)} of {source.name} "
                    f"outside {form.space.name}"
                )
    terms = tuple(
        FormTerm(t.coefficient, tuple(compose(g, f) for g in t.functions)) for t in form.terms
    )
    logger.debug(f"Pulled back a {form.degree}-form from {form.space.name} to {source.name}")
    return GeneratorForm(source, form.degree, terms)
