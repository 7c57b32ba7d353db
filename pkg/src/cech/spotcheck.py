"""Desk-scale comparison of Cech dimensions with de Rham behaviour on bundled spaces."""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..chains.cube import SingularCube, affine_cube, map_cube, random_affine_cubes
from ..forms.forms import GeneratorForm
from ..forms.pairing import DEFAULT_RULE, lambda_eval
from ..forms.prism import antiderivative_defect, closedness_residual, poincare_antiderivative
from ..forms.quadrature import QuadratureRule
from ..orbit.fixtures import orbit_model
from ..orbit.hilbert import build_contraction
from ..orbit.scaling import angular_form, circle_cube
from ..smooth.parser import parse_map
from ..space.contraction import Contraction, radial_contraction
from ..space.fixtures import get_space
from ..space.model import SpaceModel
from ..utils.errors import FixtureNotFoundError
from ..utils.logger import get_logger
from .complex import build_complex, cohomology_dims
from .cover import Cover, validate_cover
from .fixtures import get_cover

logger = get_logger(__name__)

EXACTNESS_TOLERANCE = 1e-7
PERIOD_TOLERANCE = 1e-8
CUBES_PER_CHECK = 6


@dataclass(frozen=True)
class SpotCheck:
    label: str
    kind: str
    value: float
    expected: Optional[float]
    passed: bool


@dataclass
class DeRhamReport:
    space: str
    cover: str
    dims: List[int]
    checks: List[SpotCheck] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(check.passed for check in self.checks)


@dataclass(frozen=True, eq=False)
class _Setting:
    """A space with its closed-form battery, test cubes and, when contractible, a contraction."""

    space: SpaceModel
    cover: str
    forms: Tuple[Tuple[str, GeneratorForm], ...]
    certificates: Tuple[SingularCube, ...]
    cubes: Tuple[SingularCube, ...]
    contraction: Optional[Contraction]


def _plane(rng: np.random.Generator) -> _Setting:
    space = get_space("plane")
    forms = (
        ("d(xy)", GeneratorForm.lam(space, 1.0, "x1*x2")),
        (
            "x dx + y dy",
            GeneratorForm.from_terms(space, [(1.0, ("x1", "x1")), (1.0, ("x2", "x2"))]),
        ),
        ("d(sin(x) exp(y))", GeneratorForm.lam(space, 1.0, "sin(x1)*exp(x2)")),
    )
    return _Setting(
        space,
        "plane_halves",
        forms,
        tuple(random_affine_cubes(space, 2, CUBES_PER_CHECK, rng)),
        tuple(random_affine_cubes(space, 1, CUBES_PER_CHECK, rng)),
        radial_contraction(space, [0.0, 0.0], rng),
    )


def _interval(rng: np.random.Generator) -> _Setting:
    space = get_space("interval")
    forms = (
        ("d(x^3)", GeneratorForm.lam(space, 1.0, "x1**3")),
        ("x dx", GeneratorForm.lam(space, "x1", "x1")),
        ("cos(x) dx", GeneratorForm.lam(space, "cos(x1)", "x1")),
    )
    return _Setting(
        space,
        "interval_two_sets",
        forms,
        tuple(random_affine_cubes(space, 2, CUBES_PER_CHECK, rng, radius=0.4)),
        tuple(random_affine_cubes(space, 1, CUBES_PER_CHECK, rng, radius=0.6)),
        radial_contraction(space, [0.0], rng),
    )


def _circle(rng: np.random.Generator) -> _Setting:
    space = get_space("circle")
    line = get_space("line")
    angle = parse_map(["cos(x1)", "sin(x1)"], 1)
    windows = [
        affine_cube(line, [rng.uniform(0.0, 6.0)], rng.uniform(-1.0, 1.0, size=(2, 1)))
        for _ in range(CUBES_PER_CHECK)
    ]
    certificates = tuple(map_cube(angle, window, space) for window in windows)
    return _Setting(
        space,
        "circle_three_arcs",
        (("x dy - y dx", angular_form(space)),),
        certificates,
        (circle_cube(space, 1.0),),
        None,
    )


def _cone(rng: np.random.Generator) -> _Setting:
    model = orbit_model("z2_plane", rng)
    plane = get_space("plane")
    space = model.space

    def pushed(p: int) -> Tuple[SingularCube, ...]:
        return tuple(
            map_cube(model.orbit_map, cube, space)
            for cube in random_affine_cubes(plane, p, CUBES_PER_CHECK, rng)
        )

    forms = (
        ("d(pi1 pi3)", GeneratorForm.lam(space, 1.0, "x1*x3")),
        (
            "pi1 dpi3 + pi3 dpi1",
            GeneratorForm.from_terms(space, [(1.0, ("x1", "x3")), (1.0, ("x3", "x1"))]),
        ),
        ("d(pi2)", GeneratorForm.lam(space, 1.0, "x2")),
    )
    contraction = build_contraction(model, rng)
    return _Setting(space, "cone_single_chart", forms, pushed(2), pushed(1), contraction)


SPOTCHECK_SPACES: Dict[str, Callable[[np.random.Generator], _Setting]] = {
    "plane": _plane,
    "interval": _interval,
    "circle": _circle,
    "cone": _cone,
}


def _exactness(
    label: str,
    form: GeneratorForm,
    setting: _Setting,
    contraction: Contraction,
    expect_exact: bool,
    rule: QuadratureRule,
) -> SpotCheck:
    result = poincare_antiderivative(
        form, contraction, setting.certificates, rule, tol=EXACTNESS_TOLERANCE
    )
    defect = antiderivative_defect(form, result.beta, setting.cubes, rule)
    exact = defect < EXACTNESS_TOLERANCE
    return SpotCheck(f"exact:{label}", "exactness", defect, 0.0, exact == expect_exact)


def _period(
    label: str, form: GeneratorForm, setting: _Setting, expect_period: bool, rule: QuadratureRule
) -> List[SpotCheck]:
    closed = closedness_residual(form, setting.certificates, rule)
    checks = [SpotCheck(f"closed:{label}", "closedness", closed, 0.0, closed < EXACTNESS_TOLERANCE)]
    for cycle in setting.cubes:
        value = lambda_eval(form, cycle, rule).value
        nonzero = abs(value) > PERIOD_TOLERANCE
        checks.append(
            SpotCheck(f"period:{label}", "period", value, 2.0 * np.pi, nonzero == expect_period)
        )
    return checks


def de_rham_spotcheck(
    space: str,
    rng: np.random.Generator,
    rule: QuadratureRule = DEFAULT_RULE,
    cover: Optional[Cover] = None,
) -> DeRhamReport:
    """Compare H^1 of a cover with what the closed-form battery does on the space.

    H^1 = 0 predicts every closed form in the battery has an antiderivative; H^1 > 0
    predicts a nonzero period on the fundamental cycle.
    """
    factory = SPOTCHECK_SPACES.get(space)
    if factory is None:
        raise FixtureNotFoundError("spot-check space", space, list(SPOTCHECK_SPACES))
    setting = factory(rng)
    cover = cover if cover is not None else get_cover(setting.cover)
    validate_cover(cover, rng)
    dims = cohomology_dims(build_complex(cover))
    h1 = dims[1] if len(dims) > 1 else 0
    report = DeRhamReport(setting.space.name, cover.name, dims)
    for label, form in setting.forms:
        if setting.contraction is not None:
            check = _exactness(label, form, setting, setting.contraction, h1 == 0, rule)
            report.checks.append(check)
        else:
            report.checks.extend(_period(label, form, setting, h1 > 0, rule))
    logger.info(
        f"de Rham spot-check on {setting.space.name} with {cover.name}: dims {dims}, "
        f"consistent={report.consistent}"
    )
    return report


def spotcheck_names() -> Sequence[str]:
    return sorted(SPOTCHECK_SPACES)
