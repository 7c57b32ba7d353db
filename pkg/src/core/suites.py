"""Verification suites: each returns one SuiteResult for the report."""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..cech.complex import build_complex, coboundary_squared, cohomology_dims, nerve_components
from ..cech.cover import validate_cover
from ..cech.fixtures import EXPECTED_DIMS
from ..cech.spotcheck import de_rham_spotcheck, spotcheck_names
from ..chains.chain import boundary, homotopy_defect
from ..chains.cube import SingularCube, map_cube, random_affine_cubes
from ..flow.curves import CriterionReport, uniform_epsilon_probe
from ..flow.experiments import get_field, run_experiment
from ..flow.group_checks import flow_commutation_check, pushforward_check
from ..flow.integrator import IntegratorSettings, order_study
from ..forms.forms import GeneratorForm, exterior_derivative
from ..forms.pairing import (
    chain_rule_residual,
    classical_pairing,
    d_squared_value,
    lambda_eval,
    stokes_residual,
)
from ..forms.prism import antiderivative_defect, homotopy_identity_defect, poincare_antiderivative
from ..forms.quadrature import QuadratureRule
from ..model.config import SUITE_ORDER, SuiteConfig, SuiteId
from ..model.report import CohomologyRow, FlowSummary, OrbitRow, SuiteResult
from ..orbit.fixtures import orbit_model
from ..orbit.hilbert import (
    build_contraction,
    check_hilbert,
    contraction_equivariance,
    orbit_pushforward,
    star_contraction,
)
from ..orbit.scaling import (
    angular_form,
    circle_cube,
    form_invariance_residual,
    scaling_experiment,
)
from ..space.contraction import Contraction, radial_contraction
from ..space.fixtures import get_space
from ..space.model import SpaceModel, product_with_interval
from ..space.topology import sampled_components
from ..utils.errors import ConfigError, DiffSpaceError, ExpressionParseError, NotClosedError
from ..utils.logger import get_logger
from .battery import (
    chain_rule_battery,
    identity_cubes,
    random_form,
    random_polynomial,
    stokes_battery,
)
from .definitions import DefinitionResolver

logger = get_logger(__name__)

PROBE_CENTER = (0.0, 0.0)
PROBE_RADII = (0.1, 0.01, 0.001)
PROBE_LIMIT = 1e-3
GROUP_TIMES = (-1.0, -0.5, 0.5, 1.0)
GROUP_POINTS = 4
CONE_DEGREE = 2
CERTIFICATE_CUBES = 4


@dataclass
class SuiteContext:
    """Shared settings for one run; every suite draws from its own seeded generator."""

    config: SuiteConfig
    rule: QuadratureRule
    settings: IntegratorSettings
    fiber_order: int

    @classmethod
    def from_config(cls, config: SuiteConfig) -> "SuiteContext":
        quad = config.quadrature
        integ = config.integrator
        return cls(
            config=config,
            rule=QuadratureRule(order=quad.order, max_order=quad.max_order),
            settings=IntegratorSettings(
                rtol=integ.rtol,
                atol=integ.atol,
                min_step=integ.min_step,
                max_step=integ.max_step,
                norm_cap=integ.norm_cap,
                bisection_tol=integ.bisection_tol,
            ),
            fiber_order=quad.fiber_order,
        )

    def rng(self, suite: SuiteId) -> np.random.Generator:
        return np.random.default_rng([self.config.seed, SUITE_ORDER[suite]])

    def resolver(self, rng: np.random.Generator) -> DefinitionResolver:
        return DefinitionResolver(self.config.spaces, rng)

    def tolerance(self, suite: SuiteId) -> float:
        return self.config.tolerances.for_suite(suite)


@dataclass
class _Tally:
    """Running maximum of residuals plus the checks that are not residuals."""

    suite: SuiteId
    tolerance: float
    worst: float = 0.0
    samples: int = 0
    ok: bool = True
    notes: List[str] = field(default_factory=list)
    rows: List[dict] = field(default_factory=list)

    def add(self, residual: float, count: int = 1) -> None:
        self.worst = max(self.worst, float(residual))
        self.samples += count

    def require(self, condition: bool, note: str) -> None:
        if not condition:
            self.ok = False
            self.notes.append(f"FAILED: {note}")

    def result(self) -> SuiteResult:
        passed = self.ok and self.worst <= self.tolerance
        return SuiteResult(
            suite=self.suite,
            passed=passed,
            max_residual=self.worst,
            tolerance=self.tolerance,
            samples=self.samples,
            notes=self.notes,
            rows=self.rows,
        )


def _tally(ctx: SuiteContext, suite: SuiteId) -> _Tally:
    return _Tally(suite, ctx.tolerance(suite))


def d_squared_suite(ctx: SuiteContext) -> SuiteResult:
    """<d d alpha, tau> on (p+2)-cubes of R^3 for forms of degree 0 and 1."""
    tally = _tally(ctx, SuiteId.D_SQUARED)
    rng = ctx.rng(SuiteId.D_SQUARED)
    space = get_space("r3")
    degree = ctx.config.battery.max_polynomial_degree
    for i in range(ctx.config.battery.stokes_forms):
        p = i % 2
        form = random_form(space, p, rng, degree)
        cube = random_affine_cubes(space, p + 2, 1, rng, radius=0.5)[0]
        tally.add(d_squared_value(form, cube, ctx.rule))
    return tally.result()


def boundary_squared_suite(ctx: SuiteContext) -> SuiteResult:
    """The boundary of a boundary must cancel to the empty chain."""
    tally = _tally(ctx, SuiteId.BOUNDARY_SQUARED)
    rng = ctx.rng(SuiteId.BOUNDARY_SQUARED)
    cubes: List[SingularCube] = identity_cubes()
    space = get_space("r3")
    for p in (2, 3):
        cubes.extend(random_affine_cubes(space, p, 3, rng))
    for cube in cubes:
        leftover = boundary(boundary(cube))
        tally.add(float(len(leftover)))
        if not leftover.is_empty():
            tally.notes.append(f"{cube.dim}-cube leaves {len(leftover)} term(s) in dd")
    return tally.result()


def stokes_suite(ctx: SuiteContext) -> SuiteResult:
    tally = _tally(ctx, SuiteId.STOKES)
    rng = ctx.rng(SuiteId.STOKES)
    battery = ctx.config.battery
    draws = stokes_battery(
        get_space("r3"), battery.stokes_forms, rng, battery.max_polynomial_degree
    )
    for draw in draws:
        tally.add(stokes_residual(draw.form, draw.cube, ctx.rule))
    return tally.result()


def chain_rule_suite(ctx: SuiteContext) -> SuiteResult:
    tally = _tally(ctx, SuiteId.CHAIN_RULE)
    rng = ctx.rng(SuiteId.CHAIN_RULE)
    battery = ctx.config.battery
    draws = chain_rule_battery(
        get_space("plane"), battery.chain_rule_draws, rng, battery.max_polynomial_degree
    )
    for draw in draws:
        tally.add(chain_rule_residual(draw.outer, draw.elements, [draw.segment], ctx.rule))
    return tally.result()


def homotopy_suite(ctx: SuiteContext) -> SuiteResult:
    """Prism identity on chains (exact) and on cochains over I x R^2."""
    tally = _tally(ctx, SuiteId.HOMOTOPY)
    rng = ctx.rng(SuiteId.HOMOTOPY)
    plane = get_space("plane")
    for p in (0, 1, 2):
        for cube in random_affine_cubes(plane, p, 3, rng):
            defect = homotopy_defect(cube)
            tally.add(float(len(defect)))
            if not defect.is_empty():
                tally.notes.append(f"Chain homotopy defect of a {p}-cube: {defect.describe()}")

    product = product_with_interval(plane)
    degree = min(3, ctx.config.battery.max_polynomial_degree)
    for i in range(ctx.config.battery.poincare_forms):
        q = i % 3
        form = random_form(product, q, rng, degree)
        cube = random_affine_cubes(plane, q, 1, rng, radius=0.5)[0]
        tally.add(homotopy_identity_defect(form, cube, ctx.rule, ctx.fiber_order))
    return tally.result()


def _closed_forms(
    space: SpaceModel, count: int, rng: np.random.Generator, degree: int
) -> List[GeneratorForm]:
    """Alternating d(f), f dg + g df and df ^ dg, all closed."""
    n = space.ambient_dim
    forms = []
    for i in range(count):
        f = random_polynomial(rng, n, degree)
        g = random_polynomial(rng, n, degree)
        kind = i % 3
        if kind == 0:
            forms.append(exterior_derivative(GeneratorForm.lam(space, f)))
        elif kind == 1:
            forms.append(GeneratorForm.from_terms(space, [(1.0, (f, g)), (1.0, (g, f))]))
        else:
            forms.append(GeneratorForm.lam(space, 1.0, f, g))
    return forms


def _antiderivative_checks(
    tally: _Tally,
    ctx: SuiteContext,
    label: str,
    forms: Sequence[GeneratorForm],
    contraction: Contraction,
    cubes: Callable[[int, int], List[SingularCube]],
    rng: np.random.Generator,
) -> None:
    count = ctx.config.battery.poincare_cubes
    for form in forms:
        certificate = cubes(form.degree + 1, CERTIFICATE_CUBES)
        anti = poincare_antiderivative(
            form,
            contraction,
            certificate,
            ctx.rule,
            tol=tally.tolerance,
            fiber_order=ctx.fiber_order,
            rng=rng,
        )
        defect = antiderivative_defect(form, anti.beta, cubes(form.degree, count), ctx.rule)
        tally.add(defect, count)
    logger.info(f"Poincare antiderivatives on {label}: {len(forms)} form(s)")


def poincare_suite(ctx: SuiteContext) -> SuiteResult:
    """d beta = alpha for closed forms on R^2 and on the cone R^2/Z2."""
    tally = _tally(ctx, SuiteId.POINCARE)
    rng = ctx.rng(SuiteId.POINCARE)
    battery = ctx.config.battery
    plane = get_space("plane")
    contraction = radial_contraction(plane, (0.0, 0.0), rng)
    forms = _closed_forms(plane, battery.poincare_forms, rng, min(3, battery.max_polynomial_degree))
    _antiderivative_checks(
        tally,
        ctx,
        plane.name,
        forms,
        contraction,
        lambda p, k: random_affine_cubes(plane, p, k, rng, radius=0.5),
        rng,
    )

    model = orbit_model("z2_plane", rng)
    cone = model.space
    cone_contraction = build_contraction(model, rng)

    def pushed(p: int, k: int) -> List[SingularCube]:
        return [
            map_cube(model.orbit_map, cube, cone)
            for cube in random_affine_cubes(plane, p, k, rng, radius=0.5)
        ]

    cone_forms = _closed_forms(cone, battery.poincare_forms, rng, CONE_DEGREE)
    _antiderivative_checks(tally, ctx, cone.name, cone_forms, cone_contraction, pushed, rng)

    try:
        poincare_antiderivative(
            GeneratorForm.lam(plane, "x1", "x2"),
            contraction,
            random_affine_cubes(plane, 2, CERTIFICATE_CUBES, rng, radius=0.5),
            ctx.rule,
            tol=tally.tolerance,
            fiber_order=ctx.fiber_order,
            rng=rng,
        )
        rejected = False
    except NotClosedError:
        rejected = True
    tally.require(rejected, "x dy was not rejected as non-closed")
    return tally.result()


def representation_suite(ctx: SuiteContext) -> SuiteResult:
    """Generator-Jacobian pairing against the classical sum_J c_J dx_J evaluation."""
    tally = _tally(ctx, SuiteId.REPRESENTATION)
    rng = ctx.rng(SuiteId.REPRESENTATION)
    degree = ctx.config.battery.max_polynomial_degree
    for name in ("plane", "r3"):
        space = get_space(name)
        for p in range(space.ambient_dim + 1):
            for _ in range(4):
                form = random_form(space, p, rng, degree)
                cube = random_affine_cubes(space, p, 1, rng, radius=0.5)[0]
                generator = lambda_eval(form, cube, ctx.rule).value
                classical = classical_pairing(form, cube, ctx.rule).value
                tally.add(abs(generator - classical))
    return tally.result()


def flow_suite(ctx: SuiteContext) -> SuiteResult:
    """Configured experiments, the uniform-epsilon probe and the Z2 flow checks."""
    tally = _tally(ctx, SuiteId.FLOW)
    rng = ctx.rng(SuiteId.FLOW)
    membership_limit = ctx.config.tolerances.flow_membership
    resolver = ctx.resolver(rng)
    for ref in ctx.config.flows:
        experiment = resolver.flow(ref)
        outcome = run_experiment(experiment, ctx.settings)
        for run, expected in zip(outcome.runs, experiment.collapses):
            curve = run.curve
            where = f"{experiment.name} from {list(run.start)}"
            tally.require(
                curve.collapsed == expected,
                f"{where}: collapsed={curve.collapsed}, expected {expected}",
            )
            tally.require(
                curve.max_residual() <= membership_limit,
                f"{where}: membership residual {curve.max_residual():.3e} "
                f"exceeds {membership_limit:.1e}",
            )
            residuals = [curve.max_residual(), run.tangency_residual]
            if run.closed_form_error is not None:
                residuals.append(run.closed_form_error)
            tally.add(max(residuals), len(curve.times))
            summary = FlowSummary(experiment=experiment.name, **run.summary())
            tally.rows.append(summary.model_dump())

    probe_model = get_field("disk_with_axis")
    probe = uniform_epsilon_probe(
        probe_model, PROBE_CENTER, PROBE_RADII, rng, settings=ctx.settings
    )
    lengths = [row.min_domain_length for row in probe]
    tally.require(
        all(a >= b for a, b in zip(lengths, lengths[1:])),
        f"probe domains are not monotone in the radius: {lengths}",
    )
    tally.require(lengths[-1] < PROBE_LIMIT, f"probe minimum {lengths[-1]:.3e} stays large")
    report = CriterionReport(
        probe_model.space.name, probe_model.space.locally_closed, tuple(probe), 0.05
    )
    tally.require(report.all_open, f"probe on {report.space} met a domain that is not open")
    tally.require(report.consistent, f"{report.space} is locally closed but domains shrink")
    tally.notes.append(
        "probe " + ", ".join(f"r={row.radius:g}: {row.min_domain_length:.3e}" for row in probe)
        + f"; all open={report.all_open}"
    )

    action = resolver.action("z2_plane")
    euler = get_field("euler")
    points = rng.uniform(-1.0, 1.0, size=(GROUP_POINTS, 2))
    commutation = flow_commutation_check(
        euler, action.action, GROUP_TIMES, points, ctx.settings, strict=True
    )
    pushed = pushforward_check(
        euler, action.hilbert, action.action, GROUP_TIMES, points, ctx.settings, strict=True
    )
    tally.add(commutation.residual or 0.0, len(GROUP_TIMES) * GROUP_POINTS)
    tally.add(pushed.residual or 0.0, len(GROUP_TIMES) * GROUP_POINTS)

    study = order_study()
    tally.notes.append(f"integrator observed order {study.observed_order:.2f}")
    return tally.result()


def _rational_points(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Quarter-integer points, on which quadratic invariants are exact in floating point."""
    return rng.integers(-8, 9, size=(count, dim)) / 4.0


def orbit_suite(ctx: SuiteContext) -> SuiteResult:
    """Orbit-space model residuals and the invariant-vs-generated scaling experiment."""
    tally = _tally(ctx, SuiteId.ORBIT)
    rng = ctx.rng(SuiteId.ORBIT)
    resolver = ctx.resolver(rng)
    orbit = ctx.config.orbit
    fixture = resolver.action(orbit.action)
    upstairs = resolver.space(fixture.space)
    model = orbit_pushforward(upstairs, fixture.hilbert, fixture.action, rng, count=orbit.samples)

    rational = _rational_points(rng, orbit.samples, upstairs.ambient_dim)
    invariance, relation, inequality = check_hilbert(model.hilbert, model.action, rational)
    tally.add(max(invariance, relation, inequality), orbit.samples)
    tally.require(
        invariance == 0.0 and relation == 0.0,
        f"rational residuals invariance={invariance:.3e} relation={relation:.3e}",
    )

    if upstairs.ambient_dim != 2:
        tally.notes.append(f"scaling experiment skipped on {upstairs.name}")
        return tally.result()

    result = scaling_experiment(upstairs, orbit.radii, ctx.rule)
    for row in result.rows:
        fit = result.fits[row.form]
        tally.rows.append(
            OrbitRow(
                form=row.form,
                radius=row.radius,
                value=row.value,
                expected=row.expected,
                slope=fit.slope,
                r_squared=fit.r_squared,
            ).model_dump()
        )
        if row.expected is None:
            continue
        if row.expected == 0.0:
            tally.require(
                abs(row.value) <= orbit.vanishing_tolerance,
                f"{row.form} at R={row.radius:g} is {row.value:.3e}",
            )
        else:
            tally.add(abs(row.value - row.expected) / abs(row.expected))
    tally.add(result.antisymmetry_residual / max(1.0, max(orbit.radii) ** 4))

    if len(orbit.radii) > 1:
        omega = result.fits["omega"]
        quartic = result.fits["x^2 d(xy)"]
        tally.require(
            omega.slope is not None and abs(omega.slope - orbit.omega_slope) <= orbit.omega_spread,
            f"omega slope {omega.slope}",
        )
        tally.require(
            quartic.slope is not None
            and abs(quartic.slope - orbit.quartic_slope) <= orbit.quartic_spread,
            f"x^2 d(xy) slope {quartic.slope}",
        )
        tally.require(
            result.gap_holds(orbit.generated_slope_min, orbit.omega_slope, orbit.omega_spread),
            "a generated form scales slower than R^4",
        )
        tally.notes.append(f"omega slope {omega.slope:.4f}, x^2 d(xy) slope {quartic.slope:.4f}")
    else:
        tally.notes.append("single radius: slope fits skipped")

    cycles = [circle_cube(upstairs, r) for r in orbit.radii]
    scale = max(1.0, max(orbit.radii) ** 2)
    tally.add(
        form_invariance_residual(angular_form(upstairs), model.action, cycles, ctx.rule) / scale
    )
    contraction = star_contraction(upstairs, (0.0, 0.0), rng)
    tally.add(contraction_equivariance(contraction, model.action, rational[:64]))
    return tally.result()


def cech_suite(ctx: SuiteContext) -> SuiteResult:
    """Exact cohomology dimensions of every configured cover and the de Rham spot-check."""
    tally = _tally(ctx, SuiteId.CECH)
    rng = ctx.rng(SuiteId.CECH)
    resolver = ctx.resolver(rng)
    for ref in ctx.config.covers:
        cover = resolver.cover(ref)
        validate_cover(cover, rng)
        complex_ = build_complex(cover)
        dims = cohomology_dims(complex_)
        tally.add(float(coboundary_squared(complex_)))
        for q, dim in enumerate(dims):
            tally.rows.append(CohomologyRow(cover=cover.name, degree=q, dimension=dim).model_dump())
        expected: Optional[List[int]] = EXPECTED_DIMS.get(cover.name)
        if expected is not None:
            tally.add(float(sum(abs(a - b) for a, b in zip(dims, expected))))
            tally.require(len(dims) == len(expected), f"{cover.name} has dims {dims}")
        sampled = sampled_components(cover.space, rng, radius=cover.graph_radius)
        tally.require(dims[0] == sampled, f"{cover.name}: H^0={dims[0]}, sampled {sampled}")
        tally.require(
            dims[0] == nerve_components(complex_),
            f"{cover.name}: H^0 disagrees with the nerve's components",
        )
        tally.samples += 1

    for name in spotcheck_names():
        report = de_rham_spotcheck(name, rng, ctx.rule)
        for check in report.checks:
            tally.require(check.passed, f"{report.space} {check.kind} {check.label}: {check.value}")
        tally.notes.append(
            f"spot-check {report.space} with {report.cover}: dims {report.dims}, "
            f"consistent={report.consistent}"
        )
    return tally.result()


SUITES: Dict[SuiteId, Callable[[SuiteContext], SuiteResult]] = {
    SuiteId.D_SQUARED: d_squared_suite,
    SuiteId.BOUNDARY_SQUARED: boundary_squared_suite,
    SuiteId.STOKES: stokes_suite,
    SuiteId.CHAIN_RULE: chain_rule_suite,
    SuiteId.HOMOTOPY: homotopy_suite,
    SuiteId.POINCARE: poincare_suite,
    SuiteId.REPRESENTATION: representation_suite,
    SuiteId.FLOW: flow_suite,
    SuiteId.ORBIT: orbit_suite,
    SuiteId.CECH: cech_suite,
}


def run_suite(suite: SuiteId, ctx: SuiteContext) -> SuiteResult:
    """Run one suite; library errors other than configuration errors fail the suite."""
    logger.info(f"Running suite {suite.value}")
    try:
        result = SUITES[suite](ctx)
    except (ConfigError, ExpressionParseError):
        raise
    except DiffSpaceError as e:
        logger.warning(f"Suite {suite.value} aborted: {e}")
        result = SuiteResult(
            suite=suite,
            passed=False,
            max_residual=None,
            tolerance=ctx.tolerance(suite),
            notes=[f"{type(e).__name__}: {e}"],
        )
    status = "passed" if result.passed else "FAILED"
    logger.info(f"Suite {suite.value} {status} (max residual {result.max_residual})")
    return result
