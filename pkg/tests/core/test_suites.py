"""Test the verification suites on small batteries."""

import pytest
from src.core.suites import SUITES, SuiteContext, run_suite
from src.model.config import (
    BatteryConfig,
    OrbitConfig,
    SuiteConfig,
    SuiteId,
    ToleranceConfig,
)
from src.utils.errors import ConfigError, EvaluationError


def small_config(**kwargs) -> SuiteConfig:
    battery = BatteryConfig(
        stokes_forms=4,
        chain_rule_draws=4,
        poincare_forms=3,
        poincare_cubes=2,
        max_polynomial_degree=2,
    )
    return SuiteConfig(battery=battery, **kwargs)


class TestSuiteContext:
    def test_from_config(self):
        """Test that quadrature and integrator settings are carried over."""
        ctx = SuiteContext.from_config(small_config())

        assert ctx.rule.order == 12
        assert ctx.rule.max_order == 48
        assert ctx.fiber_order == 16
        assert ctx.settings.rtol == 1e-9

    def test_per_suite_streams(self):
        """Test that each suite draws from its own reproducible stream."""
        ctx = SuiteContext.from_config(small_config())

        a = ctx.rng(SuiteId.STOKES).uniform(size=3)
        b = ctx.rng(SuiteId.STOKES).uniform(size=3)
        c = ctx.rng(SuiteId.CHAIN_RULE).uniform(size=3)

        assert a.tolist() == b.tolist()
        assert a.tolist() != c.tolist()

    def test_every_suite_registered(self):
        """Test the dispatch table."""
        assert set(SUITES) == set(SuiteId)


class TestIdentitySuites:
    def setup_method(self):
        self.ctx = SuiteContext.from_config(small_config())

    @pytest.mark.parametrize(
        "suite",
        [
            SuiteId.D_SQUARED,
            SuiteId.BOUNDARY_SQUARED,
            SuiteId.STOKES,
            SuiteId.CHAIN_RULE,
            SuiteId.REPRESENTATION,
        ],
    )
    def test_passes(self, suite):
        """Test that the identity holds within its tolerance."""
        result = run_suite(suite, self.ctx)

        assert result.suite == suite
        assert result.passed, result.notes
        assert result.max_residual <= result.tolerance
        assert result.samples > 0

    def test_boundary_squared_is_exact(self):
        """Test that dd leaves no terms at all."""
        result = run_suite(SuiteId.BOUNDARY_SQUARED, self.ctx)

        assert result.max_residual == 0.0

    def test_reproducible(self):
        """Test that equal configurations give equal results."""
        again = SuiteContext.from_config(small_config())

        assert run_suite(SuiteId.STOKES, self.ctx) == run_suite(SuiteId.STOKES, again)

    def test_zero_tolerance_fails(self):
        """Test that pass means residual at most the tolerance."""
        ctx = SuiteContext.from_config(small_config().with_overrides(tol=0.0))

        assert not run_suite(SuiteId.STOKES, ctx).passed
        assert run_suite(SuiteId.BOUNDARY_SQUARED, ctx).passed


@pytest.mark.slow
class TestStructuralSuites:
    def setup_method(self):
        self.ctx = SuiteContext.from_config(small_config(orbit=OrbitConfig(samples=200)))

    def test_homotopy(self):
        """Test the prism identity on chains and cochains."""
        result = run_suite(SuiteId.HOMOTOPY, self.ctx)

        assert result.passed, result.notes

    def test_poincare(self):
        """Test antiderivatives on the plane and the cone."""
        result = run_suite(SuiteId.POINCARE, self.ctx)

        assert result.passed, result.notes

    def test_flow(self):
        """Test the flow experiments, the probe and the Z2 checks."""
        result = run_suite(SuiteId.FLOW, self.ctx)

        assert result.passed, result.notes
        assert result.rows[0]["experiment"] == "singular_variety_backward"
        assert any(note.startswith("probe ") for note in result.notes)
        assert any("all open=True" in note for note in result.notes)

    def test_flow_checks_expected_collapse(self):
        """Test that a collapse the experiment does not expect fails the suite."""
        flow = {
            "name": "unflagged_origin",
            "space": "singular_variety",
            "field": ["x1**3", "2*x2"],
            "tangency": ["x2**2 - bump(x1)*x2"],
            "point_values": [{"point": [0, 0], "vector": [1, 0]}],
            "start_points": [[0, 0]],
            "t_span": [-1, 0],
        }
        ctx = SuiteContext.from_config(small_config(flows=[flow]))

        result = run_suite(SuiteId.FLOW, ctx)

        assert not result.passed
        assert any("collapsed=True, expected False" in note for note in result.notes)

    def test_flow_membership_limit(self):
        """Test that curves drifting off the space by more than the limit fail the suite."""
        flow = {
            "name": "circle_chord",
            "space": "circle",
            "field": ["1", "0"],
            "start_points": [[0, 1]],
        }
        tolerances = ToleranceConfig(flow_membership=1e-12)
        ctx = SuiteContext.from_config(small_config(flows=[flow], tolerances=tolerances))

        result = run_suite(SuiteId.FLOW, ctx)

        assert not result.passed
        assert result.max_residual <= result.tolerance
        assert any("membership residual" in note for note in result.notes)

    def test_orbit(self):
        """Test the scaling experiment rows and slopes."""
        result = run_suite(SuiteId.ORBIT, self.ctx)

        assert result.passed, result.notes
        assert {row["form"] for row in result.rows} >= {"omega", "x^2 d(xy)"}

    def test_cech(self):
        """Test cohomology dimensions of the bundled covers."""
        result = run_suite(SuiteId.CECH, self.ctx)
        circle = [r["dimension"] for r in result.rows if r["cover"] == "circle_three_arcs"]

        assert result.passed, result.notes
        assert circle == [1, 1]


class TestRunSuite:
    def test_library_error_fails_the_suite(self, mocker):
        """Test that an evaluation error aborts only its own suite."""

        def broken(ctx):
            raise EvaluationError("sqrt(x1)", "negative argument")

        mocker.patch.dict(SUITES, {SuiteId.STOKES: broken})

        result = run_suite(SuiteId.STOKES, SuiteContext.from_config(small_config()))

        assert not result.passed
        assert result.max_residual is None
        assert result.notes[0].startswith("EvaluationError")

    def test_config_error_propagates(self, mocker):
        """Test that configuration errors abort the run."""

        def misconfigured(ctx):
            raise ConfigError("bad cover")

        mocker.patch.dict(SUITES, {SuiteId.CECH: misconfigured})

        with pytest.raises(ConfigError, match="bad cover"):
            run_suite(SuiteId.CECH, SuiteContext.from_config(small_config()))
