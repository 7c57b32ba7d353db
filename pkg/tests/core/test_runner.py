"""Test the suite runner and the files it writes."""

import json

import pytest
from src.core.reporter import load_report
from src.core.runner import SuiteRunner
from src.model.config import BatteryConfig, SuiteConfig, SuiteId

FAST_SUITES = [SuiteId.STOKES, SuiteId.BOUNDARY_SQUARED, SuiteId.D_SQUARED]


def fast_config(output_dir, **kwargs) -> SuiteConfig:
    battery = BatteryConfig(stokes_forms=3, chain_rule_draws=3, max_polynomial_degree=2)
    return SuiteConfig(output_dir=output_dir, battery=battery, suites=FAST_SUITES, **kwargs)


class TestSuiteRunner:
    def test_report_order(self, output_dir):
        """Test that results follow suite order, not configuration order."""
        report = SuiteRunner(fast_config(output_dir)).run()

        assert [r.suite for r in report.results] == [
            SuiteId.D_SQUARED,
            SuiteId.BOUNDARY_SQUARED,
            SuiteId.STOKES,
        ]
        assert report.passed
        assert report.seed == 7

    def test_workers_do_not_change_results(self, output_dir):
        """Test that a parallel run reproduces the sequential report."""
        sequential = SuiteRunner(fast_config(output_dir)).run()
        parallel = SuiteRunner(fast_config(output_dir, workers=3)).run()

        assert parallel == sequential

    def test_selected_suites(self, output_dir):
        """Test running a subset with duplicates."""
        report = SuiteRunner(fast_config(output_dir)).run([SuiteId.STOKES, SuiteId.STOKES])

        assert [r.suite for r in report.results] == [SuiteId.STOKES]

    def test_verify_saves_json(self, output_dir):
        """Test that verify writes a report that loads back unchanged."""
        runner = SuiteRunner(fast_config(output_dir))
        report = runner.verify()
        path = output_dir / "report.json"

        assert json.loads(path.read_text())["config_digest"] == report.config_digest
        assert load_report(path) == report

    def test_verify_saves_yaml(self, output_dir):
        """Test the yaml report format."""
        report = SuiteRunner(fast_config(output_dir, report_format="yaml")).verify()

        assert load_report(output_dir / "report.yaml") == report

    def test_failed_report(self, output_dir):
        """Test that one failing suite fails the report."""
        config = fast_config(output_dir).with_overrides(tol=0.0)

        report = SuiteRunner(config).run()

        assert not report.passed
        assert report.result(SuiteId.BOUNDARY_SQUARED).passed


@pytest.mark.slow
class TestCommandDrivers:
    def test_flow_writes_trajectories(self, output_dir):
        """Test one CSV per start point plus the flow report."""
        SuiteRunner(fast_config(output_dir)).flow()

        first = output_dir / "singular_variety_backward_0.csv"
        assert first.read_text().splitlines()[0] == "t,x1,x2,residual"
        assert (output_dir / "singular_variety_backward_1.csv").exists()
        assert (output_dir / "flow_report.json").exists()

    def test_cohomology_writes_dims(self, output_dir):
        """Test the per-cover dimension file."""
        config = fast_config(output_dir, covers=["circle_four_arcs", "plane_halves"])

        SuiteRunner(config).cohomology()

        dims = json.loads((output_dir / "cohomology.json").read_text())
        assert dims == {"circle_four_arcs": [1, 1], "plane_halves": [1, 0, 0]}

    def test_orbit_demo_writes_table(self, output_dir):
        """Test the scaling table CSV."""
        SuiteRunner(fast_config(output_dir)).orbit_demo()

        header = (output_dir / "orbit_scaling.csv").read_text().splitlines()[0]
        assert header == "form,radius,value,expected,slope,r_squared"
        assert (output_dir / "orbit_report.json").exists()
