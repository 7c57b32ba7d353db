"""Test report models."""

import pytest
from pydantic import ValidationError
from src.model.config import SuiteId
from src.model.report import CohomologyRow, OrbitRow, ReportFormat, SuiteReport, SuiteResult


class TestSuiteReport:
    def setup_method(self):
        self.report = SuiteReport(
            seed=7,
            config_digest="abc",
            results=[
                SuiteResult(suite=SuiteId.STOKES, passed=True, max_residual=1e-12, tolerance=1e-8),
                SuiteResult(
                    suite=SuiteId.POINCARE, passed=False, max_residual=None, tolerance=1e-7
                ),
            ],
            passed=False,
        )

    def test_result_lookup(self):
        """Test finding a suite result."""
        assert self.report.result(SuiteId.STOKES).max_residual == 1e-12
        assert self.report.result(SuiteId.CECH) is None

    def test_json_round_trip(self):
        """Test that a dumped report validates back unchanged."""
        data = self.report.model_dump(mode="json")

        assert data["results"][1]["suite"] == "poincare"
        assert data["results"][1]["max_residual"] is None
        assert SuiteReport.model_validate(data) == self.report

    def test_unknown_suite(self):
        """Test that suite ids are validated."""
        with pytest.raises(ValidationError):
            SuiteResult(suite="curvature", passed=True, max_residual=0.0, tolerance=0.0)

    def test_result_defaults(self):
        """Test the optional fields."""
        result = self.report.results[0]

        assert result.samples == 0
        assert result.notes == []
        assert result.rows == []


class TestRows:
    def test_orbit_row(self):
        """Test optional fit columns."""
        row = OrbitRow(form="omega", radius=2.0, value=25.1)

        assert row.slope is None
        assert row.model_dump()["expected"] is None

    def test_cohomology_row(self):
        """Test a dimension row."""
        assert CohomologyRow(cover="c", degree=1, dimension=1).model_dump() == {
            "cover": "c",
            "degree": 1,
            "dimension": 1,
        }

    def test_formats(self):
        """Test the format names."""
        assert [f.value for f in ReportFormat] == ["text", "json", "yaml"]
