"""Test the file exporters."""

import json

import yaml
from src.exporters import EXPORTERS, CsvExporter, JsonExporter, YamlExporter
from src.model.export import ExportFormat


class TestExporters:
    def test_registry(self):
        """Test that every export format has a writer."""
        assert EXPORTERS[ExportFormat.CSV] is CsvExporter
        assert set(EXPORTERS) == set(ExportFormat)

    def test_creates_directory(self, tmp_path):
        """Test that missing output directories are created."""
        target = tmp_path / "nested" / "out"

        JsonExporter(target)

        assert target.is_dir()

    def test_json(self, output_dir):
        """Test a JSON document."""
        path = JsonExporter(output_dir).export({"dims": [1, 0]}, "cohomology")

        assert path == output_dir / "cohomology.json"
        assert json.loads(path.read_text()) == {"dims": [1, 0]}

    def test_yaml_keeps_order(self, output_dir):
        """Test that YAML keys stay in insertion order."""
        path = YamlExporter(output_dir).export({"seed": 7, "passed": True}, "report")

        assert path.read_text() == "seed: 7\npassed: true\n"
        assert yaml.safe_load(path.read_text()) == {"seed": 7, "passed": True}


class TestCsvExporter:
    def test_rows(self, output_dir):
        """Test header order and full-precision floats."""
        rows = [
            {"t": 0.0, "x1": 1.0, "residual": 0.1},
            {"t": -0.5, "x1": 2.0, "residual": None},
        ]

        path = CsvExporter(output_dir).export(rows, "trajectory")

        assert path.read_text().splitlines() == [
            "t,x1,residual",
            "0.0,1.0,0.1",
            "-0.5,2.0,",
        ]

    def test_list_cells(self, output_dir):
        """Test that sequences become space-separated floats."""
        path = CsvExporter(output_dir).export([{"start": [1, 0.5]}], "starts")

        assert path.read_text().splitlines()[1] == "1.0 0.5"

    def test_extra_keys_ignored(self, output_dir):
        """Test that the first row fixes the columns."""
        path = CsvExporter(output_dir).export([{"a": 1}, {"a": 2, "b": 3}], "table")

        assert path.read_text().splitlines() == ["a", "1", "2"]

    def test_empty(self, output_dir):
        """Test that no rows give an empty file."""
        path = CsvExporter(output_dir).export([], "empty")

        assert path.read_text() == ""
