"""Writers for suite outputs."""

from typing import Dict, Type

from ..model.export import ExportFormat
from .base import Exporter
from .csv_exporter import CsvExporter
from .json_exporter import JsonExporter
from .yaml_exporter import YamlExporter

EXPORTERS: Dict[ExportFormat, Type[Exporter]] = {
    ExportFormat.JSON: JsonExporter,
    ExportFormat.YAML: YamlExporter,
    ExportFormat.CSV: CsvExporter,
}

__all__ = ["Exporter", "CsvExporter", "JsonExporter", "YamlExporter", "EXPORTERS"]
