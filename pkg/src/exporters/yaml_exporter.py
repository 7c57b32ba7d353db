"""YAML exporter."""

from typing import Any, TextIO

import yaml

from .base import Exporter


class YamlExporter(Exporter):
    extension = "yaml"

    def dump(self, data: Any, handle: TextIO) -> None:
        yaml.dump(data, handle, default_flow_style=False, sort_keys=False)
