"""JSON exporter."""

import json
from typing import Any, TextIO

from .base import Exporter


class JsonExporter(Exporter):
    extension = "json"

    def dump(self, data: Any, handle: TextIO) -> None:
        json.dump(data, handle, indent=2, default=str)
        handle.write("\n")
