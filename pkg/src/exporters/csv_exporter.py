"""CSV exporter for tables of records."""

import csv
from typing import Any, Dict, List, Sequence, TextIO

from .base import Exporter


class CsvExporter(Exporter):
    """Rows are mappings; the header follows the key order of the first row."""

    extension = "csv"

    def dump(self, data: Any, handle: TextIO) -> None:
        rows: Sequence[Dict[str, Any]] = list(data)
        if not rows:
            return
        fieldnames: List[str] = list(rows[0])
        writer = csv.DictWriter(handle, fieldnames=fieldnames, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(row.get(key)) for key in fieldnames})


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(repr(float(v)) for v in value)
    return "" if value is None else value
