"""Base exporter class."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, TextIO

from ..utils.logger import get_logger

logger = get_logger(__name__)


class Exporter(ABC):
    """Writes one structured object per file under ``output_dir``."""

    extension: str = ""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    @abstractmethod
    def dump(self, data: Any, handle: TextIO) -> None:
        """Serialize data into an open text handle."""

    def path_for(self, name: str) -> Path:
        return self.output_dir / f"{name}.{self.extension}"

    def export(self, data: Any, name: str) -> Path:
        path = self.path_for(name)
        with open(path, "w", newline="") as f:
            self.dump(data, f)
        logger.info(f"Exported {name} to {path}")
        return path
