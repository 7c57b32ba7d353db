"""CLI interface for diffspace."""

from .main import app

__all__ = ["app"]
