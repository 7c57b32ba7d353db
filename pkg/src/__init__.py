"""Exterior calculus and flows on subcartesian differential spaces."""

__version__ = "0.1.0"
