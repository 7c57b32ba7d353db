"""Test configuration and fixtures."""

import numpy as np
import pytest

from src.forms.quadrature import QuadratureRule
from src.space.fixtures import get_space


@pytest.fixture
def rng():
    """Seeded generator so sampled checks are reproducible."""
    return np.random.default_rng(1234)


@pytest.fixture
def plane():
    return get_space("plane")


@pytest.fixture
def r3():
    return get_space("r3")


@pytest.fixture
def circle():
    return get_space("circle")


@pytest.fixture
def rule():
    """Default quadrature: 12 nodes per axis, escalating to 48."""
    return QuadratureRule()


@pytest.fixture
def output_dir(tmp_path):
    """Scratch directory for exported files."""
    path = tmp_path / "results"
    path.mkdir()
    return path
