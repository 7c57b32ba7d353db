"""Tensor-product Gauss-Legendre quadrature over boxes."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..chains.cube import Box
from ..utils.logger import get_logger

logger = get_logger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=64)
def _reference_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(order)
    return nodes, weights


def tensor_rule(box: Box, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes (M, p) and weights (M,) of the order^p rule mapped onto the box."""
    if box.dim == 0:
        return np.zeros((1, 0)), np.ones(1)
    x, w = _reference_rule(order)
    axes, weights = [], []
    for lo, hi in box.bounds:
        half = 0.5 * (hi - lo)
        axes.append(lo + half * (x + 1.0))
        weights.append(half * w)
    grids = np.meshgrid(*axes, indexing="ij")
    points = np.column_stack([g.ravel() for g in grids])
    weight_grid = weights[0]
    for wk in weights[1:]:
        weight_grid = np.multiply.outer(weight_grid, wk)
    return points, np.ravel(weight_grid)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    order: int
    converged: bool


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre rule with doubling escalation.

    Orders n and 2n are compared; the 2n value is accepted once they agree to
    ``rtol * max(1, |value|)``, otherwise the order doubles up to ``max_order``.
    """

    order: int = 12
    max_order: int = 48
    rtol: float = 1e-10

    def fixed(self, integrand: Integrand, box: Box, order: int) -> float:
        points, weights = tensor_rule(box, order)
        return float(weights @ integrand(points))

    def integrate(self, integrand: Integrand, box: Box) -> QuadratureResult:
        if box.dim == 0:
            return QuadratureResult(float(integrand(np.zeros((1, 0)))[0]), 0, True)
        order = self.order
        previous = self.fixed(integrand, box, order)
        while 2 * order <= self.max_order:
            order *= 2
            current = self.fixed(integrand, box, order)
            if abs(current - previous) <= self.rtol * max(1.0, abs(current)):
                return QuadratureResult(current, order, True)
            logger.debug(f"Quadrature escalated to order {order} on {box}")
            previous = current
        logger.warning(f"Quadrature did not settle by order {order} on {box}")
        return QuadratureResult(previous, order, False)
