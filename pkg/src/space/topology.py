"""Connectivity of sampled point sets."""

import networkx as nx
import numpy as np

from ..utils.logger import get_logger
from .model import SpaceModel

logger = get_logger(__name__)


def sampling_graph(points: np.ndarray, radius: float) -> nx.Graph:
    """Graph on the sample with an edge between points closer than ``radius``."""
    graph = nx.Graph()
    graph.add_nodes_from(range(points.shape[0]))
    if points.shape[0] < 2:
        return graph
    deltas = points[:, None, :] - points[None, :, :]
    close = np.linalg.norm(deltas, axis=2) < radius
    rows, cols = np.nonzero(np.triu(close, k=1))
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def component_count(points: np.ndarray, radius: float) -> int:
    if points.shape[0] == 0:
        return 0
    return nx.number_connected_components(sampling_graph(points, radius))


def sampled_components(
    space: SpaceModel, rng: np.random.Generator, count: int = 400, radius: float = 0.35
) -> int:
    """Number of connected components of the sampling graph of S."""
    points = space.sample(count, rng)
    components = component_count(points, radius)
    logger.debug(f"{space.name}: {components} component(s) from {points.shape[0]} samples")
    return components
