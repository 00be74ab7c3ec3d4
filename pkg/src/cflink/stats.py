"""Descriptive statistics of a network: degree, clustering, path length, assortativity."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.sparse import csgraph

from .errors import ParameterError
from .graph import Graph

STATS_COLUMNS = ("N", "M", "avg_degree", "avg_clustering", "avg_shortest_path", "assortativity")


@dataclass(frozen=True)
class NetworkStats:
    n_nodes: int
    n_edges: int
    avg_degree: float
    avg_clustering: float
    avg_shortest_path: float
    assortativity: float
    assortativity_degenerate: bool = False

    def row(self) -> dict:
        """Values keyed by the column names of the stats report."""
        return dict(
            zip(
                STATS_COLUMNS,
                (
                    self.n_nodes,
                    self.n_edges,
                    self.avg_degree,
                    self.avg_clustering,
                    self.avg_shortest_path,
                    self.assortativity,
                ),
            )
        )

    def as_dict(self) -> dict:
        return asdict(self)


def triangles_per_node(g: Graph) -> np.ndarray:
    a = g.adjacency()
    return np.asarray((a @ a).multiply(a).sum(axis=1)).ravel() / 2.0


def local_clustering(g: Graph) -> np.ndarray:
    """``2 t_x / (k_x (k_x - 1))``, and 0 for nodes of degree below two."""
    k = g.degrees.astype(np.float64)
    pairs = k * (k - 1)
    out = np.zeros(g.node_count)
    np.divide(2.0 * triangles_per_node(g), pairs, out=out, where=pairs > 0)
    return out


def transitivity(g: Graph) -> float:
    """Global clustering: three times the triangles over the connected triples."""
    k = g.degrees.astype(np.float64)
    triples = float(np.sum(k * (k - 1) / 2.0))
    if triples == 0:
        return 0.0
    return float(np.sum(triangles_per_node(g))) / triples


def largest_component(g: Graph) -> np.ndarray:
    """Node ids of the largest connected component (lowest label on ties)."""
    _, comp = csgraph.connected_components(g.adjacency(), directed=False)
    sizes = np.bincount(comp)
    return np.flatnonzero(comp == np.argmax(sizes))


def average_shortest_path(g: Graph, chunk: int = 256) -> float:
    """Mean hop distance over all pairs of the largest component.

    Runs a breadth-first search from every component node, ``chunk`` sources
    at a time to bound memory.
    """
    nodes = largest_component(g)
    n = len(nodes)
    if n < 2:
        return float("nan")
    sub = g.adjacency()[nodes][:, nodes]
    total = 0.0
    for start in range(0, n, chunk):
        d = csgraph.shortest_path(
            sub, method="D", directed=False, unweighted=True,
            indices=np.arange(start, min(start + chunk, n)),
        )
        total += float(d.sum())
    return total / (n * (n - 1))


def degree_assortativity(g: Graph) -> tuple[float, bool]:
    """Newman's degree correlation over edge endpoints.

    Computed from integer sums so that a zero-variance degree sequence is
    detected exactly. Returns ``(r, degenerate)``; degenerate graphs report
    ``r = 0``.
    """
    m = g.edge_count
    if m == 0:
        return 0.0, True
    j = g.degrees[g.edges[:, 0]].astype(np.int64)
    k = g.degrees[g.edges[:, 1]].astype(np.int64)
    s_jk = int(np.dot(j, k))
    s_1 = int(np.sum(j + k))
    s_2 = int(np.dot(j, j) + np.dot(k, k))
    num = 4 * m * s_jk - s_1 * s_1
    den = 2 * m * s_2 - s_1 * s_1
    if den == 0:
        return 0.0, True
    return num / den, False


def compute_stats(g: Graph) -> NetworkStats:
    if g.node_count < 2:
        raise ParameterError("network statistics need at least two nodes")
    r, degenerate = degree_assortativity(g)
    return NetworkStats(
        n_nodes=g.node_count,
        n_edges=g.edge_count,
        avg_degree=2.0 * g.edge_count / g.node_count,
        avg_clustering=float(np.mean(local_clustering(g))),
        avg_shortest_path=average_shortest_path(g),
        assortativity=float(r),
        assortativity_degenerate=degenerate,
    )
