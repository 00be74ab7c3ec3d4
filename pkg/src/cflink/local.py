"""Local similarity indices: common neighbours, resource allocation and CRA.

All three are supported on pairs at distance two. Products are formed with
sparse matrices, so the work is proportional to the number of length-two
paths (the ``N <k>^2`` class), never to all ``N^2`` pairs.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

from .graph import Graph, pair_keys
from .scores import ScoreMatrix


def _inverse_degrees(g: Graph) -> np.ndarray:
    k = g.degrees.astype(np.float64)
    out = np.zeros_like(k)
    np.divide(1.0, k, out=out, where=k > 0)
    return out


def score_cn(g: Graph) -> ScoreMatrix:
    """Number of common neighbours, ``(A A)_xy`` off the diagonal."""
    a = g.adjacency()
    return ScoreMatrix(a @ a, "cn", check_symmetric=False)


def score_ra(g: Graph) -> ScoreMatrix:
    """Sum of ``1 / k_z`` over common neighbours ``z``."""
    a = g.adjacency()
    weighted = sparse.csr_matrix(a.multiply(_inverse_degrees(g)[None, :]))
    # sorted rows make every pair accumulate its terms in ascending z
    weighted.sort_indices()
    return ScoreMatrix(weighted @ a, "ra", check_symmetric=False)


def triangle_incidence(g: Graph) -> sparse.csr_matrix:
    """``N x M`` matrix with entry 1 where node x is adjacent to both ends of edge e."""
    a = g.adjacency().tocsc()
    z, w = g.edges[:, 0], g.edges[:, 1]
    return a[:, z].multiply(a[:, w]).tocsr()


def _pairs_within_segments(indptr: np.ndarray):
    """Positions ``(i, j)``, ``i < j``, of every pair inside each CSR/CSC segment."""
    lengths = np.diff(indptr)
    seg = np.repeat(np.arange(lengths.size), lengths)
    pos = np.arange(indptr[-1])
    after = indptr[seg + 1] - pos - 1
    first = np.repeat(pos, after)
    offset = np.arange(first.size) - np.repeat(np.cumsum(after) - after, after)
    return first, first + 1 + offset, np.repeat(seg, after)


def _ordered_segment_sums(values: np.ndarray, starts: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Left-to-right sum of each segment, so the rounding order is fixed."""
    acc = values[starts].copy()
    for r in range(1, int(lengths.max(initial=1))):
        live = lengths > r
        acc[live] += values[starts[live] + r]
    return acc


def score_cra(g: Graph) -> ScoreMatrix:
    """Cannistraci resource allocation.

    Each common neighbour ``z`` of (x, y) contributes ``|gamma_z| / k_z``, where
    ``gamma_z`` are z's neighbours inside the common neighbourhood.

    The counts ``|gamma_z|`` come from links: every edge (z, w) whose ends are
    both common neighbours of x and y adds one to the counts of z and of w,
    and the pairs (x, y) served by edge e are the rows of column e of the
    triangle incidence matrix. Counts are integers, so each term is a single
    correctly rounded division, and terms are summed in ascending z. Equal
    rational scores therefore come out as equal floats.
    """
    n = g.node_count
    b = triangle_incidence(g).tocsc()
    b.sort_indices()
    i, j, e = _pairs_within_segments(b.indptr)
    if i.size == 0:
        return ScoreMatrix.zeros(n, "cra")
    x, y = b.indices[i].astype(np.int64), b.indices[j].astype(np.int64)
    pair = pair_keys(x, y, n)
    ends = g.edges[e]
    keys = np.concatenate([pair * n + ends[:, 0], pair * n + ends[:, 1]])
    keys, counts = np.unique(keys, return_counts=True)
    pair, z = np.divmod(keys, n)
    terms = counts / g.degrees[z].astype(np.float64)
    pairs, starts, lengths = np.unique(pair, return_index=True, return_counts=True)
    total = _ordered_segment_sums(terms, starts, lengths)
    u, v = np.divmod(pairs, n)
    return ScoreMatrix.from_pairs(n, u, v, total, "cra")


LOCAL_INDICES = {
    "cn": score_cn,
    "ra": score_ra,
    "cra": score_cra,
}
