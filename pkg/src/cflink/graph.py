"""Undirected simple graphs, edge-list parsing and train/probe splitting."""

from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from os import PathLike
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .errors import EdgeListError, ParameterError

logger = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%")


def pair_keys(u, v, n: int) -> np.ndarray:
    """Encode unordered pairs as ``min * n + max`` int64 keys."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return np.minimum(u, v) * n + np.maximum(u, v)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Immutable undirected simple graph over dense node ids ``0..N-1``.

    Neighbor lists are stored CSR-style and sorted ascending. Edges are kept
    once each as ``(u, v)`` rows with ``u < v`` in lexicographic order.
    """

    def __init__(self, node_count: int, edges, labels: Sequence[str] | None = None):
        n = int(node_count)
        if n < 0:
            raise ParameterError("node_count must be non-negative")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ParameterError("edge endpoint outside 0..N-1")
        if np.any(e[:, 0] == e[:, 1]):
            raise ParameterError("self-loops are not allowed")
        e = np.sort(e, axis=1)
        keys = e[:, 0] * n + e[:, 1]
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        if keys.size > 1 and np.any(keys[1:] == keys[:-1]):
            raise ParameterError("duplicate edges are not allowed")
        e = e[order]

        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ParameterError("labels must have one entry per node")

        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        adj = sparse.csr_matrix(
            (np.ones(rows.size, dtype=np.float64), (rows, cols)), shape=(n, n)
        )
        adj.sort_indices()

        self._n = n
        self._edges = _readonly(e)
        self._keys = _readonly(keys)
        self._labels = tuple(str(x) for x in labels)
        self._indptr = _readonly(adj.indptr.astype(np.int64))
        self._indices = _readonly(adj.indices.astype(np.int64))
        self._degrees = _readonly(np.diff(self._indptr))
        self._adj = adj

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def edges(self) -> np.ndarray:
        """``(M, 2)`` array of edges with ``u < v``, lexicographically sorted."""
        return self._edges

    @property
    def edge_keys(self) -> np.ndarray:
        """Sorted int64 keys of the edges, see :func:`pair_keys`."""
        return self._keys

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def degree(self, x: int) -> int:
        self._check_node(x)
        return int(self._degrees[x])

    def neighbors(self, x: int) -> np.ndarray:
        self._check_node(x)
        return self._indices[self._indptr[x] : self._indptr[x + 1]]

    def has_edge(self, x: int, y: int) -> bool:
        if x == y:
            return False
        return int(pair_keys(x, y, self._n)) in self._key_set

    @cached_property
    def _key_set(self) -> frozenset:
        return frozenset(self._keys.tolist())

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self._labels)}

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise ParameterError(f"unknown node label {label!r}") from None

    def adjacency(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency matrix (a fresh copy, safe to mutate)."""
        return self._adj.copy()

    def dense_adjacency(self) -> np.ndarray:
        return self._adj.toarray()

    def without_edges(self, drop_keys) -> "Graph":
        """Same node set and labels, with the given edge keys removed."""
        keep = ~np.isin(self._keys, np.asarray(drop_keys, dtype=np.int64))
        return Graph(self._n, self._edges[keep], self._labels)

    def _check_node(self, x):
        if not (0 <= int(x) < self._n):
            raise ParameterError(f"unknown node id {x}")

    def __repr__(self):
        return f"Graph(N={self._n}, M={self.edge_count})"


@dataclass(frozen=True)
class ParseReport:
    lines: int
    duplicates: int
    self_loops: int


def _iter_lines(source) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_edge_list_report(source) -> tuple[Graph, ParseReport]:
    """Parse an edge list and also return counts of what was dropped.

    ``source`` is a string or any iterable of text lines. Lines starting with
    ``#`` or ``%`` are comments; tokens beyond the first two are ignored.
    Labels get dense ids in order of first appearance.
    """
    ids: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    edges = []
    n_lines = dups = loops = 0
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        toks = line.split()
        if len(toks) < 2:
            raise EdgeListError("expected at least two tokens", line=lineno)
        n_lines += 1
        a = ids.setdefault(toks[0], len(ids))
        b = ids.setdefault(toks[1], len(ids))
        if a == b:
            loops += 1
            continue
        pair = (a, b) if a < b else (b, a)
        if pair in seen:
            dups += 1
            continue
        seen.add(pair)
        edges.append(pair)
    if not edges:
        raise EdgeListError("no edges")
    labels = sorted(ids, key=ids.__getitem__)
    return Graph(len(labels), edges, labels), ParseReport(n_lines, dups, loops)


def parse_edge_list(source) -> Graph:
    g, rep = parse_edge_list_report(source)
    if rep.duplicates or rep.self_loops:
        logger.warning(
            "dropped %d duplicate edge(s) and %d self-loop(s)",
            rep.duplicates,
            rep.self_loops,
        )
    return g


def read_edge_list(path: str | PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh)


@dataclass(frozen=True)
class TrainProbeSplit:
    """Training graph plus the held-out probe edges of one observed network."""

    train: Graph
    probe: np.ndarray  # (k, 2), u < v
    probe_fraction: float
    seed: int

    @property
    def node_count(self) -> int:
        return self.train.node_count

    @cached_property
    def probe_keys(self) -> np.ndarray:
        return _readonly(np.sort(pair_keys(self.probe[:, 0], self.probe[:, 1], self.node_count)))

    @cached_property
    def observed_keys(self) -> np.ndarray:
        """Sorted keys of the full observed edge set (training plus probe)."""
        return _readonly(np.union1d(self.train.edge_keys, self.probe_keys))

    @property
    def nonobserved_count(self) -> int:
        n = self.node_count
        return n * (n - 1) // 2 - len(self.observed_keys)


def probe_size(edge_count: int, probe_fraction: float) -> int:
    """Round-half-up of ``probe_fraction * edge_count``."""
    # the inner round() absorbs float noise such as 0.1 * 45 = 4.500000000000001
    return int(math.floor(round(probe_fraction * edge_count, 9) + 0.5))


def split_train_probe(g: Graph, probe_fraction: float, seed: int) -> TrainProbeSplit:
    """Randomly move ``round(probe_fraction * M)`` edges into a probe set.

    No connectivity constraint is imposed, and nodes isolated by the split
    stay in the training graph so the universe of pairs is unchanged.
    """
    if not 0.0 < probe_fraction < 1.0:
        raise ParameterError(f"probe_fraction must lie in (0, 1), got {probe_fraction}")
    k = probe_size(g.edge_count, probe_fraction)
    if k < 1:
        raise ParameterError(
            f"probe_fraction {probe_fraction} leaves an empty probe set for M={g.edge_count}"
        )
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(g.edge_count, size=k, replace=False))
    probe = g.edges[chosen].copy()
    train = g.without_edges(g.edge_keys[chosen])
    return TrainProbeSplit(train, _readonly(probe), float(probe_fraction), int(seed))


def common_neighbors(g: Graph, x: int, y: int) -> frozenset:
    """Intersect the sorted neighbor lists of ``x`` and ``y`` by merging."""
    a = g.neighbors(x)
    b = g.neighbors(y)
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            i += 1
        elif a[i] > b[j]:
            j += 1
        else:
            out.append(int(a[i]))
            i += 1
            j += 1
    return frozenset(out)


def random_graph(n: int, p: float, seed=None) -> Graph:
    """Erdős–Rényi G(n, p); each of the n(n-1)/2 pairs is linked independently."""
    rng = np.random.default_rng(seed)
    total = n * (n - 1) // 2
    m = int(rng.binomial(total, p)) if total else 0
    if m == 0:
        return Graph(n, np.empty((0, 2), dtype=np.int64))
    if total <= 4_000_000:
        chosen = rng.choice(total, size=m, replace=False)
        iu, ju = np.triu_indices(n, k=1)
        return Graph(n, np.column_stack([iu[chosen], ju[chosen]]))
    keys = np.empty(0, dtype=np.int64)
    while keys.size < m:
        u = rng.integers(0, n, size=2 * m)
        v = rng.integers(0, n, size=2 * m)
        ok = u != v
        keys = np.union1d(keys, pair_keys(u[ok], v[ok], n))
    keys = rng.choice(keys, size=m, replace=False)
    return Graph(n, np.column_stack([keys // n, keys % n]))
