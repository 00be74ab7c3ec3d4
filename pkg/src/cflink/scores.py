"""Sparse symmetric pair scores with an implicit zero for unstored pairs."""

from __future__ import annotations

import numpy as np
from scipy import sparse

from .errors import NumericalError, ParameterError


class ScoreMatrix:
    """Similarity scores over unordered node pairs.

    Backed by a symmetric CSR matrix without diagonal entries. Any pair that
    is not stored has score 0. ``name`` records which index (and enhancement)
    produced the scores.

    Explicit zeros are dropped unless ``drop_zeros=False``; keeping them never
    changes what a pair scores, only what is stored.
    """

    def __init__(self, matrix, name: str = "", *, drop_zeros: bool = True, check_symmetric: bool = True):
        m = sparse.csr_matrix(matrix, dtype=np.float64, copy=True)
        if m.shape[0] != m.shape[1]:
            raise ParameterError(f"score matrix must be square, got {m.shape}")
        m = _drop_diagonal(m)
        m.sum_duplicates()
        if drop_zeros:
            m.eliminate_zeros()
        m.sort_indices()
        if not np.all(np.isfinite(m.data)):
            raise NumericalError(f"non-finite score in {name or 'score matrix'}")
        if check_symmetric and (abs(m - m.T) > 0).nnz:
            raise ParameterError("score matrix is not symmetric")
        self._m = m
        self.name = name

    @classmethod
    def from_pairs(cls, n: int, u, v, values, name: str = "", *, drop_zeros: bool = True):
        """Build from one value per unordered pair (each pair listed once)."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if np.any(u == v):
            raise ParameterError("self-pairs cannot be scored")
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        data = np.concatenate([values, values])
        m = sparse.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()
        return cls(m, name, drop_zeros=drop_zeros, check_symmetric=False)

    @classmethod
    def from_dense(cls, dense, name: str = ""):
        d = np.array(dense, dtype=np.float64)
        np.fill_diagonal(d, 0.0)
        return cls(sparse.csr_matrix(d), name, check_symmetric=False)

    @classmethod
    def zeros(cls, n: int, name: str = ""):
        return cls(sparse.csr_matrix((n, n)), name, check_symmetric=False)

    @property
    def node_count(self) -> int:
        return self._m.shape[0]

    @property
    def csr(self) -> sparse.csr_matrix:
        """The backing matrix. Treat as read-only."""
        return self._m

    @property
    def stored_pairs(self) -> int:
        return self._m.nnz // 2

    def get(self, u: int, v: int) -> float:
        if u == v:
            return 0.0
        return float(self._m[u, v])

    def values_at(self, u, v) -> np.ndarray:
        """Scores for arrays of node pairs (0 for unstored pairs and self-pairs)."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if u.size == 0:
            return np.zeros(0)
        return np.asarray(self._m[u, v], dtype=np.float64).ravel()

    def pairs(self):
        """Stored entries as ``(u, v, value)`` arrays with ``u < v``."""
        upper = sparse.triu(self._m, k=1, format="coo")
        order = np.lexsort((upper.col, upper.row))
        return (
            upper.row[order].astype(np.int64),
            upper.col[order].astype(np.int64),
            upper.data[order],
        )

    def to_dense(self) -> np.ndarray:
        return self._m.toarray()

    def to_dict(self) -> dict:
        u, v, s = self.pairs()
        return {(int(a), int(b)): float(x) for a, b, x in zip(u, v, s)}

    def renamed(self, name: str) -> "ScoreMatrix":
        out = object.__new__(ScoreMatrix)
        out._m = self._m
        out.name = name
        return out

    def _combine(self, other, sign):
        if not isinstance(other, ScoreMatrix):
            return NotImplemented
        if other.node_count != self.node_count:
            raise ParameterError("score matrices have different node counts")
        return ScoreMatrix(self._m + sign * other._m, self.name, check_symmetric=False)

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __mul__(self, a):
        if not np.isscalar(a):
            return NotImplemented
        return ScoreMatrix(self._m * float(a), self.name, check_symmetric=False)

    __rmul__ = __mul__

    def __repr__(self):
        return f"ScoreMatrix({self.name!r}, N={self.node_count}, pairs={self.stored_pairs})"


def _drop_diagonal(m: sparse.csr_matrix) -> sparse.csr_matrix:
    coo = m.tocoo()
    off = coo.row != coo.col
    if off.all():
        return m
    return sparse.csr_matrix((coo.data[off], (coo.row[off], coo.col[off])), shape=m.shape)
