"""Global baselines built on dense linear algebra: Katz, LO and SPM.

Every routine here is O(N^3) and materialises N x N matrices, so graphs
larger than ``dense_cap`` nodes are refused up front.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .errors import DivergenceError, NumericalError, ParameterError, ResourceError
from .graph import Graph, probe_size
from .scores import ScoreMatrix

logger = logging.getLogger(__name__)

DEFAULT_DENSE_CAP = 10_000
DEFAULT_LO_ALPHA = 0.1
DEFAULT_SPM_FRACTION = 0.1
DEFAULT_SPM_SELECTIONS = 30
DEGENERACY_GAP = 1e-8


def _check_cap(g: Graph, dense_cap: int):
    if g.node_count > dense_cap:
        raise ResourceError(
            f"dense baselines are capped at N={dense_cap}, graph has N={g.node_count}"
        )


def largest_eigenvalue(g: Graph) -> float:
    """Spectral radius of the adjacency matrix (its largest eigenvalue)."""
    if g.edge_count == 0:
        return 0.0
    if g.node_count <= 200:
        return float(linalg.eigvalsh(g.dense_adjacency())[-1])
    try:
        vals = eigsh(g.adjacency(), k=1, which="LA", return_eigenvectors=False, tol=1e-10)
    except ArpackNoConvergence:
        return float(linalg.eigvalsh(g.dense_adjacency())[-1])
    return float(vals[0])


def default_katz_beta(g: Graph) -> float:
    lam = largest_eigenvalue(g)
    return 0.01 if lam <= 0 else min(0.01, 0.5 / lam)


def katz_scores(g: Graph, beta: float | None = None, *, dense_cap: int = DEFAULT_DENSE_CAP) -> ScoreMatrix:
    """Katz index ``(I - beta A)^-1 - I``.

    ``beta`` defaults to ``min(0.01, 0.5 / lambda_max)``. The series only
    converges for ``beta * lambda_max < 1``; anything else is rejected.
    """
    _check_cap(g, dense_cap)
    lam = largest_eigenvalue(g)
    if beta is None:
        beta = 0.01 if lam <= 0 else min(0.01, 0.5 / lam)
    if beta <= 0:
        raise ParameterError(f"katz beta must be positive, got {beta}")
    if beta * lam >= 1.0:
        raise DivergenceError(
            f"katz series diverges: beta={beta} must be below 1/lambda_max={1.0 / lam:.6g}"
        )
    n = g.node_count
    m = np.eye(n) - beta * g.dense_adjacency()
    try:
        s = linalg.solve(m, np.eye(n), assume_a="pos")
    except linalg.LinAlgError as exc:
        raise NumericalError(f"katz solve failed: {exc}") from exc
    s = 0.5 * (s + s.T)
    return ScoreMatrix.from_dense(s, "katz")


def lo_scores(g: Graph, alpha: float = DEFAULT_LO_ALPHA, *, dense_cap: int = DEFAULT_DENSE_CAP) -> ScoreMatrix:
    """Linear optimisation index ``alpha A (alpha A^T A + I)^-1 A^T A``.

    ``alpha A^2 + I`` is symmetric positive definite for every alpha > 0, so
    a Cholesky solve is used; round-off asymmetry is averaged away.
    """
    _check_cap(g, dense_cap)
    if alpha <= 0:
        raise ParameterError(f"LO alpha must be positive, got {alpha}")
    a = g.dense_adjacency()
    a2 = a.T @ a
    try:
        x = linalg.solve(alpha * a2 + np.eye(g.node_count), a2, assume_a="pos")
    except linalg.LinAlgError as exc:
        raise NumericalError(f"LO solve failed: {exc}") from exc
    s = alpha * (a @ x)
    return ScoreMatrix.from_dense(0.5 * (s + s.T), "lo")


def perturbed_reconstruction(a_rest: np.ndarray, a_delta: np.ndarray) -> np.ndarray:
    """First-order eigenvalue perturbation of ``a_rest`` by ``a_delta``.

    Eigenvectors of the background matrix are held fixed and each
    eigenvalue is shifted by ``x^T dA x / x^T x``.
    """
    try:
        lam, vec = linalg.eigh(a_rest)
    except linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    if lam.size > 1 and np.min(np.diff(lam)) < DEGENERACY_GAP:
        logger.debug("degenerate eigenvalues in SPM background matrix; using first-order shift as is")
    shift = np.sum(vec * (a_delta @ vec), axis=0) / np.sum(vec * vec, axis=0)
    return (vec * (lam + shift)) @ vec.T


def spm_scores(
    g: Graph,
    perturb_fraction: float = DEFAULT_SPM_FRACTION,
    selections: int = DEFAULT_SPM_SELECTIONS,
    seed: int = 0,
    *,
    dense_cap: int = DEFAULT_DENSE_CAP,
) -> ScoreMatrix:
    """Structural perturbation method averaged over random edge removals.

    Each selection removes ``round(perturb_fraction * M)`` edges of ``g`` as
    the perturbation, rebuilds the matrix from the remaining links' eigenbasis
    with first-order shifted eigenvalues, and the results are averaged.
    Selection ``i`` draws from ``SeedSequence([seed, i])`` so selections are
    independent of execution order.
    """
    _check_cap(g, dense_cap)
    if not 0.0 < perturb_fraction < 1.0:
        raise ParameterError(f"perturb_fraction must lie in (0, 1), got {perturb_fraction}")
    if selections < 1:
        raise ParameterError("selections must be at least 1")
    n, m = g.node_count, g.edge_count
    k = probe_size(m, perturb_fraction)
    a = g.dense_adjacency()
    acc = np.zeros((n, n))
    for i in range(selections):
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        chosen = rng.choice(m, size=k, replace=False) if k else np.empty(0, dtype=np.int64)
        u, v = g.edges[chosen, 0], g.edges[chosen, 1]
        delta = np.zeros((n, n))
        delta[u, v] = 1.0
        delta[v, u] = 1.0
        acc += perturbed_reconstruction(a - delta, delta)
    acc /= selections
    return ScoreMatrix.from_dense(0.5 * (acc + acc.T), "spm")


BASELINES = {
    "katz": katz_scores,
    "lo": lo_scores,
    "spm": spm_scores,
}
