import logging

import numpy as np
import pytest

from cflink.baselines import (
    katz_scores,
    largest_eigenvalue,
    lo_scores,
    perturbed_reconstruction,
    spm_scores,
)
from cflink.errors import DivergenceError, ParameterError, ResourceError
from cflink.graph import Graph, random_graph

from oracles import katz_series, lo_spectral


def offdiag(m):
    m = np.array(m, dtype=float)
    np.fill_diagonal(m, 0.0)
    return m


class TestKatz:
    def test_single_edge_closed_form(self, k2):
        assert katz_scores(k2, 0.5).get(0, 1) == pytest.approx(2 / 3, abs=1e-14)

    def test_small_beta_is_first_order(self):
        g = random_graph(15, 0.3, 1)
        s = katz_scores(g, 1e-9).to_dense()
        np.testing.assert_allclose(s, 1e-9 * g.dense_adjacency(), rtol=1e-7, atol=1e-16)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_truncated_series(self, seed):
        g = random_graph(20, 0.3, seed)
        s = katz_scores(g, 0.05).to_dense()
        ref = offdiag(katz_series(g.dense_adjacency(), 0.05, 30))
        np.testing.assert_allclose(s, ref, atol=1e-8, rtol=0)

    def test_divergent_beta_names_bound(self, k4):
        # lambda_max(K4) = 3
        with pytest.raises(DivergenceError, match="0.333333"):
            katz_scores(k4, 0.4)

    def test_nonpositive_beta(self, k4):
        with pytest.raises(ParameterError):
            katz_scores(k4, 0.0)

    def test_default_beta(self):
        g = random_graph(30, 0.3, 2)
        lam = largest_eigenvalue(g)
        beta = min(0.01, 0.5 / lam)
        np.testing.assert_allclose(katz_scores(g).to_dense(), katz_scores(g, beta).to_dense())

    def test_largest_eigenvalue_sparse_path(self):
        g = random_graph(400, 0.03, 4)
        dense = np.linalg.eigvalsh(g.dense_adjacency())[-1]
        assert largest_eigenvalue(g) == pytest.approx(dense, rel=1e-9)


class TestLO:
    def test_empty_graph(self):
        assert lo_scores(Graph(5, np.empty((0, 2)))).stored_pairs == 0

    def test_single_edge(self, k2):
        assert lo_scores(k2, 1.0).get(0, 1) == pytest.approx(0.5, abs=1e-14)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_spectral_reference(self, seed):
        g = random_graph(20, 0.3, seed)
        s = lo_scores(g, 0.1).to_dense()
        np.testing.assert_allclose(s, offdiag(lo_spectral(g.dense_adjacency(), 0.1)), atol=1e-8, rtol=0)

    def test_symmetric_and_finite(self):
        g = random_graph(40, 0.2, 9)
        s = lo_scores(g, 5.0).to_dense()
        assert np.all(np.isfinite(s))
        assert np.array_equal(s, s.T)

    def test_bad_alpha(self, k4):
        with pytest.raises(ParameterError):
            lo_scores(k4, -1.0)


class TestSPM:
    def test_zero_perturbation_reconstructs(self):
        g = random_graph(15, 0.3, 3)
        a = g.dense_adjacency()
        out = perturbed_reconstruction(a, np.zeros_like(a))
        np.testing.assert_allclose(out, a, atol=1e-8, rtol=0)

    def test_full_eigenbasis_reconstructs_background(self):
        g = random_graph(15, 0.3, 4)
        a = g.dense_adjacency()
        lam, vec = np.linalg.eigh(a)
        np.testing.assert_allclose((vec * lam) @ vec.T, a, atol=1e-8)

    def test_first_order_shift(self):
        g = random_graph(15, 0.3, 5)
        a = g.dense_adjacency()
        u, v = g.edges[0]
        delta = np.zeros_like(a)
        delta[u, v] = delta[v, u] = 1.0
        rest = a - delta
        lam, vec = np.linalg.eigh(rest)
        expected = sum(
            (lam[d] + vec[:, d] @ delta @ vec[:, d]) * np.outer(vec[:, d], vec[:, d]) for d in range(15)
        )
        np.testing.assert_allclose(perturbed_reconstruction(rest, delta), expected, atol=1e-10)

    def test_symmetric(self):
        g = random_graph(30, 0.2, 6)
        a = g.dense_adjacency()
        delta = np.zeros_like(a)
        u, v = g.edges[:5].T
        delta[u, v] = delta[v, u] = 1.0
        out = perturbed_reconstruction(a - delta, delta)
        assert np.max(np.abs(out - out.T)) < 1e-10

    def test_deterministic_and_seed_sensitive(self):
        g = random_graph(30, 0.2, 7)
        a = spm_scores(g, 0.1, 4, seed=1).to_dense()
        b = spm_scores(g, 0.1, 4, seed=1).to_dense()
        c = spm_scores(g, 0.1, 4, seed=2).to_dense()
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_default_selection_count(self):
        import inspect

        assert inspect.signature(spm_scores).parameters["selections"].default == 30

    def test_parameter_checks(self, k4):
        with pytest.raises(ParameterError):
            spm_scores(k4, 0.0)
        with pytest.raises(ParameterError):
            spm_scores(k4, 0.5, selections=0)

    def test_degeneracy_logged(self, k4, caplog):
        with caplog.at_level(logging.DEBUG, logger="cflink.baselines"):
            # K4 has eigenvalue -1 three times
            a = k4.dense_adjacency()
            perturbed_reconstruction(a, np.zeros_like(a))
        assert "degenerate" in caplog.text


def test_dense_cap():
    g = random_graph(50, 0.1, 0)
    for f in (katz_scores, lo_scores, spm_scores):
        with pytest.raises(ResourceError):
            f(g, dense_cap=49)
