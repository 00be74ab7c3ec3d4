"""Brute-force reference implementations used only by the tests.

These work on plain Python sets and loops over all pairs, sharing nothing
with the sparse-matrix code paths they check.
"""

from fractions import Fraction
from itertools import combinations

import numpy as np


def neighbor_sets(g):
    return [set(int(v) for v in g.neighbors(x)) for x in range(g.node_count)]


def cn_all_pairs(g):
    nb = neighbor_sets(g)
    out = {}
    for x, y in combinations(range(g.node_count), 2):
        c = len(nb[x] & nb[y])
        if c:
            out[(x, y)] = c
    return out


def ra_all_pairs(g):
    """RA summed as floats in ascending common-neighbour order."""
    nb = neighbor_sets(g)
    out = {}
    for x, y in combinations(range(g.node_count), 2):
        common = sorted(nb[x] & nb[y])
        if common:
            s = 0.0
            for z in common:
                s += 1.0 / len(nb[z])
            out[(x, y)] = s
    return out


def cra_all_pairs(g):
    """CRA in exact rational arithmetic, triple loop over x, y and z."""
    nb = neighbor_sets(g)
    out = {}
    for x, y in combinations(range(g.node_count), 2):
        common = nb[x] & nb[y]
        total = Fraction(0)
        for z in common:
            gamma = nb[z] & common
            total += Fraction(len(gamma), len(nb[z]))
        if total:
            out[(x, y)] = total
    return out


def cra_terms_all_pairs(g):
    """CRA in floats: one ``|gamma_z| / k_z`` division per common neighbour, ascending z."""
    nb = neighbor_sets(g)
    out = {}
    for x, y in combinations(range(g.node_count), 2):
        common = nb[x] & nb[y]
        total = 0.0
        for z in sorted(common):
            total += len(nb[z] & common) / len(nb[z])
        if total:
            out[(x, y)] = total
    return out


def cf_pairwise(g, s, self_included=False):
    """Double sum over z of A_xz S_zy + A_yz S_zx for every pair, ascending z.

    With ``self_included`` the adjacency is replaced by A + I.
    """
    nb = neighbor_sets(g)
    n = g.node_count

    def score(a, b):
        if a == b:
            return 0.0
        return s.get((min(a, b), max(a, b)), 0.0)

    out = {}
    for x, y in combinations(range(n), 2):
        zx = sorted(nb[x] | {x}) if self_included else sorted(nb[x])
        zy = sorted(nb[y] | {y}) if self_included else sorted(nb[y])
        first = 0.0
        for z in zx:
            first += score(z, y)
        second = 0.0
        for z in zy:
            second += score(z, x)
        total = first + second
        if total != 0.0:
            out[(x, y)] = total
    return out


def auc_pairwise(scores, split):
    """Compare every probe link with every nonobserved pair, one at a time."""
    n = split.node_count
    observed = set(split.train.edge_keys.tolist()) | set(split.probe_keys.tolist())
    dense = scores.to_dense()
    probe_scores = [dense[u, v] for u, v in split.probe]
    n1 = n2 = total = 0
    for u, v in combinations(range(n), 2):
        if u * n + v in observed:
            continue
        s_neg = dense[u, v]
        for s_pos in probe_scores:
            total += 1
            if s_pos > s_neg:
                n1 += 1
            elif s_pos == s_neg:
                n2 += 1
    return (n1 + 0.5 * n2) / total


def katz_series(a, beta, depth):
    out = np.zeros_like(a)
    power = np.eye(len(a))
    for p in range(1, depth + 1):
        power = power @ a
        out += beta**p * power
    return out


def lo_spectral(a, alpha):
    """LO through the eigenbasis of A: each eigenvalue l maps to alpha l^3 / (alpha l^2 + 1)."""
    lam, vec = np.linalg.eigh(a)
    return (vec * (alpha * lam**3 / (alpha * lam**2 + 1.0))) @ vec.T
