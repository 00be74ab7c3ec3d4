"""Collaborative-filtering enhancement of an arbitrary similarity index.

CF replaces a pair's score by what the neighbours of each end think of the
other end::

    cf(S)  = A S + (A S)^T
    scf(S) = (A + I) S + [(A + I) S]^T

SCF keeps the pair's own similarity, so off the diagonal scf(S) equals
cf(S) + 2 S. The diagonal of S is zero by construction of ScoreMatrix;
it only ever enters through terms multiplied by A_xy, which vanish on
every nonobserved pair.
"""

from __future__ import annotations

from scipy import sparse

from .errors import ParameterError
from .graph import Graph
from .scores import ScoreMatrix


def _check(g: Graph, s: ScoreMatrix):
    if s.node_count != g.node_count:
        raise ParameterError(
            f"score matrix has {s.node_count} nodes but the graph has {g.node_count}"
        )


def _tag(s: ScoreMatrix, suffix: str) -> str:
    return f"{s.name}+{suffix}" if s.name else suffix


def cf_enhance(g: Graph, s: ScoreMatrix) -> ScoreMatrix:
    """CF-enhanced scores ``A S + (A S)^T`` on the graph's adjacency."""
    _check(g, s)
    prop = g.adjacency() @ s.csr
    return ScoreMatrix(prop + prop.T, _tag(s, "cf"), check_symmetric=False)


def scf_enhance(g: Graph, s: ScoreMatrix) -> ScoreMatrix:
    """Self-included CF: ``(A + I) S + [(A + I) S]^T``."""
    _check(g, s)
    a_i = g.adjacency() + sparse.identity(g.node_count, format="csr")
    prop = a_i @ s.csr
    return ScoreMatrix(prop + prop.T, _tag(s, "scf"), check_symmetric=False)


ENHANCEMENTS = {
    "cf": cf_enhance,
    "scf": scf_enhance,
}
