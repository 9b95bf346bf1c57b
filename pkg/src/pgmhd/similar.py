"""Co-occurrence similarity between same-level outcomes.

Two outcomes are related through the parents they share: the CO score is the
product, over the common parents, of each outcome's estimated child-given-
parent probability.  Computed in exact rational arithmetic (frequencies are
integers), so no underflow regardless of how many parents are shared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UndefinedDistributionError
from .graph import LeveledGraph, Node


@dataclass(frozen=True)
class SimilarityResult:
    outcome: str
    co: float
    common_parents: int


def edge_prob(g: LeveledGraph, w: Node, v: Node) -> float:
    """p-hat(w,v) = f(w,v) / Out(w); row-stochastic over w's children."""
    out = g.out_weight(w)
    if out == 0:
        raise UndefinedDistributionError(f"Out({w.label!r})=0: no distribution over children")
    return float(Fraction(g.freq(w, v), out))


def _co_fraction(g: LeveledGraph, x: Node, y: Node) -> tuple[Fraction, int]:
    common = g.parents(x).keys() & g.parents(y).keys()
    if not common:
        # The empty product would be 1; unrelated outcomes must score below
        # related ones, so the empty intersection is pinned to 0.
        return Fraction(0), 0
    score = Fraction(1)
    for w in common:
        out = g.out_weight(w)
        score *= Fraction(g.freq(w, x), out) * Fraction(g.freq(w, y), out)
    return score, len(common)


def co_score(g: LeveledGraph, x: Node, y: Node) -> float:
    """CO(x,y): product over shared parents of p-hat(w,x) * p-hat(w,y).

    Symmetric; 0 when no parent is shared.
    """
    if x.level != y.level:
        raise ValueError(f"levels differ: {x} vs {y}")
    if x.level < 1:
        raise ValueError("similarity is defined for non-root levels")
    score, _ = _co_fraction(g, x, y)
    return float(score)


def related_terms(
    g: LeveledGraph,
    x: Node,
    top_k: int = 10,
    min_co: float = 0.0,
) -> list[SimilarityResult]:
    """Same-level outcomes sharing at least one parent with x, ranked by CO.

    Candidates are enumerated through x's parents (never by scanning the
    whole level), so cost scales with x's neighborhood.
    """
    if x.level < 1:
        raise ValueError("related terms are defined for non-root levels")
    g._require(x)
    candidates: set[Node] = set()
    for parent in g.parents(x):
        candidates.update(g.children(parent))
    candidates.discard(x)
    floor = Fraction(min_co)
    scored = []
    for y in candidates:
        score, shared = _co_fraction(g, x, y)
        if score >= floor:
            scored.append((y.label, score, shared))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return [
        SimilarityResult(label, float(score), shared)
        for label, score, shared in scored[: max(top_k, 0)]
    ]
