"""Keyword-sense ambiguity detection.

A term's association with each of its parents is scored with normalized PMI;
parents that clear the threshold are clustered into sense groups by the
similarity of their child distributions.  A term with two or more sense
groups is ambiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoAssociationError
from .graph import LeveledGraph, Node
from .similar import SimilarityResult

DEFAULT_TAU = 0.1
DEFAULT_SIM_THRESHOLD = 0.2


@dataclass(frozen=True)
class Sense:
    parents: tuple[str, ...]
    related: tuple[str, ...]


@dataclass
class AmbiguityReport:
    term: str
    parent_scores: list[tuple[str, float]]
    senses: list[Sense]

    @property
    def ambiguous(self) -> bool:
        return len(self.senses) >= 2


def _transition_total(g: LeveledGraph, child_level: int) -> int:
    total = 0
    for label in g.level_labels(child_level - 1):
        total += g.out_weight(Node(label, child_level - 1))
    return total


def npmi(g: LeveledGraph, w: Node, v: Node) -> float:
    """Normalized PMI of parent w and child v in [-1, 1].

    Probabilities are all normalized by the total arc frequency of the
    transition, so p(w,v), p(w), p(v) are consistent marginals of one joint.
    Perfect co-occurrence (p(w,v)=1) is 1 by continuity.
    """
    f = g.freq(w, v)
    if f == 0:
        raise NoAssociationError(f"{w.label!r} and {v.label!r} never co-occur")
    total = _transition_total(g, v.level)
    p_wv = f / total
    if p_wv == 1.0:
        return 1.0
    pmi = math.log(f * total / (g.out_weight(w) * g.in_weight(v)))
    return pmi / -math.log(p_wv)


def _cosine(a: dict[Node, int], b: dict[Node, int]) -> float:
    dot = sum(freq * b[child] for child, freq in a.items() if child in b)
    if dot == 0:
        return 0.0
    norm_a = math.sqrt(sum(f * f for f in a.values()))
    norm_b = math.sqrt(sum(f * f for f in b.values()))
    # Edge-probability vectors are the frequency vectors scaled by 1/Out, and
    # cosine is scale-invariant, so integer frequencies suffice.
    return dot / (norm_a * norm_b)


def _sense_groups(
    g: LeveledGraph, parents: list[Node], sim_threshold: float
) -> list[list[Node]]:
    """Single-link clusters: parents join a group if any member's child
    distribution has cosine >= sim_threshold with theirs."""
    group_of = list(range(len(parents)))

    def find(i: int) -> int:
        while group_of[i] != i:
            group_of[i] = group_of[group_of[i]]
            i = group_of[i]
        return i

    dists = [g.children(p) for p in parents]
    for i in range(len(parents)):
        for j in range(i + 1, len(parents)):
            if _cosine(dists[i], dists[j]) >= sim_threshold:
                group_of[find(i)] = find(j)
    groups: dict[int, list[Node]] = {}
    for i, parent in enumerate(parents):
        groups.setdefault(find(i), []).append(parent)
    return sorted(
        (sorted(members, key=lambda n: n.label) for members in groups.values()),
        key=lambda members: members[0].label,
    )


def _group_related(
    g: LeveledGraph, term: Node, group: list[Node], top_k: int
) -> list[SimilarityResult]:
    """Top co-occurrence neighbours of term, scored only through the group's
    parents (the CO product restricted to this sense)."""
    from fractions import Fraction

    candidates: set[Node] = set()
    for parent in group:
        candidates.update(g.children(parent))
    candidates.discard(term)
    scored = []
    for cand in candidates:
        common = [p for p in group if g.freq(p, cand) > 0 and g.freq(p, term) > 0]
        if not common:
            continue
        score = Fraction(1)
        for w in common:
            out = g.out_weight(w)
            score *= Fraction(g.freq(w, term), out) * Fraction(g.freq(w, cand), out)
        scored.append((cand.label, score, len(common)))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return [
        SimilarityResult(label, float(score), shared)
        for label, score, shared in scored[: max(top_k, 0)]
    ]


def ambiguity_report(
    g: LeveledGraph,
    term: Node,
    tau: float = DEFAULT_TAU,
    sim_threshold: float = DEFAULT_SIM_THRESHOLD,
    top_related: int = 5,
) -> AmbiguityReport:
    """Score term-parent association with NPMI, group qualifying parents into
    senses, and annotate each sense with its top related terms."""
    g._require(term)
    if term.level < 1:
        raise ValueError("ambiguity is defined for non-root levels")
    parent_scores = [
        (parent.label, npmi(g, parent, term)) for parent in g.parents(term)
    ]
    parent_scores.sort(key=lambda item: (-item[1], item[0]))
    qualifying = [
        g.node(label, term.level - 1)
        for label, score in parent_scores
        if score >= tau
    ]
    senses = [
        Sense(
            parents=tuple(p.label for p in group),
            related=tuple(
                r.outcome for r in _group_related(g, term, group, top_related)
            ),
        )
        for group in _sense_groups(g, qualifying, sim_threshold)
    ]
    return AmbiguityReport(term=term.label, parent_scores=parent_scores, senses=senses)
