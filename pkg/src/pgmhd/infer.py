"""Lazy probabilistic classification over a trained graph.

All scores are computed at query time from raw arc frequencies; nothing is
precomputed or cached.  Internal arithmetic uses exact rationals so results
are the correctly rounded value of the underlying frequency ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UndefinedDistributionError
from .graph import LeveledGraph, Node


@dataclass(frozen=True)
class SmoothingParams:
    """m-estimate smoothing: (f + m_est * p_prior) / (n + m_est)."""

    m_est: float = 1.0
    p_prior: float = 0.1

    def __post_init__(self):
        if self.m_est < 0:
            raise ValueError(f"m_est must be >= 0, got {self.m_est}")
        if not 0 < self.p_prior < 1:
            raise ValueError(f"p_prior must be in (0,1), got {self.p_prior}")


UNSMOOTHED = SmoothingParams(m_est=0.0, p_prior=0.5)


@dataclass(frozen=True)
class ClassScore:
    label: str
    score: float
    rank: int


@dataclass
class Classification:
    scores: list[ClassScore]
    diagnostics: list[str] = field(default_factory=list)


def classification_score(g: LeveledGraph, w: Node, v: Node) -> float:
    """Cl(w|v) = f(w,v) / In(v), the estimate of P(parent=w | child=v)."""
    in_v = g.in_weight(v)
    if in_v == 0:
        raise UndefinedDistributionError(f"In({v.label!r})=0: no distribution over parents")
    return float(Fraction(g.freq(w, v), in_v))


def m_estimate_score(
    g: LeveledGraph, w: Node, v: Node, smoothing: SmoothingParams
) -> float:
    """Smoothed Cl(w|v): (f + m*p) / (In(v) + m); equals Cl at m=0."""
    in_v = g.in_weight(v)
    m = Fraction(smoothing.m_est)
    if in_v + m == 0:
        raise UndefinedDistributionError(
            f"In({v.label!r}) + m_est = 0: no distribution over parents"
        )
    return float((g.freq(w, v) + m * Fraction(smoothing.p_prior)) / (in_v + m))


def _child_given_parent(
    g: LeveledGraph, parent: Node, child_label: str, m: Fraction, mp: Fraction
) -> Fraction:
    """P-hat(child | parent) with m-estimate over the parent's out-distribution."""
    out = g.out_weight(parent)
    child = Node(child_label, parent.level + 1)
    f = g.freq(parent, child)
    if out + m == 0:
        return Fraction(0)
    return (f + mp) / (out + m)


def _rank(
    scored: list[tuple[str, Fraction]],
    top_k: int,
    threshold: float,
    normalize: bool,
) -> list[ClassScore]:
    thr = Fraction(threshold)
    kept = [(label, s) for label, s in scored if s >= thr]
    kept.sort(key=lambda item: (-item[1], item[0]))
    kept = kept[: max(top_k, 0)]
    if normalize:
        total = sum(s for _, s in kept)
        if total > 0:
            kept = [(label, s / total) for label, s in kept]
    return [
        ClassScore(label, float(s), rank)
        for rank, (label, s) in enumerate(kept, start=1)
    ]


def classify_instance(
    g: LeveledGraph,
    features: Iterable[str],
    level: int | None = None,
    smoothing: SmoothingParams = UNSMOOTHED,
    top_k: int = 10,
    threshold: float = 0.0,
    normalize: bool = False,
) -> Classification:
    """Rank candidate parents of a feature set by P-hat(c) * prod P-hat(v|c).

    Candidates are the union of the known features' parents; everything else
    would score 0 unsmoothed.  Unknown features are reported in diagnostics
    and contribute a zero frequency to every candidate.
    """
    feature_labels = sorted(set(features))
    if not feature_labels:
        raise ValueError("empty feature set")
    if level is None:
        level = g.m - 1
    diagnostics: list[str] = []
    known: list[str] = []
    candidates: set[Node] = set()
    for label in feature_labels:
        if g.has_node(label, level):
            known.append(label)
            candidates.update(g.parents(Node(label, level)))
        else:
            diagnostics.append(f"unknown feature {label!r} at level {level}")
    if not candidates:
        return Classification([], diagnostics)
    if g.t == 0:
        raise UndefinedDistributionError("graph has no observations")
    m = Fraction(smoothing.m_est)
    mp = m * Fraction(smoothing.p_prior)
    scored = []
    for cand in candidates:
        score = Fraction(g.out_weight(cand), g.t)
        for label in feature_labels:
            score *= _child_given_parent(g, cand, label, m, mp)
        scored.append((cand.label, score))
    return Classification(_rank(scored, top_k, threshold, normalize), diagnostics)


def classify_path(
    g: LeveledGraph,
    partial_path: Sequence[str],
    start_level: int,
    smoothing: SmoothingParams = UNSMOOTHED,
    top_k: int = 10,
    threshold: float = 0.0,
    normalize: bool = False,
) -> Classification:
    """Rank parents at start_level-1 of a path of labels at levels
    start_level..start_level+len-1, chaining per-transition conditionals.
    """
    labels = list(partial_path)
    if not labels:
        raise ValueError("empty path")
    if start_level < 1:
        raise ValueError("path must start at level >= 1 so parents exist")
    if g.t == 0:
        raise UndefinedDistributionError("graph has no observations")
    diagnostics: list[str] = []
    head = labels[0]
    if not g.has_node(head, start_level):
        return Classification([], [f"unknown path node {head!r} at level {start_level}"])
    m = Fraction(smoothing.m_est)
    mp = m * Fraction(smoothing.p_prior)
    # Transition chain beyond the head is the same factor for every candidate.
    chain = Fraction(1)
    for i in range(1, len(labels)):
        prev = Node(labels[i - 1], start_level + i - 1)
        if not g.has_node(prev.label, prev.level):
            return Classification(
                [], [f"unknown path node {prev.label!r} at level {prev.level}"]
            )
        chain *= _child_given_parent(g, prev, labels[i], m, mp)
    scored = []
    for cand in g.parents(Node(head, start_level)):
        prior = Fraction(g.out_weight(cand), g.t)
        scored.append((cand.label, prior * _child_given_parent(g, cand, head, m, mp) * chain))
    return Classification(_rank(scored, top_k, threshold, normalize), diagnostics)
