"""Synthetic corpora and the sparse-vs-dense benchmark.

The generator assigns each class a pool of terms (optionally overlapping a
shared pool) and draws terms by Zipf rank within the pool, so the number of
distinct arcs is bounded by classes * terms_per_class no matter how many
rows are drawn.  The benchmark trains the graph on such a corpus and compares
its stored-arc count against the entry count of a dense class-by-term
conditional probability table.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import LeveledGraph
from .infer import SmoothingParams, classify_instance
from .ingest import Observation
from .learn import train_stream


def dense_cpt_entries(classes: int, distinct_terms: int) -> int:
    """Entry count of a dense CPT over (class, term): one cell per pair."""
    return classes * distinct_terms


def zipf_weights(n: int, s: float) -> np.ndarray:
    """Normalized rank weights 1/k^s for k = 1..n (uniform at s=0)."""
    if n < 1:
        raise ValueError("need at least one rank")
    if s < 0:
        raise ValueError(f"zipf exponent must be >= 0, got {s}")
    weights = np.arange(1, n + 1, dtype=np.float64) ** -s
    return weights / weights.sum()


@dataclass
class SyntheticCorpus:
    """Single-term classified rows as index arrays plus label tables."""

    class_labels: list[str]
    term_labels: list[str]
    class_idx: np.ndarray
    term_idx: np.ndarray

    @property
    def distinct_terms(self) -> int:
        return len(self.term_labels)

    @property
    def rows(self) -> int:
        return len(self.class_idx)

    def observations(self) -> Iterator[Observation]:
        classes = self.class_labels
        terms = self.term_labels
        for c, v in zip(self.class_idx, self.term_idx):
            yield Observation(((0, classes[c]), (1, terms[v])))


def generate_corpus(
    classes: int, terms_per_class: int, rows: int, zipf_s: float, seed: int
) -> SyntheticCorpus:
    """Rows of (class, term) with disjoint per-class term pools.

    Class choice is uniform; term choice is Zipf by rank within the class
    pool.  Distinct terms = classes * terms_per_class; distinct arcs never
    exceed that.
    """
    if min(classes, terms_per_class, rows) < 1:
        raise ValueError("classes, terms_per_class and rows must be positive")
    rng = np.random.default_rng(seed)
    class_idx = rng.integers(0, classes, size=rows)
    rank = rng.choice(terms_per_class, size=rows, p=zipf_weights(terms_per_class, zipf_s))
    term_idx = class_idx * terms_per_class + rank
    class_labels = [f"class{c:05d}" for c in range(classes)]
    term_labels = [f"term{v:07d}" for v in range(classes * terms_per_class)]
    return SyntheticCorpus(class_labels, term_labels, class_idx, term_idx)


def generate_labeled_rows(
    classes: int,
    terms_per_class: int,
    rows: int,
    zipf_s: float,
    seed: int,
    terms_per_row: int = 5,
    shared_fraction: float = 0.0,
) -> list[tuple[str, tuple[str, ...]]]:
    """Multi-term rows for classifier-quality experiments.

    Each class's pool replaces a ``shared_fraction`` of its slots with terms
    from a global shared pool, so classes overlap by that fraction of their
    vocabulary.  Returns (class label, terms) per row.
    """
    if not 0.0 <= shared_fraction < 1.0:
        raise ValueError(f"shared_fraction must be in [0,1), got {shared_fraction}")
    rng = np.random.default_rng(seed)
    n_shared = int(round(terms_per_class * shared_fraction))
    shared_pool = [f"shared{v:05d}" for v in range(max(n_shared, 1))]
    pools = []
    for c in range(classes):
        own = [f"c{c:04d}t{v:04d}" for v in range(terms_per_class - n_shared)]
        shared = list(rng.choice(shared_pool, size=n_shared, replace=False)) if n_shared else []
        pool = own + shared
        rng.shuffle(pool)
        pools.append(pool)
    weights = zipf_weights(terms_per_class, zipf_s)
    out = []
    class_choices = rng.integers(0, classes, size=rows)
    for c in class_choices:
        ranks = rng.choice(terms_per_class, size=terms_per_row, p=weights)
        terms = tuple(dict.fromkeys(pools[c][r] for r in ranks))
        out.append((f"class{c:05d}", terms))
    return out


def _dense_baseline(corpus: SyntheticCorpus, classes: int) -> dict:
    """Materialize the dense class-by-term count table the sparse graph avoids."""
    table = np.zeros((classes, corpus.distinct_terms), dtype=np.int64)
    np.add.at(table, (corpus.class_idx, corpus.term_idx), 1)
    return {
        "kind": "dense-nb",
        "entries": int(table.size),
        "bytes": int(table.nbytes),
        "nonzero": int(np.count_nonzero(table)),
    }


def run_bench(
    classes: int,
    terms_per_class: int,
    rows: int,
    zipf_s: float,
    seed: int,
    baseline: str | None = None,
    timing: bool = True,
    classify_queries: int = 1000,
) -> dict:
    """Train on a synthetic corpus and report sparse-vs-dense footprint.

    With ``timing=False`` all wall-clock fields are omitted, making the
    report a deterministic function of the parameters.
    """
    corpus = generate_corpus(classes, terms_per_class, rows, zipf_s, seed)
    graph = LeveledGraph(2)
    start = time.perf_counter()
    graph, train_report = train_stream(graph, corpus.observations())
    train_seconds = time.perf_counter() - start
    graph.freeze()

    dense_entries = dense_cpt_entries(classes, corpus.distinct_terms)
    report = {
        "params": {
            "classes": classes,
            "terms_per_class": terms_per_class,
            "rows": rows,
            "zipf": zipf_s,
            "seed": seed,
        },
        "distinct_terms": corpus.distinct_terms,
        "rows_trained": train_report.rows,
        "t": graph.t,
        "nodes": graph.num_nodes,
        "stored_arcs": graph.num_arcs,
        "dense_cpt_entries": dense_entries,
        "sparsity_ratio": graph.num_arcs / dense_entries,
        "memory_estimate_bytes": graph.memory_estimate(),
    }

    rng = np.random.default_rng(seed)
    query_terms = [
        corpus.term_labels[corpus.term_idx[i]]
        for i in rng.integers(0, rows, size=min(classify_queries, rows))
    ]
    smoothing = SmoothingParams()
    start = time.perf_counter()
    for term in query_terms:
        classify_instance(graph, [term], level=1, smoothing=smoothing, top_k=3)
    classify_seconds = time.perf_counter() - start

    if timing:
        report["train_seconds"] = round(train_seconds, 3)
        report["classify_per_second"] = round(len(query_terms) / classify_seconds, 1)
    if baseline == "dense-nb":
        report["baseline"] = _dense_baseline(corpus, classes)
    elif baseline is not None:
        raise ValueError(f"unknown baseline {baseline!r}")
    return report
