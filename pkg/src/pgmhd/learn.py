"""Progressive learning and the shard-train-merge pipeline.

Training is pure frequency accumulation, so it is order-free: any partition
of the data trained into private graphs and merged gives the same result as
one sequential pass.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .errors import StructuralError
from .graph import LeveledGraph, Node
from .ingest import Observation


def learn_observation(g: LeveledGraph, obs: Observation) -> LeveledGraph:
    """Fold one observed path into the graph: +1 on each transition, +1 on t."""
    path = obs.path
    if path[-1][0] > g.m - 1:
        raise StructuralError(
            f"observation reaches level {path[-1][0]} but graph has {g.m} levels"
        )
    prev_level, prev_label = path[0]
    for level, label in path[1:]:
        g.add_arc_increment(Node(prev_label, prev_level), Node(label, level))
        prev_level, prev_label = level, label
    g.t += 1
    return g


@dataclass
class TrainReport:
    rows: int = 0
    skipped: int = 0
    elapsed: float = 0.0


def train_stream(
    g: LeveledGraph, observations: Iterable[Observation]
) -> tuple[LeveledGraph, TrainReport]:
    """Fold learn_observation over a stream.

    Malformed items (anything that is not a valid Observation) are counted and
    skipped; structural errors from the graph itself propagate.
    """
    report = TrainReport()
    start = time.perf_counter()
    for obs in observations:
        if not isinstance(obs, Observation):
            try:
                obs = Observation(tuple(obs))
            except (TypeError, ValueError):
                report.skipped += 1
                continue
        learn_observation(g, obs)
        report.rows += 1
    report.elapsed = time.perf_counter() - start
    return g, report


def train_sharded(
    observations: Iterable[Observation], shards: int, levels: int
) -> LeveledGraph:
    """Partition round-robin, train each shard into a private graph
    concurrently, and fold the results with merge.

    Bit-exact equal to sequential train_stream for every shard count.
    """
    if shards < 1:
        raise ValueError(f"shards must be >= 1, got {shards}")
    buckets: list[list[Observation]] = [[] for _ in range(shards)]
    for i, obs in enumerate(observations):
        buckets[i % shards].append(obs)

    def train_one(bucket: list[Observation]) -> LeveledGraph:
        g, _ = train_stream(LeveledGraph(levels), bucket)
        return g

    if shards == 1:
        shard_graphs = [train_one(buckets[0])]
    else:
        with ThreadPoolExecutor(max_workers=min(shards, 8)) as pool:
            shard_graphs = list(pool.map(train_one, buckets))
    merged = LeveledGraph(levels)
    for shard_graph in shard_graphs:
        merged = merged.merge(shard_graph)
    return merged
