"""Leveled frequency multigraph.

Nodes live on levels 0..m-1, arcs only join adjacent levels, and each arc
carries an integer co-occurrence frequency.  Frequencies (not probabilities)
are stored so that graphs trained on disjoint data shards merge by pointwise
addition, making the structure a commutative monoid under `merge`.
"""

from __future__ import annotations

import sys
from typing import Iterator, NamedTuple

from .errors import FrozenGraphError, StructuralError, UnknownNodeError


class Node(NamedTuple):
    label: str
    level: int


class LeveledGraph:
    """Level-partitioned DAG with frequency-weighted arcs between adjacent levels.

    Mutation (``add_arc_increment``, ``ensure_node``) is single-writer; call
    :meth:`freeze` before sharing a graph with concurrent readers.
    """

    __slots__ = ("m", "t", "_levels", "_children", "_parents", "_frozen")

    def __init__(self, levels: int):
        if levels < 2:
            raise StructuralError(f"need at least 2 levels, got {levels}")
        self.m = levels
        self.t = 0
        # label -> Node, one dict per level (tracks isolated nodes too)
        self._levels: list[dict[str, Node]] = [{} for _ in range(levels)]
        self._children: dict[Node, dict[Node, int]] = {}
        self._parents: dict[Node, dict[Node, int]] = {}
        self._frozen = False

    # -- node bookkeeping ---------------------------------------------------

    def ensure_node(self, label: str, level: int) -> Node:
        """Get or create the node (label, level)."""
        self._check_mutable()
        self._check_level(level)
        nodes = self._levels[level]
        node = nodes.get(label)
        if node is None:
            node = Node(label, level)
            nodes[label] = node
        return node

    def node(self, label: str, level: int) -> Node:
        self._check_level(level)
        node = self._levels[level].get(label)
        if node is None:
            raise UnknownNodeError(f"no node {label!r} at level {level}")
        return node

    def has_node(self, label: str, level: int) -> bool:
        return 0 <= level < self.m and label in self._levels[level]

    def nodes(self) -> Iterator[Node]:
        for level_nodes in self._levels:
            for label in sorted(level_nodes):
                yield level_nodes[label]

    def level_labels(self, level: int) -> list[str]:
        self._check_level(level)
        return sorted(self._levels[level])

    @property
    def num_nodes(self) -> int:
        return sum(len(d) for d in self._levels)

    @property
    def num_arcs(self) -> int:
        return sum(len(d) for d in self._children.values())

    # -- arcs ----------------------------------------------------------------

    def add_arc_increment(self, parent: Node, child: Node, delta: int = 1) -> int:
        """Increase freq(parent, child) by delta, creating nodes/arc on first sight.

        Returns the new frequency.
        """
        self._check_mutable()
        if delta < 1:
            raise StructuralError(f"arc increment must be >= 1, got {delta}")
        if parent.level + 1 != child.level:
            raise StructuralError(
                f"arc must join adjacent levels: {parent} -> {child}"
            )
        parent = self.ensure_node(parent.label, parent.level)
        child = self.ensure_node(child.label, child.level)
        kids = self._children.setdefault(parent, {})
        freq = kids.get(child, 0) + delta
        kids[child] = freq
        self._parents.setdefault(child, {})[parent] = freq
        return freq

    def freq(self, parent: Node, child: Node) -> int:
        """Stored arc frequency, 0 if the arc is absent."""
        return self._children.get(parent, {}).get(child, 0)

    def parents(self, v: Node) -> dict[Node, int]:
        """Incoming arcs of v as {parent: freq}."""
        self._require(v)
        return self._parents.get(v, {})

    def children(self, w: Node) -> dict[Node, int]:
        """Outgoing arcs of w as {child: freq}."""
        self._require(w)
        return self._children.get(w, {})

    def in_weight(self, v: Node) -> int:
        """In(v): total frequency into v; 0 for roots and isolated nodes."""
        self._require(v)
        return sum(self._parents.get(v, {}).values())

    def out_weight(self, w: Node) -> int:
        """Out(w): total frequency out of w; this is a root node's frequency."""
        self._require(w)
        return sum(self._children.get(w, {}).values())

    def arcs(self) -> Iterator[tuple[Node, Node, int]]:
        """All arcs in canonical order: (parent level, parent label, child label)."""
        for parent in sorted(self._children, key=lambda n: (n.level, n.label)):
            kids = self._children[parent]
            for child in sorted(kids, key=lambda n: n.label):
                yield parent, child, kids[child]

    # -- lifecycle -----------------------------------------------------------

    def freeze(self) -> "LeveledGraph":
        """Make the graph immutable; safe for concurrent readers afterwards."""
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- merge monoid ----------------------------------------------------------

    def merge(self, other: "LeveledGraph") -> "LeveledGraph":
        """New graph with unioned nodes, pointwise-summed arc freqs, summed t.

        Commutative and associative; the empty graph is the identity.
        """
        if self.m != other.m:
            raise StructuralError(
                f"cannot merge graphs with {self.m} and {other.m} levels"
            )
        out = LeveledGraph(self.m)
        for g in (self, other):
            for level, nodes in enumerate(g._levels):
                for label in nodes:
                    out.ensure_node(label, level)
            for parent, kids in g._children.items():
                for child, freq in kids.items():
                    out.add_arc_increment(parent, child, freq)
        out.t = self.t + other.t
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LeveledGraph):
            return NotImplemented
        return (
            self.m == other.m
            and self.t == other.t
            and self._levels == other._levels
            and self._children == other._children
        )

    def __hash__(self) -> int:  # mutable container
        raise TypeError("LeveledGraph is unhashable")

    def __repr__(self) -> str:
        return (
            f"LeveledGraph(m={self.m}, nodes={self.num_nodes}, "
            f"arcs={self.num_arcs}, t={self.t})"
        )

    # -- checks ----------------------------------------------------------------

    def validate(self) -> list[str]:
        """Check structural invariants; returns one message per violation."""
        violations = []
        for level, nodes in enumerate(self._levels):
            for node in nodes.values():
                if node.level != level:
                    violations.append(f"{node} stored under level {level}")
        transition_sums = [0] * (self.m - 1)
        for parent, kids in self._children.items():
            for child, freq in kids.items():
                if child.level != parent.level + 1:
                    violations.append(f"arc {parent}->{child} skips a level")
                    continue
                if freq < 1:
                    violations.append(f"arc {parent}->{child} has freq {freq}")
                if self._parents.get(child, {}).get(parent) != freq:
                    violations.append(f"arc {parent}->{child} mirror out of sync")
                transition_sums[parent.level] += freq
        for level in range(1, self.m):
            for node in self._levels[level].values():
                if not self._parents.get(node):
                    violations.append(f"{node} at level {level} has no incoming arc")
        # Complete paths put the same total on every transition; prefix paths
        # (observations shorter than m) only shrink the later sums.
        if any(transition_sums):
            if transition_sums[0] != self.t:
                violations.append(
                    f"t={self.t} but level-0 transition carries {transition_sums[0]}"
                )
            for i in range(1, self.m - 1):
                if transition_sums[i] > transition_sums[i - 1]:
                    violations.append(
                        f"transition {i} carries more weight than transition {i - 1}"
                    )
        return violations

    def memory_estimate(self) -> int:
        """Rough byte footprint of the graph's containers and keys."""
        seen_labels: set[str] = set()
        total = sys.getsizeof(self._levels) + sys.getsizeof(self._children)
        total += sys.getsizeof(self._parents)
        for level_nodes in self._levels:
            total += sys.getsizeof(level_nodes)
            for label, node in level_nodes.items():
                if label not in seen_labels:
                    seen_labels.add(label)
                    total += sys.getsizeof(label)
                total += sys.getsizeof(node)
        for index in (self._children, self._parents):
            for mapping in index.values():
                total += sys.getsizeof(mapping)
                total += sum(sys.getsizeof(f) for f in mapping.values())
        return total

    # -- internals ---------------------------------------------------------------

    def _check_level(self, level: int) -> None:
        if not 0 <= level < self.m:
            raise StructuralError(f"level {level} outside [0, {self.m - 1}]")

    def _check_mutable(self) -> None:
        if self._frozen:
            raise FrozenGraphError("graph is frozen")

    def _require(self, node: Node) -> None:
        if not self.has_node(node.label, node.level):
            raise UnknownNodeError(f"no node {node.label!r} at level {node.level}")


def empty_like(g: LeveledGraph) -> LeveledGraph:
    return LeveledGraph(g.m)


def merge_all(graphs: list[LeveledGraph], levels: int) -> LeveledGraph:
    """Fold merge over graphs; returns the empty graph for an empty list."""
    out = LeveledGraph(levels)
    for g in graphs:
        out = out.merge(g)
    return out
