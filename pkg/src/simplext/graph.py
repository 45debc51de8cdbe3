"""Simple undirected graphs used as polytope 1-skeletons."""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from .errors import InputError


@dataclass(frozen=True)
class SkeletonGraph:
    """Nodes are ``0..n-1``; ``labels[i]`` is the stable identifier of node i."""

    adjacency: tuple[frozenset[int], ...]
    labels: tuple[Hashable, ...] = field(default=())

    def __post_init__(self):
        n = len(self.adjacency)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(n)))
        if len(self.labels) != n:
            raise InputError("one label per node required")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise InputError(f"loop at node {v}")
            for u in nbrs:
                if not 0 <= u < n or v not in self.adjacency[u]:
                    raise InputError(f"adjacency not symmetric at {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence = ()):
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at node {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(frozenset(a) for a in adj), tuple(labels))

    @classmethod
    def from_oracle(cls, items: Sequence, adjacent: Callable[[object, object], bool], labels: Sequence = ()):
        """Build a graph by asking ``adjacent`` about every unordered pair."""
        n = len(items)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if adjacent(items[i], items[j])]
        return cls.from_edges(n, edges, labels)

    def __len__(self) -> int:
        return len(self.adjacency)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitsets."""
        return tuple(sum(1 << u for u in a) for a in self.adjacency)

    def distances_from(self, source: int) -> list[int]:
        """BFS distances; unreachable nodes get -1."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for u in self.adjacency[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def is_connected(self) -> bool:
        return self.n == 0 or all(d >= 0 for d in self.distances_from(0))

    def is_complete(self) -> bool:
        return all(len(a) == self.n - 1 for a in self.adjacency)

    def cycle_order(self) -> list[int] | None:
        """Node order around the graph if it is a single cycle, else None."""
        if self.n < 3 or any(len(a) != 2 for a in self.adjacency):
            return None
        order, prev = [0], None
        while True:
            cur = order[-1]
            nxt = min(u for u in self.adjacency[cur] if u != prev)
            if nxt == 0:
                break
            order.append(nxt)
            prev = cur
        return order if len(order) == self.n else None

    def digest(self) -> str:
        """Stable content hash of the labelled edge set."""
        payload = json.dumps(
            {"n": self.n, "labels": [repr(x) for x in self.labels], "edges": self.edges()},
            sort_keys=True,
        )
        return "sha256:" + hashlib.sha256(payload.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "nodes": [_label_json(x) for x in self.labels],
            "adjacency": [sorted(a) for a in self.adjacency],
            "edge_count": self.edge_count(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SkeletonGraph":
        if "adjacency" in data:
            adj = data["adjacency"]
            if isinstance(adj, dict):
                n = len(adj)
                adj = [adj[str(i)] for i in range(n)]
            n = len(adj)
            edges = [(u, v) for u in range(n) for v in adj[u]]
        elif "edges" in data:
            edges = [tuple(e) for e in data["edges"]]
            n = data.get("n") or (1 + max((max(e) for e in edges), default=-1))
        else:
            raise InputError("graph JSON needs 'adjacency' or 'edges'")
        labels = data.get("nodes") or ()
        labels = tuple(tuple(x) if isinstance(x, list) else x for x in labels)
        return cls.from_edges(n, edges, labels)


def _label_json(x):
    if isinstance(x, (frozenset, set)):
        return sorted(_label_json(y) for y in x)
    if isinstance(x, tuple):
        return [_label_json(y) for y in x]
    return x


def cycle_graph(n: int) -> SkeletonGraph:
    return SkeletonGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> SkeletonGraph:
    return SkeletonGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> SkeletonGraph:
    return SkeletonGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
