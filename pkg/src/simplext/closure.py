"""The common-neighbour operator and the lower bounds built on it.

A node set W grows by every outside node with two distinct neighbours in
W; fixpoints are *closed* sets. Vertex sets induced by proper facets of a
simple extension are proper closed sets, so any covering of the vertices by
proper closed sets bounds the number of facets from below.

Internally node sets are integer bitmasks over ``G.masks``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import Budget, default_budget
from .errors import BadW, InputError, ModeInapplicable, OutOfRange, TooLarge
from .graph import SkeletonGraph


def to_mask(nodes: Iterable[int], n: int | None = None) -> int:
    m = 0
    for v in nodes:
        if n is not None and not 0 <= v < n:
            raise BadW(f"node {v} is not in the graph")
        m |= 1 << v
    return m


def from_mask(m: int) -> frozenset[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return frozenset(out)


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _step_mask(masks: Sequence[int], w: int, candidates: int) -> int:
    new = 0
    for v in _bits(candidates & ~w):
        if (masks[v] & w).bit_count() >= 2:
            new |= 1 << v
    return new


def _neighbourhood(masks: Sequence[int], w: int) -> int:
    out = 0
    for v in _bits(w):
        out |= masks[v]
    return out


def close_mask(masks: Sequence[int], w: int) -> int:
    """Closure of the bitmask ``w``; only nodes next to new members are rescanned."""
    full = (1 << len(masks)) - 1
    new = w
    while new and w != full:
        new = _step_mask(masks, w, _neighbourhood(masks, new))
        w |= new
    return w


def cn_step(G: SkeletonGraph, W: Iterable[int]) -> frozenset[int]:
    """One application of the operator: ``W`` plus every outside node with two W-neighbours."""
    w = to_mask(W, G.n)
    return from_mask(w | _step_mask(G.masks, w, _neighbourhood(G.masks, w)))


def is_closed(G: SkeletonGraph, W: Iterable[int]) -> bool:
    w = to_mask(W, G.n)
    return not _step_mask(G.masks, w, _neighbourhood(G.masks, w))


def _ball2(masks: Sequence[int], v: int) -> int:
    return masks[v] | _neighbourhood(masks, masks[v]) | (1 << v)


def is_isolated(G: SkeletonGraph, W: Iterable[int]) -> bool:
    """Pairwise graph distance at least 3 inside ``W``."""
    w = to_mask(W, G.n)
    return all(_ball2(G.masks, v) & w == 1 << v for v in _bits(w))


@dataclass(frozen=True)
class ClosureCertificate:
    graph: str
    seed: frozenset[int]
    trace: tuple[frozenset[int], ...]
    final: frozenset[int]
    proper: bool
    isolated: bool

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "seed": sorted(self.seed),
            "final": sorted(self.final),
            "proper": self.proper,
            "isolated": self.isolated,
            "trace_len": len(self.trace),
        }


def closure(G: SkeletonGraph, W: Iterable[int]) -> ClosureCertificate:
    """Iterate the operator to its fixpoint, recording every iterate.

    ``trace[0]`` is the seed and ``trace[-1]`` the fixpoint.
    """
    w = to_mask(W, G.n)
    if not w:
        raise BadW("closure seeds must be nonempty")
    masks = G.masks
    trace = [from_mask(w)]
    new = w
    while True:
        new = _step_mask(masks, w, _neighbourhood(masks, new))
        if not new:
            break
        w |= new
        trace.append(from_mask(w))
    final = trace[-1]
    return ClosureCertificate(
        graph=G.digest(),
        seed=trace[0],
        trace=tuple(trace),
        final=final,
        proper=len(final) != G.n,
        isolated=is_isolated(G, final),
    )


# sweeps and bounds ---------------------------------------------------------


@dataclass
class SweepReport:
    graph: str
    node_count: int
    distance_filter: int | None
    pairs_checked: int
    counterexamples: list[tuple[int, int, frozenset[int]]] = field(default_factory=list)

    @property
    def all_full(self) -> bool:
        return not self.counterexamples

    @property
    def conclusion(self) -> str:
        if not self.all_full:
            return "some pair has a proper closure"
        if self.distance_filter is None:
            return "every proper closed set is a singleton"
        return "every proper closed set is isolated"

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "node_count": self.node_count,
            "distance_filter": self.distance_filter,
            "pairs_checked": self.pairs_checked,
            "all_full": self.all_full,
            "conclusion": self.conclusion,
            "counterexamples": [
                {"pair": [u, v], "final": sorted(f)} for u, v, f in self.counterexamples[:20]
            ],
            "counterexample_count": len(self.counterexamples),
        }


def pair_closure_sweep(
    G: SkeletonGraph,
    distance_filter: int | None = None,
    budget: Budget | None = None,
    stop_at_first: bool = False,
) -> SweepReport:
    """Close every pair of nodes (optionally only pairs at distance <= filter).

    If all pairs close to V, no proper closed set contains two nodes, i.e.
    all proper closed sets are singletons; with ``distance_filter=2`` the
    same reasoning shows all proper closed sets are isolated.
    """
    budget = budget or default_budget()
    n = G.n
    if distance_filter is not None and distance_filter not in (1, 2):
        raise InputError("distance_filter must be 1, 2 or None")
    if n * (n - 1) // 2 > budget.pairs:
        raise TooLarge(f"{n} nodes exceed the pair budget {budget.pairs}")
    masks = G.masks
    full = (1 << n) - 1
    report = SweepReport(G.digest(), n, distance_filter, 0)
    for u in range(n):
        if distance_filter is None:
            partners = full & ~((1 << (u + 1)) - 1)
        else:
            near = masks[u] if distance_filter == 1 else _ball2(masks, u)
            partners = near & ~((1 << (u + 1)) - 1)
        for v in _bits(partners):
            report.pairs_checked += 1
            final = close_mask(masks, (1 << u) | (1 << v))
            if final != full:
                report.counterexamples.append((u, v, from_mask(final)))
                if stop_at_first:
                    return report
    return report


@dataclass
class CoverCertificate:
    mode: str
    bound: int
    graph: str
    node_count: int
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "bound": self.bound,
            "graph": self.graph,
            "node_count": self.node_count,
            **self.details,
        }


def closed_sets(G: SkeletonGraph, budget: Budget | None = None) -> list[int]:
    """All closed sets as bitmasks, in lectic order (Ganter's NextClosure)."""
    budget = budget or default_budget()
    n = G.n
    masks = G.masks
    out = []
    a = close_mask(masks, 0)
    full = (1 << n) - 1
    while True:
        out.append(a)
        if len(out) > budget.items:
            raise TooLarge("too many closed sets")
        if a == full:
            return out
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                continue
            low = a & (bit - 1)
            b = close_mask(masks, low | bit)
            if b & ~a & (bit - 1) == 0:
                a = b
                break
        else:
            return out


def maximal_proper_closed_sets(G: SkeletonGraph, budget: Budget | None = None) -> list[frozenset[int]]:
    full = (1 << G.n) - 1
    proper = [c for c in closed_sets(G, budget) if c != full]
    maximal = [c for c in proper if not any(c != d and c & d == c for d in proper)]
    return sorted((from_mask(c) for c in maximal), key=lambda s: (-len(s), sorted(s)))


def _min_cover(n: int, sets: list[int]) -> list[int]:
    """Fewest ``sets`` covering ``range(n)`` by branch and bound."""
    full = (1 << n) - 1
    # greedy upper bound
    greedy, covered = [], 0
    while covered != full:
        best = max(sets, key=lambda s: ((s & ~covered).bit_count(), -sets.index(s)))
        if not best & ~covered:
            raise ModeInapplicable("the proper closed sets do not cover every node")
        greedy.append(best)
        covered |= best
    best_sol = list(greedy)
    largest = max(s.bit_count() for s in sets)

    def search(covered: int, chosen: list[int]):
        nonlocal best_sol
        if covered == full:
            if len(chosen) < len(best_sol):
                best_sol = list(chosen)
            return
        missing = (full & ~covered).bit_count()
        if len(chosen) + -(-missing // largest) >= len(best_sol):
            return
        low = full & ~covered
        v = (low & -low).bit_length() - 1
        for s in sets:
            if s >> v & 1:
                chosen.append(s)
                search(covered | s, chosen)
                chosen.pop()

    search(0, [])
    return best_sol


EXACT, SINGLETON, DEGREE = "exact", "singleton_shortcut", "degree_bound"


def cover_lower_bound(G: SkeletonGraph, mode: str = EXACT, budget: Budget | None = None) -> CoverCertificate:
    """Lower bound on the number of facets of any simple extension.

    * ``exact``: fewest proper closed sets covering every node;
    * ``singleton_shortcut``: ``|V|`` once every pair closes to V;
    * ``degree_bound``: max degree + 1 once every pair at distance <= 2
      closes to V (then all proper closed sets are isolated).
    """
    budget = budget or default_budget()
    n = G.n
    if n < 2:
        raise ModeInapplicable("a single node admits no proper covering")
    if mode == EXACT:
        if n > budget.cover_nodes:
            raise TooLarge(f"exact covers are limited to {budget.cover_nodes} nodes")
        maximal = maximal_proper_closed_sets(G, budget)
        cover = _min_cover(n, [to_mask(s) for s in maximal])
        return CoverCertificate(
            EXACT,
            len(cover),
            G.digest(),
            n,
            {
                "cover": [sorted(from_mask(c)) for c in cover],
                "maximal_proper_closed_sets": [sorted(s) for s in maximal],
            },
        )
    if mode == SINGLETON:
        sweep = pair_closure_sweep(G, None, budget, stop_at_first=True)
        if not sweep.all_full:
            u, v, final = sweep.counterexamples[0]
            raise ModeInapplicable(
                "a pair closes to a proper set", witness={"pair": [u, v], "final": sorted(final)}
            )
        return CoverCertificate(SINGLETON, n, G.digest(), n, {"sweep": sweep.to_json()})
    if mode == DEGREE:
        sweep = pair_closure_sweep(G, 2, budget, stop_at_first=True)
        if not sweep.all_full:
            u, v, final = sweep.counterexamples[0]
            raise ModeInapplicable(
                "a pair at distance <= 2 closes to a proper set",
                witness={"pair": [u, v], "final": sorted(final)},
            )
        return CoverCertificate(
            DEGREE,
            G.max_degree() + 1,
            G.digest(),
            n,
            {
                "max_degree": G.max_degree(),
                "sweep": sweep.to_json(),
                "justification": "a proper closed set with two nodes at distance <= 2 would contain their full closure",
            },
        )
    raise InputError(f"unknown mode {mode!r}")


# random 0/1 polytopes ------------------------------------------------------


@dataclass
class SampleReport:
    d: int
    vertex_count: int
    samples: int
    complete: int
    sigma: float
    within_sigma_budget: bool
    seed: int

    @property
    def fraction(self) -> float:
        return self.complete / self.samples if self.samples else 0.0

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "vertex_count": self.vertex_count,
            "samples": self.samples,
            "complete": self.complete,
            "fraction_complete": self.fraction,
            "sigma": self.sigma,
            "within_sigma_budget": self.within_sigma_budget,
            "seed": self.seed,
        }


def sample_random_01(d: int, n_vertices: int, samples: int, sigma: float = 0.3, seed: int = 0) -> SampleReport:
    """Fraction of random 0/1 polytopes whose skeleton is complete.

    For those, every proper closed set is a singleton and the vertex count
    is a lower bound on simple extensions. This is a report, not a claim.
    """
    from .polytope import VPolytope, v_adjacency

    if not 1 <= d <= 8:
        raise OutOfRange("d must be between 1 and 8")
    if not 2 <= n_vertices <= 2**d:
        raise OutOfRange("need between 2 and 2^d vertices")
    rng = random.Random(seed)
    complete = 0
    for _ in range(samples):
        codes = rng.sample(range(2**d), n_vertices)
        V = VPolytope.of([tuple((c >> k) & 1 for k in range(d)) for c in codes])
        m = len(V)
        if all(v_adjacency(V, i, j) for i in range(m) for j in range(i + 1, m)):
            complete += 1
    return SampleReport(d, n_vertices, samples, complete, sigma, n_vertices <= 2 ** (sigma * d), seed)
