"""Common neighbours in the perfect matching polytope of a complete graph.

Two perfect matchings are adjacent iff their symmetric difference is a
single alternating cycle. Given adjacent M1, M2 and any M3, either the three
are pairwise adjacent or some M' is adjacent to all three; this module
constructs such an M' by starting from a *good* matching and merging
M3-M' components one exchange at a time.

Matchings are stored as sorted edge tuples; the algorithms work on partner
dictionaries ``{node: partner}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import InputError, InternalInvariantViolation, NotAdjacent, NotAdjacentBase, PairwiseAdjacent

Edge = tuple[int, int]
Partner = dict[int, int]


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        seen = set()
        for u, v in edges:
            if u == v or u in seen or v in seen:
                raise InputError("edges of a matching must be disjoint non-loops")
            seen.update((u, v))
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_partner(cls, partner: Partner) -> "Matching":
        return cls(tuple((u, v) for u, v in partner.items() if u < v))

    @classmethod
    def from_json(cls, data) -> "Matching":
        return cls(tuple(tuple(e) for e in data))

    @cached_property
    def partner(self) -> Partner:
        p = {}
        for u, v in self.edges:
            p[u] = v
            p[v] = u
        return p

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self.partner)

    def __len__(self) -> int:
        return len(self.edges)

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.edges]


def _same_nodes(*ms: Matching) -> None:
    first = ms[0].nodes
    if any(m.nodes != first for m in ms[1:]):
        raise InputError("matchings must cover the same node set")


# symmetric differences -----------------------------------------------------


@dataclass(frozen=True)
class AlternatingDecomposition:
    """``cycles[i] = (v0, v1, ...)`` with ``v0v1`` in the first matching, ``v1v2`` in the second."""

    cycles: tuple[tuple[int, ...], ...]
    common: tuple[Edge, ...]


def _cycles(p: Partner, q: Partner) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for s in sorted(p):
        if s in seen or p[s] == q[s]:
            continue
        cyc, v = [], s
        while True:
            w = p[v]
            cyc += (v, w)
            v = q[w]
            if v == s:
                break
        seen.update(cyc)
        out.append(tuple(cyc))
    return out


def sym_diff_cycles(M1: Matching, M2: Matching) -> AlternatingDecomposition:
    _same_nodes(M1, M2)
    common = tuple(sorted(set(M1.edges) & set(M2.edges)))
    return AlternatingDecomposition(tuple(_cycles(M1.partner, M2.partner)), common)


def _diff_size(p: Partner, q: Partner) -> int:
    """``|M_p ^ M_q|``, which equals the number of nodes matched differently."""
    return sum(1 for v in p if p[v] != q[v])


def _adjacent(p: Partner, q: Partner) -> bool:
    start = None
    d = 0
    for v in p:
        if p[v] != q[v]:
            d += 1
            if start is None:
                start = v
    if start is None:
        return False
    v, walked = start, 0
    while True:
        v = q[p[v]]
        walked += 2
        if v == start:
            return walked == d


def is_adjacent(M1: Matching, M2: Matching) -> bool:
    _same_nodes(M1, M2)
    return _adjacent(M1.partner, M2.partner)


# the adjacent-cycle matching -------------------------------------------------


def cycle_chords(cycle: tuple[int, ...]) -> tuple[list[Edge], str]:
    """Chords on an alternating 2l-cycle that form a matching adjacent to both sides.

    Returns the chord list and the case tag (``odd``, ``even``, or
    ``l=2 special case`` for the 4-cycle, where the even formula would need v5).
    """
    m = len(cycle)
    l = m // 2
    v = lambda i: cycle[i % m]  # noqa: E731
    if l == 2:
        return [(v(0), v(2)), (v(1), v(3))], "l=2 special case"
    if l % 2:
        return [(v(i), v(i + 3)) for i in range(0, m, 2)], "odd"
    chords = [(v(i), v(i + 3)) for i in range(4, m, 2)]
    return chords + [(v(0), v(2)), (v(3), v(5))], "even"


def _adjacent_cycle(p1: Partner, p2: Partner) -> tuple[Partner, str]:
    cycles = _cycles(p1, p2)
    if len(cycles) != 1:
        raise NotAdjacent("the matchings are not adjacent")
    chords, case = cycle_chords(cycles[0])
    out = {v: p1[v] for v in p1 if p1[v] == p2[v]}
    for a, b in chords:
        out[a] = b
        out[b] = a
    return out, case


def _vstar(p1: Partner, p2: Partner) -> set[int]:
    return {v for v in p1 if p1[v] != p2[v]}


def adjacent_cycle_matching(M1: Matching, M2: Matching) -> Matching:
    """A matching adjacent to both M1 and M2, sharing their difference's node set
    and using none of the cycle's edges."""
    _same_nodes(M1, M2)
    p1, p2 = M1.partner, M2.partner
    mp, _ = _adjacent_cycle(p1, p2)
    vstar = _vstar(p1, p2)
    if not (_adjacent(p1, mp) and _adjacent(p2, mp)):
        raise InternalInvariantViolation("chord matching is not adjacent to both")
    if _vstar(p1, mp) != vstar or _vstar(p2, mp) != vstar:
        raise InternalInvariantViolation("node sets of the differences disagree")
    if any(mp[v] in (p1[v], p2[v]) for v in vstar):
        raise InternalInvariantViolation("chord matching reuses a cycle edge")
    return Matching.from_partner(mp)


# components and goodness -----------------------------------------------------


def _components(p3: Partner, pp: Partner) -> dict[int, int]:
    comp: dict[int, int] = {}
    cid = 0
    for s in sorted(p3):
        if s in comp:
            continue
        v = s
        while True:
            comp[v] = cid
            w = p3[v]
            comp[w] = cid
            v = pp[w]
            if v == s:
                break
        cid += 1
    return comp


def components(M3: Matching, Mp: Matching) -> tuple[int, list[frozenset[int]]]:
    """Connected components of ``M3 u Mp``; a shared edge is a 2-node component."""
    _same_nodes(M3, Mp)
    comp = _components(M3.partner, Mp.partner)
    groups: dict[int, set[int]] = {}
    for v, c in comp.items():
        groups.setdefault(c, set()).add(v)
    sets = sorted((frozenset(g) for g in groups.values()), key=min)
    return len(sets), sets


@dataclass
class GoodnessReport:
    A: bool
    B: bool
    C: bool
    D: bool
    E: bool
    c: int
    witnesses: dict = field(default_factory=dict)

    @property
    def good(self) -> bool:
        return self.A and self.B and self.C and self.D and self.E

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in "ABCDE"}

    def to_json(self) -> dict:
        return {"flags": self.flags(), "good": self.good, "c": self.c, "witnesses": self.witnesses}


def _goodness(pp: Partner, p1: Partner, p2: Partner, p3: Partner) -> GoodnessReport:
    vstar = _vstar(p1, p2)
    comp = _components(p3, pp)
    c = max(comp.values()) + 1
    w: dict = {}
    a = _adjacent(pp, p1) and _adjacent(pp, p2)
    if not a:
        w["A"] = [j for j, p in ((1, p1), (2, p2)) if not _adjacent(pp, p)]
    touching = {comp[v] for v in vstar}
    b = len(touching) == c
    if not b:
        w["B"] = sorted(v for v in comp if comp[v] not in touching)
    on_cycle = {comp[v] for v in pp if (pp[v] == p1[v]) != (pp[v] == p2[v])}
    cc = len(on_cycle) <= 1
    if not cc:
        w["C"] = sorted(on_cycle)
    d1, d2 = _diff_size(p1, pp), _diff_size(p2, pp)
    d = pp != p3 and 2 * c <= d1 + d2 - 6
    if not d:
        w["D"] = {"c": c, "half_sizes": [d1 // 2, d2 // 2], "equal_to_M3": pp == p3}
    e = True
    for dj, pk in ((d1, p2), (d2, p1)):
        if 2 * c > dj:
            e = False
        elif 2 * c == dj and not vstar <= _vstar(pk, pp):
            e = False
    if not e:
        w["E"] = {"c": c, "half_sizes": [d1 // 2, d2 // 2]}
    return GoodnessReport(a, b, cc, d, e, c, w)


def goodness(Mp: Matching, M1: Matching, M2: Matching, M3: Matching) -> GoodnessReport:
    """Evaluate the five properties that make ``Mp`` a good matching for the triple."""
    _same_nodes(Mp, M1, M2, M3)
    if not _adjacent(M1.partner, M2.partner):
        raise NotAdjacentBase("M1 and M2 must be adjacent")
    return _goodness(Mp.partner, M1.partner, M2.partner, M3.partner)


# stripping and the good starting matching ------------------------------------


@dataclass(frozen=True)
class StripMap:
    """Edges shared by all three matchings; reinserted into any restricted answer."""

    common: tuple[Edge, ...]
    degenerate: bool

    def restore(self, M: Matching) -> Matching:
        return Matching(M.edges + self.common)


def strip_common(M1: Matching, M2: Matching, M3: Matching):
    """Delete the nodes of ``M1 n M2 n M3``; returns ``((R1, R2, R3), StripMap)``."""
    _same_nodes(M1, M2, M3)
    common = set(M1.edges) & set(M2.edges) & set(M3.edges)
    restricted = tuple(Matching(tuple(e for e in M.edges if e not in common)) for M in (M1, M2, M3))
    degenerate = len(common) == len(M1.edges)
    return restricted, StripMap(tuple(sorted(common)), degenerate)


def _good_start(p1: Partner, p2: Partner, p3: Partner) -> Partner:
    mbar, _ = _adjacent_cycle(p1, p2)
    vstar = _vstar(p1, p2)
    u0 = min(vstar)
    v0 = mbar[u0]
    comp = _components(p3, mbar)
    inner = {comp[v] for v in vstar}
    outer: dict[int, int] = {}
    for v in sorted(mbar):
        if comp[v] not in inner:
            outer.setdefault(comp[v], v)
    us = [u0] + [outer[c] for c in sorted(outer, key=outer.get)]
    vs = [mbar[u] for u in us]
    mp = dict(mbar)
    for i, u in enumerate(us):
        v = vs[(i + 1) % len(us)]
        mp[u] = v
        mp[v] = u
    return mp


def good_matching_exists(M1: Matching, M2: Matching, M3: Matching) -> Matching:
    """A good matching for a triple with no edge common to all three.

    Starts from the adjacent-cycle matching and splices every M3-cycle
    that misses the M1-M2 cycle into one long cycle through its first edge.
    """
    _same_nodes(M1, M2, M3)
    p1, p2, p3 = M1.partner, M2.partner, M3.partner
    if not _adjacent(p1, p2):
        raise NotAdjacentBase("M1 and M2 must be adjacent")
    if set(M1.edges) & set(M2.edges) & set(M3.edges):
        raise InputError("strip the edges common to all three first")
    if _adjacent(p3, p1) and _adjacent(p3, p2):
        raise PairwiseAdjacent("the three matchings are pairwise adjacent")
    mp = _good_start(p1, p2, p3)
    report = _goodness(mp, p1, p2, p3)
    if not report.good:
        raise InternalInvariantViolation(f"starting matching is not good: {report.witnesses}")
    return Matching.from_partner(mp)


# the common neighbour ---------------------------------------------------------


@dataclass
class CommonNeighborResult:
    kind: str  # "pairwise_adjacent" or "common_neighbor"
    matching: Matching | None
    trace: list[dict] = field(default_factory=list)
    stripped: tuple[Edge, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "matching": self.matching.to_json() if self.matching else None,
            "stripped": [list(e) for e in self.stripped],
            "trace": self.trace,
        }


def _walk_order(pk: Partner, pp: Partner, u1: int, targets: tuple[int, int]) -> int:
    """Which of ``targets`` the walk along ``Mk ^ M'`` from u1 via its M'-edge meets first."""
    v = u1
    use_mp = True
    while True:
        v = pp[v] if use_mp else pk[v]
        use_mp = not use_mp
        if v in targets:
            return v
        if v == u1:
            raise InternalInvariantViolation("walk closed without meeting the targets")


def _exchange(p1, p2, p3, mp, comp) -> tuple[Partner, dict]:
    vstar = _vstar(p1, p2)
    cycle = _cycles(p1, p2)[0]
    m = len(cycle)
    hat = next(
        (comp[v] for v in mp if (mp[v] == p1[v]) != (mp[v] == p2[v])),
        min(comp[v] for v in vstar),
    )
    sizes = {1: _diff_size(p1, mp), 2: _diff_size(p2, mp)}
    best = None
    for i in range(m):
        a, b = cycle[i], cycle[(i + 1) % m]
        if (comp[a] == hat) == (comp[b] == hat):
            continue
        j = 1 if i % 2 == 0 else 2
        key = (-sizes[j], j, min(a, b), max(a, b))
        u1, u2 = (a, b) if comp[a] == hat else (b, a)
        if best is None or key < best[0]:
            best = (key, j, u1, u2)
    if best is None:
        raise InternalInvariantViolation("no cycle edge leaves the chosen component")
    _, j, u1, u2 = best
    pk = p2 if j == 1 else p1
    v1, v2 = mp[u1], mp[u2]
    f1_in_k = pk[u1] == v1
    if not f1_in_k and _walk_order(pk, mp, u1, (u2, v2)) == u2:
        case, pairs = 1, ((u1, u2), (v1, v2))
    else:
        case, pairs = 2, ((u1, v2), (u2, v1))
    new = dict(mp)
    for a, b in pairs:
        new[a] = b
        new[b] = a
    step = {
        "component": sorted(v for v in comp if comp[v] == hat),
        "edge": sorted((u1, u2)),
        "j": j,
        "case": case,
        "removed": [sorted((u1, v1)), sorted((u2, v2))],
        "added": [sorted(p) for p in pairs],
    }
    return new, step


def _three_common_neighbor(p1: Partner, p2: Partner, p3: Partner, trace: list[dict]) -> Partner:
    mp = _good_start(p1, p2, p3)
    report = _goodness(mp, p1, p2, p3)
    if not report.good:
        raise InternalInvariantViolation(f"starting matching is not good: {report.witnesses}")
    c = report.c
    while c >= 2:
        comp = _components(p3, mp)
        mp, step = _exchange(p1, p2, p3, mp, comp)
        report = _goodness(mp, p1, p2, p3)
        step.update(c_before=c, c_after=report.c)
        trace.append(step)
        if report.c != c - 1:
            raise InternalInvariantViolation(f"component count went {c} -> {report.c}")
        if not report.good:
            raise InternalInvariantViolation(f"exchange broke goodness: {report.witnesses}")
        c = report.c
    return mp


def three_common_neighbor(M1: Matching, M2: Matching, M3: Matching) -> CommonNeighborResult:
    """Pairwise adjacency, or a matching adjacent to all three (with the exchange trace)."""
    _same_nodes(M1, M2, M3)
    if not _adjacent(M1.partner, M2.partner):
        raise NotAdjacentBase("M1 and M2 must be adjacent")
    if _adjacent(M3.partner, M1.partner) and _adjacent(M3.partner, M2.partner):
        return CommonNeighborResult("pairwise_adjacent", None)
    (r1, r2, r3), smap = strip_common(M1, M2, M3)
    trace: list[dict] = []
    mp = _three_common_neighbor(r1.partner, r2.partner, r3.partner, trace)
    result = smap.restore(Matching.from_partner(mp))
    p = result.partner
    if not all(_adjacent(p, M.partner) for M in (M1, M2, M3)):
        raise InternalInvariantViolation("returned matching is not a common neighbour")
    return CommonNeighborResult("common_neighbor", result, trace, smap.common)


def matchings_of(edge_lists: Iterable[Iterable[Edge]]) -> list[Matching]:
    return [Matching(tuple(e)) for e in edge_lists]
