"""Vertices and adjacency for four 0/1 polytope families.

* hypersimplices: 0/1 vectors of length n with k ones;
* spanning trees of K_n (nodes 1..n), as sorted edge tuples;
* s-t paths of a DAG, as tuples of arc indices in traversal order;
* perfect matchings of K_2n (nodes 1..2n), as sorted edge tuples.

Each family has a combinatorial adjacency oracle and characteristic-vector
coordinates so the oracle can be checked against the geometric skeleton.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from .config import Budget, default_budget
from .errors import BadW, InputError, OutOfRange, TooLarge
from .graph import SkeletonGraph

Edge = tuple[int, int]
EdgeSet = tuple[Edge, ...]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def complete_edges(n: int) -> list[Edge]:
    return [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]


# hypersimplex --------------------------------------------------------------


def hypersimplex_vertices(n: int, k: int, budget: Budget | None = None) -> list[tuple[int, ...]]:
    """All 0/1 vectors with k ones, in lexicographic order."""
    budget = budget or default_budget()
    if not 1 <= k <= n - 1:
        raise OutOfRange("need 1 <= k <= n-1")
    if comb(n, k) > budget.items:
        raise TooLarge(f"C({n},{k}) exceeds the item budget")
    out = []
    for ones in combinations(range(n), k):
        out.append(tuple(int(i in ones) for i in range(n)))
    return sorted(out)


def hypersimplex_adjacent(u: Sequence[int], w: Sequence[int]) -> bool:
    if len(u) != len(w) or sum(u) != sum(w):
        raise InputError("vectors must share length and weight")
    return sum(a != b for a, b in zip(u, w)) == 2


def hypersimplex_face_sets(n: int, k: int) -> list[frozenset[int]]:
    """Distinct node sets ``{v : v_L = 1, v_U = 0}`` over disjoint L, U with 2..|V|-1 members.

    Node indices follow ``hypersimplex_vertices``. These are the only vertex
    sets a proper facet of an extension can induce on a hypersimplex.
    """
    verts = hypersimplex_vertices(n, k)
    seen: set[frozenset[int]] = set()
    for labels in product((0, 1, 2), repeat=n):  # 0: in L, 1: in U, 2: free
        S = frozenset(
            i for i, v in enumerate(verts)
            if all(lab == 2 or v[j] == 1 - lab for j, lab in enumerate(labels))
        )
        if 2 <= len(S) < len(verts):
            seen.add(S)
    return sorted(seen, key=lambda S: (len(S), sorted(S)))


def hypersimplex_face_sets_open(n: int, k: int, G: SkeletonGraph | None = None) -> tuple[bool, list[frozenset[int]]]:
    """Whether no L/U set with two or more nodes is closed; returns any closed ones."""
    from .closure import is_closed

    G = G or family_skeleton("hypersimplex", {"n": n, "k": k})
    closed = [S for S in hypersimplex_face_sets(n, k) if is_closed(G, S)]
    return not closed, closed


# spanning trees ------------------------------------------------------------


def _check_tree_n(n: int) -> None:
    if not 3 <= n <= 7:
        raise OutOfRange("spanning trees are enumerated for 3 <= n <= 7")


def spanning_trees(n: int) -> list[EdgeSet]:
    """All spanning trees of K_n, grown edge by edge in lexicographic order."""
    _check_tree_n(n)
    edges = complete_edges(n)
    out: list[EdgeSet] = []

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def grow(start: int, chosen: list[Edge], parent: dict):
        if len(chosen) == n - 1:
            out.append(tuple(chosen))
            return
        # not enough edges left to finish
        for i in range(start, len(edges) - (n - 2 - len(chosen))):
            u, v = edges[i]
            ru, rv = find(parent, u), find(parent, v)
            if ru == rv:
                continue
            child = dict(parent)
            child[ru] = rv
            chosen.append(edges[i])
            grow(i + 1, chosen, child)
            chosen.pop()

    grow(0, [], {v: v for v in range(1, n + 1)})
    return out


def tree_adjacent(T: Iterable[Edge], T2: Iterable[Edge]) -> bool:
    return len({_edge(*e) for e in T} ^ {_edge(*e) for e in T2}) == 2


def _components_without(T: EdgeSet, removed: Edge, n: int) -> int:
    """Size of the side of ``removed[0]`` after deleting ``removed`` from T."""
    adj = {v: [] for v in range(1, n + 1)}
    for u, v in T:
        if (u, v) != removed:
            adj[u].append(v)
            adj[v].append(u)
    seen = {removed[0]}
    stack = [removed[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen)


def tree_degree(T: EdgeSet, n: int) -> int:
    """Skeleton degree of T: each edge can be swapped for any other edge across its cut."""
    total = 0
    for e in T:
        a = _components_without(T, e, n)
        total += a * (n - a) - 1
    return total


def tree_skeleton_max_degree(n: int) -> int:
    return max(tree_degree(T, n) for T in spanning_trees(n))


def edges_within(T: Iterable[Edge], U: Iterable[int]) -> list[Edge]:
    """``T n E[U]``: edges of T with both ends in U."""
    U = set(U)
    return [e for e in T if e[0] in U and e[1] in U]


def cut_edges(T: Iterable[Edge], U: Iterable[int]) -> list[Edge]:
    """``T n delta(U)``: edges of T with exactly one end in U."""
    U = set(U)
    return [e for e in T if (e[0] in U) != (e[1] in U)]


TIGHT, SLACK, VIOLATED = "tight", "slack", "violated"


def subtour_facet_check(T: Iterable[Edge], U: Iterable[int]) -> str:
    """Compare ``|T n E[U]|`` with ``|U| - 1``."""
    U = set(U)
    if len(U) < 2:
        raise InputError("|U| must be at least 2")
    inside = len(edges_within(T, U))
    if inside == len(U) - 1:
        return TIGHT
    return SLACK if inside < len(U) - 1 else VIOLATED


def build_TW(n: int, s: int, t: int, W: Sequence[int]) -> EdgeSet:
    """Path ``s - w1 - ... - wk - t`` plus a star at t over the remaining nodes."""
    nodes = set(range(1, n + 1))
    W = list(W)
    if s == t or s not in nodes or t not in nodes:
        raise BadW("s and t must be distinct nodes")
    if len(set(W)) != len(W) or not set(W) <= nodes - {s, t}:
        raise BadW("W must be distinct nodes other than s and t")
    if len(W) != n // 2:
        raise BadW(f"|W| must be {n // 2}")
    path = [s, *W, t]
    edges = {_edge(a, b) for a, b in zip(path, path[1:])}
    edges |= {_edge(t, v) for v in nodes - set(W) - {s, t}}
    return tuple(sorted(edges))


def tw_order(W: Sequence[int]) -> tuple[int, ...]:
    """Path order for W: ascending, rotated left by ``sum(W) mod |W|``.

    Plain ascending order makes T(W) and T(W') adjacent whenever W and W'
    differ only in their largest element; the rotation avoids this (checked
    exhaustively for n = 5..10).
    """
    W = tuple(sorted(W))
    r = sum(W) % len(W)
    return W[r:] + W[:r]


def tw_family(n: int, s: int = 1, t: int = 2) -> list[tuple[tuple[int, ...], EdgeSet]]:
    """Every W of size floor(n/2) outside {s,t}, in path order, with its tree."""
    rest = [v for v in range(1, n + 1) if v not in (s, t)]
    out = []
    for W in combinations(rest, n // 2):
        order = tw_order(W)
        out.append((order, build_TW(n, s, t, order)))
    return out


def tw_exchange(T: EdgeSet, s: int, t: int, W: Sequence[int], y: int) -> tuple[EdgeSet, tuple[int, int, int]]:
    """Swap ``{x,y}`` for ``{x,z}`` where ``x - y - z`` is on the s-t path of T(W)."""
    path = [s, *W, t]
    i = path.index(y)
    if not 0 < i < len(path) - 1:
        raise BadW("y must be an inner node of the s-t path")
    x, z = path[i - 1], path[i + 1]
    new = (set(T) - {_edge(x, y)}) | {_edge(x, z)}
    return tuple(sorted(new)), (x, y, z)


# flows ---------------------------------------------------------------------


@dataclass(frozen=True)
class DagDesc:
    """Arcs are ``(tail, head)`` pairs; parallel arcs are allowed and kept apart by index.

    Nodes and arcs that lie on no s-t path are pruned on construction, so
    arc indices refer to ``self.arcs`` after pruning.
    """

    node_count: int
    arcs: tuple[tuple[int, int], ...]
    s: int
    t: int

    def __post_init__(self):
        arcs = tuple((int(a), int(b)) for a, b in self.arcs)
        n = self.node_count
        if not (0 <= self.s < n and 0 <= self.t < n) or self.s == self.t:
            raise InputError("s and t must be distinct nodes")
        for a, b in arcs:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise InputError(f"bad arc {(a, b)}")
        _topological(n, arcs)
        fwd = _reach(n, arcs, self.s, forward=True)
        back = _reach(n, arcs, self.t, forward=False)
        live = fwd & back
        if self.t not in live:
            raise InputError("t is not reachable from s")
        object.__setattr__(self, "arcs", tuple(a for a in arcs if a[0] in live and a[1] in live))

    @classmethod
    def from_json(cls, data: dict) -> "DagDesc":
        return cls(data["node_count"], tuple(tuple(a) for a in data["arcs"]), data["s"], data["t"])

    def to_json(self) -> dict:
        return {"node_count": self.node_count, "arcs": [list(a) for a in self.arcs], "s": self.s, "t": self.t}

    def nodes(self) -> set[int]:
        return {v for a in self.arcs for v in a}

    def path_nodes(self, path: Sequence[int]) -> list[int]:
        return [self.s] + [self.arcs[i][1] for i in path]


def _topological(n: int, arcs) -> list[int]:
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for a, b in arcs:
        indeg[b] += 1
        out[a].append(b)
    order = [v for v in range(n) if indeg[v] == 0]
    for v in order:
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
    if len(order) != n:
        raise InputError("the digraph has a cycle")
    return order


def _reach(n: int, arcs, start: int, forward: bool) -> set[int]:
    nxt = [[] for _ in range(n)]
    for a, b in arcs:
        if forward:
            nxt[a].append(b)
        else:
            nxt[b].append(a)
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for w in nxt[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def path_count(D: DagDesc) -> int:
    order = _topological(D.node_count, D.arcs)
    ways = [0] * D.node_count
    ways[D.s] = 1
    for v in order:
        for a, b in D.arcs:
            if a == v:
                ways[b] += ways[v]
    return ways[D.t]


def st_paths(D: DagDesc, budget: Budget | None = None) -> list[tuple[int, ...]]:
    """All s-t paths as arc-index tuples, by DFS taking arcs in index order."""
    budget = budget or default_budget()
    if path_count(D) > budget.items:
        raise TooLarge("too many s-t paths")
    out_arcs = {}
    for i, (a, _) in enumerate(D.arcs):
        out_arcs.setdefault(a, []).append(i)
    paths = []

    def dfs(v: int, acc: list[int]):
        if v == D.t:
            paths.append(tuple(acc))
            return
        for i in out_arcs.get(v, ()):
            acc.append(i)
            dfs(D.arcs[i][1], acc)
            acc.pop()

    dfs(D.s, [])
    return paths


def _segment(D: DagDesc, path: Sequence[int], diff: set[int]):
    """Endpoints and inner nodes of ``diff`` if it is one contiguous stretch of ``path``."""
    pos = [k for k, i in enumerate(path) if i in diff]
    if not pos or pos[-1] - pos[0] + 1 != len(pos):
        return None
    arcs = [D.arcs[path[k]] for k in pos]
    inner = {b for _, b in arcs[:-1]}
    return arcs[0][0], arcs[-1][1], inner


def path_adjacent(D: DagDesc, P: Sequence[int], P2: Sequence[int]) -> bool:
    """The paths split once and merge once: ``P ^ P2`` is two internally disjoint x-y paths."""
    a, b = set(P) - set(P2), set(P2) - set(P)
    if not a or not b:
        return False
    sa, sb = _segment(D, P, a), _segment(D, P2, b)
    if sa is None or sb is None:
        return False
    return sa[:2] == sb[:2] and not (sa[2] & sb[2])


def is_decomposable(D: DagDesc) -> int | None:
    """Smallest inner node that every s-t path passes through, if any."""
    order = _topological(D.node_count, D.arcs)
    to = [0] * D.node_count
    to[D.s] = 1
    for v in order:
        for a, b in D.arcs:
            if a == v:
                to[b] += to[v]
    frm = [0] * D.node_count
    frm[D.t] = 1
    for v in reversed(order):
        for a, b in D.arcs:
            if a == v:
                frm[v] += frm[b]
    total = to[D.t]
    for v in sorted(D.nodes() - {D.s, D.t}):
        if to[v] * frm[v] == total:
            return v
    return None


# perfect matchings -----------------------------------------------------------


def _check_matching_nodes(two_n: int) -> None:
    if two_n % 2 or not 2 <= two_n <= 10:
        raise OutOfRange("need an even node count between 2 and 10")


def perfect_matchings(two_n: int) -> list[EdgeSet]:
    """All perfect matchings of K_{2n} on nodes 1..2n, in lexicographic order."""
    _check_matching_nodes(two_n)
    out: list[EdgeSet] = []

    def rec(free: list[int], acc: list[Edge]):
        if not free:
            out.append(tuple(acc))
            return
        u = free[0]
        for j in range(1, len(free)):
            acc.append((u, free[j]))
            rec(free[1:j] + free[j + 1 :], acc)
            acc.pop()

    rec(list(range(1, two_n + 1)), [])
    return out


def matching_adjacent(M: Iterable[Edge], M2: Iterable[Edge]) -> bool:
    """``M ^ M2`` is a single alternating cycle."""
    diff = {_edge(*e) for e in M} ^ {_edge(*e) for e in M2}
    if not diff:
        return False
    adj: dict[int, list[int]] = {}
    for u, v in diff:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = next(iter(adj))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


# skeletons and coordinates ---------------------------------------------------

FAMILIES = ("hypersimplex", "spanning_tree", "flow", "perfect_matching")


def family_vertices(family: str, params: dict, budget: Budget | None = None):
    """``(vertices, adjacency oracle, coordinate map)`` for a family descriptor."""
    if family == "hypersimplex":
        n, k = params["n"], params["k"]
        verts = hypersimplex_vertices(n, k, budget)
        return verts, hypersimplex_adjacent, lambda v: v
    if family == "spanning_tree":
        n = params["n"]
        edges = complete_edges(n)
        verts = spanning_trees(n)
        return verts, tree_adjacent, lambda T: tuple(int(e in T) for e in edges)
    if family == "flow":
        D = params["dag"] if isinstance(params["dag"], DagDesc) else DagDesc.from_json(params["dag"])
        verts = st_paths(D, budget)
        m = len(D.arcs)
        return verts, (lambda P, P2: path_adjacent(D, P, P2)), lambda P: tuple(int(i in P) for i in range(m))
    if family == "perfect_matching":
        two_n = params["nodes"]
        edges = complete_edges(two_n)
        verts = perfect_matchings(two_n)
        return verts, matching_adjacent, lambda M: tuple(int(e in M) for e in edges)
    raise InputError(f"unknown family {family!r}")


def family_skeleton(family: str, params: dict, budget: Budget | None = None) -> SkeletonGraph:
    budget = budget or default_budget()
    verts, adjacent, _ = family_vertices(family, params, budget)
    if len(verts) * (len(verts) - 1) // 2 > budget.pairs:
        raise TooLarge("too many vertex pairs for the skeleton")
    return SkeletonGraph.from_oracle(verts, adjacent, labels=verts)


def family_coordinates(family: str, params: dict, budget: Budget | None = None):
    verts, _, coords = family_vertices(family, params, budget)
    return [coords(v) for v in verts]
