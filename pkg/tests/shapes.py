"""Small polytopes, graphs and independent brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from simplext.graph import SkeletonGraph
from simplext.polytope import HPolytope, VPolytope


def box(n: int, lo=0, hi=1) -> HPolytope:
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = -1
        rows.append((tuple(e), -lo))
        e = [0] * n
        e[i] = 1
        rows.append((tuple(e), hi))
    return HPolytope(n, tuple(rows))


def simplex_h(n: int) -> HPolytope:
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = -1
        rows.append((tuple(e), 0))
    rows.append((tuple([1] * n), 1))
    return HPolytope(n, tuple(rows))


def points(*pts) -> VPolytope:
    return VPolytope.of(pts)


SEGMENT = points((0,), (1,))
TRIANGLE = points((0, 0), (1, 0), (0, 1))
SQUARE = points((0, 0), (1, 0), (0, 1), (1, 1))
PYRAMID = points((0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (1, 1, 1))
CUBE = VPolytope.of(itertools.product((0, 1), repeat=3))


def det(rows) -> Fraction:
    """Exact determinant by cofactor expansion (small matrices only)."""
    rows = [list(map(Fraction, r)) for r in rows]
    if len(rows) == 1:
        return rows[0][0]
    total = Fraction(0)
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * a * det(minor)
    return total


def facets_by_hyperplanes(pts) -> set[frozenset[int]]:
    """Facets of a full-dimensional point set in R^d: tight sets of supporting hyperplanes
    through d affinely independent points, found with determinants only."""
    pts = [tuple(map(Fraction, p)) for p in pts]
    d = len(pts[0])
    found = set()
    for combo in itertools.combinations(range(len(pts)), d):
        base = pts[combo[0]]
        dirs = [[x - y for x, y in zip(pts[c], base)] for c in combo[1:]]

        def side(p):
            return det(dirs + [[x - y for x, y in zip(p, base)]]) if dirs else p[0] - base[0]

        vals = [side(p) for p in pts]
        nonzero = [v for v in vals if v]
        if not nonzero or (any(v > 0 for v in nonzero) and any(v < 0 for v in nonzero)):
            continue
        tight = frozenset(i for i, v in enumerate(vals) if v == 0)
        # the tight set must span a hyperplane, not a lower-dimensional flat
        found.add(tight)
    return {f for f in found if not any(f < g for g in found)}


def graph_from_edges(n: int, edges) -> SkeletonGraph:
    return SkeletonGraph.from_edges(n, edges)


@st.composite
def small_graphs(draw, max_nodes: int = 8):
    n = draw(st.integers(1, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return SkeletonGraph.from_edges(n, chosen)


@st.composite
def rational_points(draw, dim: int, min_size: int, max_size: int, lo: int = -3, hi: int = 3):
    coords = st.integers(lo, hi)
    pts = draw(st.lists(st.tuples(*[coords] * dim), min_size=min_size, max_size=max_size, unique=True))
    return pts
