from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shapes import graph_from_edges, small_graphs
from simplext.closure import (
    DEGREE,
    EXACT,
    SINGLETON,
    closed_sets,
    closure,
    cn_step,
    cover_lower_bound,
    from_mask,
    is_closed,
    is_isolated,
    maximal_proper_closed_sets,
    pair_closure_sweep,
    sample_random_01,
    to_mask,
)
from simplext.config import Budget
from simplext.errors import BadW, ModeInapplicable, OutOfRange, TooLarge
from simplext.families import family_skeleton
from simplext.graph import SkeletonGraph, complete_graph, cycle_graph, path_graph


def naive_closure(G: SkeletonGraph, W) -> frozenset[int]:
    """Set-based fixpoint, written independently of the bitmask engine."""
    W = set(W)
    while True:
        add = {v for v in range(G.n) if v not in W and len(G.adjacency[v] & W) >= 2}
        if not add:
            return frozenset(W)
        W |= add


def naive_closed_sets(G: SkeletonGraph) -> set[frozenset[int]]:
    out = set()
    for r in range(G.n + 1):
        for W in itertools.combinations(range(G.n), r):
            if naive_closure(G, W) == frozenset(W):
                out.add(frozenset(W))
    return out


def brute_min_cover(G: SkeletonGraph) -> int:
    proper = [s for s in naive_closed_sets(G) if s and len(s) < G.n]
    for k in range(1, G.n + 1):
        for combo in itertools.combinations(proper, k):
            if frozenset().union(*combo) == frozenset(range(G.n)):
                return k
    raise AssertionError("singletons always cover")


def test_cn_step_examples():
    P3 = path_graph(3)
    assert cn_step(P3, {0, 2}) == {0, 1, 2}
    assert cn_step(cycle_graph(6), {4}) == {4}
    assert cn_step(complete_graph(3), {0, 1}) == {0, 1, 2}


def test_closure_on_hexagon_opposite_pair_is_proper():
    cert = closure(cycle_graph(6), {1, 4})
    assert cert.final == {1, 4} and cert.proper and cert.isolated


def test_closure_on_example_hexagon():
    from simplext.instances import example_extension
    from simplext.polytope import skeleton

    P, _, _, _ = example_extension()
    G = skeleton(P)
    # m2 = (5, 0) and m6 = (-5, 0) sit opposite each other on the hexagon
    m2, m6 = P.index((5, 0)), P.index((-5, 0))
    cert = closure(G, {m2, m6})
    assert cert.final == {m2, m6} and cert.proper


def test_closure_full_on_hypersimplex_and_complete_skeletons():
    G = family_skeleton("hypersimplex", {"n": 4, "k": 2})
    for u, v in itertools.combinations(range(G.n), 2):
        assert closure(G, {u, v}).final == frozenset(range(6))
    K = family_skeleton("perfect_matching", {"nodes": 6})
    assert closure(K, {0, 7}).final == frozenset(range(15))


def test_closure_trace_is_increasing():
    cert = closure(path_graph(5), {0, 2, 4})
    assert cert.trace[0] == cert.seed and cert.trace[-1] == cert.final
    assert all(a < b for a, b in zip(cert.trace, cert.trace[1:]))


def test_bad_seeds():
    with pytest.raises(BadW):
        closure(cycle_graph(4), set())
    with pytest.raises(BadW):
        closure(cycle_graph(4), {7})


def test_is_isolated_examples():
    C6 = cycle_graph(6)
    assert is_isolated(C6, {2})
    assert not is_isolated(C6, {0, 1})
    assert is_isolated(C6, {0, 3})


def test_sweeps():
    G = family_skeleton("hypersimplex", {"n": 5, "k": 2})
    assert pair_closure_sweep(G).all_full
    T = family_skeleton("spanning_tree", {"n": 4})
    rep = pair_closure_sweep(T, 2)
    assert rep.all_full and rep.conclusion == "every proper closed set is isolated"
    from simplext.instances import DECOMPOSABLE

    D = family_skeleton("flow", {"dag": DECOMPOSABLE["two_diamonds"]})
    rep = pair_closure_sweep(D)
    assert not rep.all_full
    u, v, final = rep.counterexamples[0]
    assert len(final) >= 2 and len(final) < D.n


def test_sweep_budget():
    with pytest.raises(TooLarge):
        pair_closure_sweep(complete_graph(10), budget=Budget(pairs=10))


def test_cover_bounds():
    G = family_skeleton("hypersimplex", {"n": 4, "k": 2})
    assert cover_lower_bound(G, SINGLETON).bound == 6
    assert cover_lower_bound(G, EXACT).bound == 6
    K = family_skeleton("perfect_matching", {"nodes": 6})
    assert cover_lower_bound(K, SINGLETON).bound == 15
    C6 = cycle_graph(6)
    cert = cover_lower_bound(C6, EXACT)
    assert cert.bound == brute_min_cover(C6) < 6
    covered = set().union(*map(set, cert.details["cover"]))
    assert covered == set(range(6))
    assert all(is_closed(C6, s) for s in cert.details["cover"])


def test_cover_modes_inapplicable():
    with pytest.raises(ModeInapplicable):
        cover_lower_bound(cycle_graph(6), SINGLETON)
    with pytest.raises(ModeInapplicable) as info:
        cover_lower_bound(cycle_graph(6), DEGREE)
    assert info.value.witness["pair"]
    with pytest.raises(ModeInapplicable):
        cover_lower_bound(SkeletonGraph.from_edges(1, []), EXACT)
    with pytest.raises(TooLarge):
        cover_lower_bound(cycle_graph(12), EXACT, Budget(cover_nodes=10))


def test_degree_bound_on_trees_of_k4():
    T = family_skeleton("spanning_tree", {"n": 4})
    cert = cover_lower_bound(T, DEGREE)
    assert cert.bound == T.max_degree() + 1


def test_sampler():
    rep = sample_random_01(3, 4, 20, seed=1)
    assert rep.samples == 20 and 0 <= rep.complete <= 20
    assert sample_random_01(3, 4, 20, seed=1) == rep  # seeded
    sq = sample_random_01(2, 4, 3)
    assert sq.complete == 0  # the only choice is the whole square
    with pytest.raises(OutOfRange):
        sample_random_01(2, 5, 1)


def test_masks_round_trip():
    assert from_mask(to_mask({0, 3, 5})) == {0, 3, 5}


# properties ------------------------------------------------------------------


@settings(max_examples=120, deadline=None)
@given(small_graphs(9), st.data())
def test_closure_operator_laws(G, data):
    nodes = st.sets(st.integers(0, G.n - 1), min_size=1)
    W = data.draw(nodes)
    W2 = W | data.draw(st.sets(st.integers(0, G.n - 1)))
    c = closure(G, W).final
    assert c == naive_closure(G, W)
    assert W <= c  # extensive
    assert c <= closure(G, W2).final  # monotone
    assert closure(G, c).final == c  # idempotent
    if is_isolated(G, W):
        assert cn_step(G, W) == W


@settings(max_examples=60, deadline=None)
@given(small_graphs(8))
def test_closed_set_enumeration_matches_brute_force(G):
    assert {from_mask(m) for m in closed_sets(G)} == naive_closed_sets(G)


@settings(max_examples=60, deadline=None)
@given(small_graphs(8))
def test_sweep_soundness_and_cover_sanity(G):
    if G.n < 2:
        return
    closed = naive_closed_sets(G)
    proper = [s for s in closed if s and len(s) < G.n]
    if pair_closure_sweep(G, 2).all_full:
        assert all(is_isolated(G, s) for s in proper)
    if pair_closure_sweep(G).all_full:
        assert all(len(s) == 1 for s in proper)
    bound = cover_lower_bound(G, EXACT).bound
    assert bound == brute_min_cover(G) <= G.n
    assert (bound == G.n) == all(len(s) == 1 for s in maximal_proper_closed_sets(G))
