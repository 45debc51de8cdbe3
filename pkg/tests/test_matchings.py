from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplext.errors import InputError, NotAdjacent, NotAdjacentBase, PairwiseAdjacent
from simplext.families import matching_adjacent, perfect_matchings
from simplext.matchings import (
    Matching,
    adjacent_cycle_matching,
    components,
    cycle_chords,
    good_matching_exists,
    goodness,
    is_adjacent,
    strip_common,
    sym_diff_cycles,
    three_common_neighbor,
)


def M(*edges) -> Matching:
    return Matching(tuple(edges))


def diff_nodes(A: Matching, B: Matching) -> set[int]:
    return {v for e in set(A.edges) ^ set(B.edges) for v in e}


def check_cycle_contract(M1: Matching, M2: Matching) -> None:
    Mp = adjacent_cycle_matching(M1, M2)
    assert matching_adjacent(Mp.edges, M1.edges) and matching_adjacent(Mp.edges, M2.edges)
    assert diff_nodes(M1, M2) == diff_nodes(M1, Mp) == diff_nodes(M2, Mp)
    assert not set(Mp.edges) & (set(M1.edges) ^ set(M2.edges))


def brute_common_neighbors(all_matchings, triple) -> list:
    return [N for N in all_matchings if all(matching_adjacent(N, X) for X in triple)]


def test_sym_diff_cycles_examples():
    dec = sym_diff_cycles(M((1, 2), (3, 4)), M((1, 3), (2, 4)))
    assert len(dec.cycles) == 1 and set(dec.cycles[0]) == {1, 2, 3, 4}
    a, b = M((1, 2), (3, 4), (5, 6), (7, 8)), M((1, 4), (2, 3), (5, 8), (6, 7))
    assert len(sym_diff_cycles(a, b).cycles) == 2
    assert sym_diff_cycles(a, a).cycles == ()
    assert not is_adjacent(a, b) and not is_adjacent(a, a)
    assert is_adjacent(M((1, 2), (3, 4)), M((1, 3), (2, 4)))


def test_matching_validation():
    with pytest.raises(InputError):
        M((1, 2), (2, 3))
    with pytest.raises(InputError):
        is_adjacent(M((1, 2)), M((3, 4)))


def test_cycle_chords_formulas():
    chords, case = cycle_chords(tuple(range(6)))
    assert case == "odd" and {frozenset(c) for c in chords} == {frozenset(p) for p in [(0, 3), (2, 5), (4, 1)]}
    chords, case = cycle_chords(tuple(range(8)))
    assert case == "even"
    assert {frozenset(c) for c in chords} == {frozenset(p) for p in [(0, 2), (3, 5), (4, 7), (6, 1)]}
    chords, case = cycle_chords(tuple(range(4)))
    assert case == "l=2 special case" and {frozenset(c) for c in chords} == {frozenset((0, 2)), frozenset((1, 3))}


def test_six_cycle_walk_order():
    # cycle v0..v5 with v0v1, v2v3, v4v5 in M1; M1 ^ M' walks v0, v3, v2, v5, v4, v1
    M1 = M((0, 1), (2, 3), (4, 5))
    M2 = M((1, 2), (3, 4), (5, 0))
    Mp = adjacent_cycle_matching(M1, M2)
    assert set(Mp.edges) == {(0, 3), (2, 5), (1, 4)}


def test_four_cycle_both_sides_single_cycles():
    M1, M2 = M((0, 1), (2, 3)), M((1, 2), (0, 3))
    Mp = adjacent_cycle_matching(M1, M2)
    assert set(Mp.edges) == {(0, 2), (1, 3)}
    assert is_adjacent(Mp, M1) and is_adjacent(Mp, M2)


def test_adjacent_cycle_requires_adjacency():
    a, b = M((1, 2), (3, 4), (5, 6), (7, 8)), M((1, 4), (2, 3), (5, 8), (6, 7))
    with pytest.raises(NotAdjacent):
        adjacent_cycle_matching(a, b)


@pytest.mark.parametrize("nodes", [4, 6, 8])
def test_cycle_contract_exhaustive(nodes):
    ms = [Matching(m) for m in perfect_matchings(nodes)]
    for a, b in itertools.combinations(ms, 2):
        if is_adjacent(a, b):
            check_cycle_contract(a, b)
            check_cycle_contract(b, a)


def test_components_examples():
    a = M((1, 2), (3, 4), (5, 6), (7, 8))
    assert components(a, a)[0] == 4
    b = M((2, 3), (4, 5), (6, 7), (1, 8))
    assert components(a, b)[0] == 1
    c = M((1, 4), (2, 3), (5, 8), (6, 7))
    count, sets = components(a, c)
    assert count == 2 and sets == [frozenset({1, 2, 3, 4}), frozenset({5, 6, 7, 8})]


def test_goodness_flags():
    M1, M2 = M((1, 2), (3, 4), (5, 6), (7, 8)), M((1, 4), (2, 3), (5, 6), (7, 8))
    M3 = M((1, 5), (2, 6), (3, 7), (4, 8))
    Mp = good_matching_exists(M1, M2, M3)
    assert goodness(Mp, M1, M2, M3).good
    report = goodness(M3, M1, M2, M3)
    assert not report.D
    with pytest.raises(NotAdjacentBase):
        goodness(M3, M1, M3, M3)


def test_goodness_b_fails_for_an_outer_four_cycle():
    # M1, M2 differ on the 6-cycle over 1..6; M3 closes a 4-cycle on 7..10 with the chord matching
    M1 = M((1, 2), (3, 4), (5, 6), (7, 8), (9, 10))
    M2 = M((2, 3), (4, 5), (1, 6), (7, 8), (9, 10))
    M3 = M((1, 2), (3, 4), (5, 6), (7, 9), (8, 10))
    Mbar = adjacent_cycle_matching(M1, M2)
    report = goodness(Mbar, M1, M2, M3)
    assert not report.B and report.witnesses["B"] == [7, 8, 9, 10]


def test_strip_common():
    M1 = M((1, 2), (3, 4), (5, 6), (7, 8), (9, 10))
    M2 = M((1, 4), (2, 3), (5, 6), (7, 8), (9, 10))
    M3 = M((1, 5), (2, 6), (3, 7), (4, 8), (9, 10))
    (r1, r2, r3), smap = strip_common(M1, M2, M3)
    assert smap.common == ((9, 10),) and not smap.degenerate
    assert r1.nodes == frozenset(range(1, 9))
    assert smap.restore(r1) == M1
    a, b = M((1, 2), (3, 4)), M((1, 3), (2, 4))
    c = M((1, 4), (2, 3))
    (x, y, z), smap = strip_common(a, b, c)
    assert smap.common == () and (x, y, z) == (a, b, c)
    _, smap = strip_common(a, a, a)
    assert smap.degenerate


def test_good_matching_examples():
    M1, M2 = M((1, 2), (3, 4), (5, 6), (7, 8)), M((1, 4), (2, 3), (5, 6), (7, 8))
    M3 = M((1, 2), (3, 4), (5, 7), (6, 8))
    Mp = good_matching_exists(M1, M2, M3)
    assert goodness(Mp, M1, M2, M3).good
    # no outer component: the chord matching is returned unchanged
    M3 = M((1, 5), (2, 6), (3, 7), (4, 8))
    assert good_matching_exists(M1, M2, M3) == adjacent_cycle_matching(M1, M2)
    # one outer 4-cycle on 9..12 gets spliced into the component of the M1-M2 cycle
    M1 = M((1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (11, 12))
    M2 = M((2, 3), (4, 5), (1, 6), (7, 8), (9, 10), (11, 12))
    M3 = M((1, 7), (2, 8), (3, 4), (5, 6), (9, 11), (10, 12))
    Mbar = adjacent_cycle_matching(M1, M2)
    before = goodness(Mbar, M1, M2, M3)
    assert not before.B
    Mp = good_matching_exists(M1, M2, M3)
    after = goodness(Mp, M1, M2, M3)
    assert after.good and after.c < before.c


def test_good_matching_errors():
    a, b, c = M((1, 2), (3, 4)), M((1, 3), (2, 4)), M((1, 4), (2, 3))
    with pytest.raises(PairwiseAdjacent):
        good_matching_exists(a, b, c)
    M1, M2 = M((1, 2), (3, 4), (5, 6), (7, 8)), M((1, 4), (2, 3), (5, 6), (7, 8))
    with pytest.raises(InputError):
        good_matching_exists(M1, M2, M((1, 3), (2, 4), (5, 6), (7, 8)))


def test_three_common_neighbor_examples():
    ms = [Matching(m) for m in perfect_matchings(6)]
    for a, b, c in itertools.islice(itertools.permutations(ms, 3), 200):
        if is_adjacent(a, b):
            assert three_common_neighbor(a, b, c).kind == "pairwise_adjacent"
    M1, M2 = M((1, 2), (3, 4), (5, 6), (7, 8)), M((1, 4), (2, 3), (5, 6), (7, 8))
    M3 = M((1, 5), (2, 6), (3, 7), (4, 8))
    res = three_common_neighbor(M1, M2, M3)
    assert res.kind == "common_neighbor"
    N = res.matching
    assert all(matching_adjacent(N.edges, X.edges) for X in (M1, M2, M3))
    all8 = perfect_matchings(8)
    assert N.edges in brute_common_neighbors(all8, (M1.edges, M2.edges, M3.edges))
    with pytest.raises(NotAdjacentBase):
        three_common_neighbor(M1, M3, M2)


def test_common_edges_are_reinserted():
    M1 = M((1, 2), (3, 4), (5, 6), (7, 8), (9, 10))
    M2 = M((1, 4), (2, 3), (5, 6), (7, 8), (9, 10))
    M3 = M((1, 5), (2, 6), (3, 7), (4, 8), (9, 10))
    res = three_common_neighbor(M1, M2, M3)
    assert (9, 10) in res.matching.edges and res.stripped == ((9, 10),)


def test_exhaustive_k6_triples_against_brute_force():
    raw = perfect_matchings(6)
    ms = [Matching(m) for m in raw]
    for a, b, c in itertools.product(ms, repeat=3):
        if not is_adjacent(a, b):
            continue
        res = three_common_neighbor(a, b, c)
        pairwise = matching_adjacent(a.edges, c.edges) and matching_adjacent(b.edges, c.edges)
        assert (res.kind == "pairwise_adjacent") == pairwise
        if not pairwise:
            assert res.matching.edges in brute_common_neighbors(raw, (a.edges, b.edges, c.edges))


# properties ------------------------------------------------------------------


@st.composite
def triples(draw, max_pairs: int = 6):
    n = draw(st.integers(2, max_pairs))
    nodes = draw(st.permutations(list(range(1, 2 * n + 1))))
    M1 = [(nodes[2 * i], nodes[2 * i + 1]) for i in range(n)]
    k = draw(st.integers(2, n))
    chosen = draw(st.permutations(range(n)))[:k]
    # rewire the chosen edges into one alternating cycle
    M2 = [M1[i] for i in range(n) if i not in chosen]
    for t in range(k):
        a = M1[chosen[t]]
        b = M1[chosen[(t + 1) % k]]
        M2.append((a[1], b[0]))
    other = draw(st.permutations(list(range(1, 2 * n + 1))))
    M3 = [(other[2 * i], other[2 * i + 1]) for i in range(n)]
    return Matching(tuple(M1)), Matching(tuple(M2)), Matching(tuple(M3))


@settings(max_examples=150, deadline=None)
@given(triples())
def test_common_neighbor_property(triple):
    M1, M2, M3 = triple
    assert is_adjacent(M1, M2)
    check_cycle_contract(M1, M2)
    res = three_common_neighbor(M1, M2, M3)
    if res.kind == "pairwise_adjacent":
        assert is_adjacent(M1, M3) and is_adjacent(M2, M3)
        return
    N = res.matching
    assert all(matching_adjacent(N.edges, X.edges) for X in triple)
    for step in res.trace:
        assert step["c_after"] == step["c_before"] - 1
