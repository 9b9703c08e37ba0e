import math

import pytest
from hypothesis import given, settings, strategies as st

from evade.engine import LargeFamily
from evade.graph import FiniteGraph, all_components_two_edge_connected, graphs_up_to_isomorphism
from evade.properties import Property, holds
from evade.solver import (
    SizeBoundExceeded,
    decision_tree_complexity,
    min_probes_against,
    play_optimal,
    solve,
)

MONOTONE = ["cycle", "dmin:1", "dmin:2", "cmin:2", "cmin:3", "connected", "star:2", "clique:3", "p3", "notbipartite"]


@st.composite
def small_graphs(draw, max_n=5, max_pairs=8):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    chosen = [p for p, k in zip(pairs, keep) if k][:max_pairs]
    return FiniteGraph(n, frozenset(chosen))


# ---- frozen values


def _nontrivial(spec, n):
    prop = Property.parse(spec)
    return not holds(prop, FiniteGraph.empty(n)) and holds(prop, FiniteGraph.complete(n))


@pytest.mark.parametrize("spec,n", [(s, n) for s in MONOTONE for n in (2, 3, 4) if _nontrivial(s, n)])
def test_nontrivial_monotone_properties_elusive_on_prime_power_cliques(spec, n):
    # on K_n with n a prime power every nontrivial monotone property needs all pairs
    r = solve(FiniteGraph.complete(n), Property.parse(spec))
    assert (r.value, r.winner, r.strongly_elusive) == (math.comb(n, 2), "Bob", True)


@pytest.mark.parametrize(
    "g,spec,winner,value",
    [
        (FiniteGraph.path(3), "cycle", "Alice", 0),
        (FiniteGraph.cycle(3), "cycle", "Bob", 3),
        (FiniteGraph.cycle(5), "cycle", "Bob", 5),
        (FiniteGraph(4, {(0, 1), (1, 2), (0, 2), (2, 3)}), "cycle", "Alice", 3),
        (FiniteGraph.complete(5), "scorpion", "Bob", 10),
    ],
)
def test_frozen_values(g, spec, winner, value):
    r = solve(g, Property.parse(spec))
    assert (r.winner, r.value) == (winner, value)


def test_scorpion_not_elusive_on_six_vertices():
    r = solve(FiniteGraph.complete(6), Property.parse("scorpion"))
    assert (r.winner, r.value, r.allowed_pairs) == ("Alice", 14, 15)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_decision_tree_complexity_on_cliques(n):
    assert decision_tree_complexity(Property.parse("cycle"), n) == math.comb(n, 2)
    assert decision_tree_complexity(Property.parse("connected"), n) == math.comb(n, 2)


# ---- invariants


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_cycle_winner_is_two_edge_connectivity(g):
    assert (solve(g, Property.parse("cycle")).winner == "Bob") == all_components_two_edge_connected(g)


@given(small_graphs(max_pairs=7), st.sampled_from(MONOTONE))
@settings(max_examples=40, deadline=None)
def test_memo_and_plain_search_agree(g, spec):
    prop = Property.parse(spec)
    a, b = solve(g, prop), solve(g, prop, memo=False)
    assert (a.winner, a.value) == (b.winner, b.value)
    assert a.winner in ("Alice", "Bob")


@given(small_graphs(max_pairs=7), st.sampled_from(MONOTONE))
@settings(max_examples=40, deadline=None)
def test_extracted_strategies_realise_the_value(g, spec):
    prop = Property.parse(spec)
    r = solve(g, prop)
    winner, determined = play_optimal(g, prop)
    assert (winner, determined) == (r.winner, r.value)


@given(small_graphs(max_pairs=7))
@settings(max_examples=40, deadline=None)
def test_value_invariant_under_relabelling(g):
    perm = list(range(g.n))[::-1]
    prop = Property.parse("connected")
    assert solve(g, prop).value == solve(g.relabel(perm), prop).value


@given(small_graphs(max_pairs=7))
@settings(max_examples=30, deadline=None)
def test_optimal_first_probes_achieve_value(g):
    prop = Property.parse("cycle")
    r = solve(g, prop)
    assert r.optimal_first_probes or r.value == 0
    assert set(r.optimal_first_probes) <= g.edges


def test_min_probes_against_trivial_hider():
    # a hider that always says nonedge ends the cycle game on C_4 after one probe
    g = FiniteGraph.cycle(4)
    assert min_probes_against(g, Property.parse("cycle"), lambda E, N, p: False) == 1
    assert min_probes_against(g, Property.parse("cycle"), lambda E, N, p: True) == 4


def test_small_complement_family():
    # [B]^2 is empty when |B| <= 1, so small:1 still asks for every pair
    g = FiniteGraph.cycle(4)
    r = solve(g, Property.parse("cycle"), LargeFamily.parse("small:1"))
    assert r.winner == "Bob"


def test_size_bounds(monkeypatch):
    with pytest.raises(SizeBoundExceeded):
        solve(FiniteGraph.complete(7), Property.parse("cycle"))
    with pytest.raises(SizeBoundExceeded):
        decision_tree_complexity(Property.parse("cycle"), 7)
    monkeypatch.setenv("EVADE_MEMO_LIMIT", "5")
    assert solve(FiniteGraph.complete(4), Property.parse("cycle")).value == 6
    monkeypatch.setenv("EVADE_MEMO_LIMIT", "lots")
    with pytest.raises(ValueError):
        solve(FiniteGraph.complete(3), Property.parse("cycle"))


def test_cycle_equivalence_on_four_vertices():
    for n in range(1, 5):
        for g in graphs_up_to_isomorphism(n):
            assert (solve(g, Property.parse("cycle")).winner == "Bob") == all_components_two_edge_connected(g)
