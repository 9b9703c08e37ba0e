import pytest
from hypothesis import given, settings, strategies as st

from evade import cantor
from evade.boards import FiniteExplicit, parse_board
from evade.graph import FiniteGraph, all_graphs
from evade.wfunc import (
    WFunction,
    braided_check,
    covering_set,
    edge_oracle,
    is_covering,
    level_equivalence,
    parse_wfunction,
    validate_w,
    validate_w_all_graphs,
)

OMEGA_BOARDS = ["komega", "turan:2", "turan:3", "cantor"]


def _degree_like(value, witness=lambda a, nb: frozenset({a})):
    return WFunction("broken", 2, 2, 1, value, witness)


@pytest.mark.parametrize("spec", ["dmin:1", "dmin:2", "cmin:2", "cmin:3"])
def test_instances_validate_exhaustively(spec):
    r = validate_w_all_graphs(parse_wfunction(spec), 4)
    assert r.passed, r.summary()
    assert "w6" in r.skipped


@pytest.mark.parametrize(
    "broken,clause",
    [
        (_degree_like(lambda a, nb: 2 - min(2, sum(1 for _ in nb(a)))), "w1"),
        (_degree_like(lambda a, nb: min(2, sum(1 for _ in nb(a))), lambda a, nb: frozenset()), "w4"),
    ],
)
def test_validator_catches_broken_functions(broken, clause):
    r = validate_w_all_graphs(broken, 4)
    assert not r.passed
    assert r.violation.clause == clause


def test_sampled_validation_on_twelve_vertices():
    r = validate_w(parse_wfunction("cmin:3"), FiniteGraph.complete(12), sample_budget=100)
    assert r.passed and r.checks["w5"] > 0


@pytest.mark.parametrize("spec", ["dmin:1", "dmin:2", "dmin:3", "cmin:2", "cmin:3"])
def test_full_level_means_named_property(spec):
    wf = parse_wfunction(spec)
    for n in range(1, 6):
        for g in all_graphs(n):
            assert level_equivalence(wf, g)


def test_values_on_known_graphs():
    path = FiniteGraph.path(4)
    nb = edge_oracle(path.edges, path.n)
    assert [parse_wfunction("dmin:2").value(a, nb) for a in range(4)] == [1, 2, 2, 1]
    assert [parse_wfunction("cmin:3").value(a, nb) for a in range(4)] == [2, 2, 2, 2]
    assert parse_wfunction("cmin:5").value(0, nb) == 3


@pytest.mark.parametrize("bad", ["dmin", "dmin:x", "cmin:1", "dmin:0", "foo:2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_wfunction(bad)


# ---- boards and covering sets


@pytest.mark.parametrize("spec", OMEGA_BOARDS)
def test_board_nbr_matches_contains(spec):
    b = parse_board(spec)
    for v in range(40):
        nb = b.nbr(v)
        for u in range(40):
            assert (u in nb) == b.contains(u, v), (v, u)


@pytest.mark.parametrize("spec", OMEGA_BOARDS)
@given(st.sets(st.integers(0, 30), max_size=5))
@settings(max_examples=40, deadline=None)
def test_covering_set_avoids_and_covers(spec, excluded):
    b = parse_board(spec)
    L = covering_set(b, excluded)
    assert not L & excluded
    window = 2 * max(L | excluded | {1}) + 4
    if spec == "cantor":
        window = max(window, cantor.level_range(cantor.level(max(L)) + 2).stop)
    assert is_covering(b.truncation(window), L)


@pytest.mark.parametrize("spec", OMEGA_BOARDS)
def test_omega_boards_braided(spec):
    assert braided_check(parse_board(spec))


def test_finite_braided_sanity():
    assert braided_check(FiniteGraph.complete(5))
    assert not braided_check(FiniteGraph.path(4))


def test_lower_degree_counts_earlier_neighbours():
    for spec in OMEGA_BOARDS:
        b = parse_board(spec)
        for j in range(1, 60):
            assert b.lower_degree(j) == sum(b.contains(i, j) for i in range(j)), (spec, j)


def test_parse_board_errors():
    for bad in ["turan:1", "turan:x", "g6:zz", "nope"]:
        with pytest.raises(ValueError):
            parse_board(bad)
    assert isinstance(parse_board("g6:Bw"), FiniteExplicit)
