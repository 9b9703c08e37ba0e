import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from evade import audit
from evade.audit import (
    connect_audit,
    degree_audit,
    star_audit_exhaustive,
    star_audit_random,
    star_shape,
    star_terminal,
)
from evade.boards import FiniteExplicit, parse_board
from evade.engine import GameConfig, GameView, LargeFamily, ProtocolViolation, Winner, play, replay
from evade.graph import FiniteGraph, FinitePregraph, all_components_two_edge_connected, all_pairs, bridges
from evade.properties import Property, star, terminal_status
from evade.strategies import (
    BridgeLastSeeker,
    CycleForestHider,
    HumanSeeker,
    LexSeeker,
    ObliviousHider,
    RandomSeeker,
    StarHider,
    StrategyError,
    assert_replay_deterministic,
    parse_hider,
    parse_seeker,
)


def _cfg(g, spec, fuel=10_000, family="allpairs"):
    return GameConfig(FiniteExplicit(g), Property.parse(spec), LargeFamily.parse(family), fuel=fuel)


@st.composite
def connected_graphs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    pairs = all_pairs(n)
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return FiniteGraph(n, frozenset(p for p, k in zip(pairs, keep) if k))


# ---- engine


def test_transcript_fields_and_json():
    tr = play(LexSeeker(), CycleForestHider(), _cfg(FiniteGraph.complete(4), "cycle"))
    d = json.loads(tr.to_json())
    assert d["board"] == "g6:C~" and d["seeker"] == "lex" and d["hider"] == "cycle-forest"
    assert [m["turn"] for m in d["moves"]] == list(range(6))
    # the forest hider never closes a cycle, so every pair gets probed
    assert d["terminal_reason"] == "ForcedFalse" and d["winner"] == "Bob"
    assert tr.to_dot().count("--") == 6


def test_observer_sees_every_move():
    seen = []
    tr = play(RandomSeeker(3), CycleForestHider(), _cfg(FiniteGraph.complete(5), "cycle"), observer=lambda v, m: seen.append(m))
    assert seen == tr.moves


def test_fuel_stops_the_game():
    tr = play(LexSeeker(), CycleForestHider(), _cfg(FiniteGraph.complete(5), "cycle", fuel=3))
    assert (tr.terminal_reason, tr.winner, len(tr.moves)) == ("FuelExhausted", Winner.UNDECIDED, 3)
    with pytest.raises(ValueError):
        _cfg(FiniteGraph.complete(3), "cycle", fuel=0)


class _Repeater:
    name = "repeat"

    def next(self, view):
        return (0, 1)


class _Outsider:
    name = "outside"

    def next(self, view):
        return (0, 2)


def test_protocol_violations():
    with pytest.raises(ProtocolViolation, match="already determined"):
        play(_Repeater(), CycleForestHider(), _cfg(FiniteGraph.complete(4), "cycle"))
    with pytest.raises(ProtocolViolation, match="not an allowed pair"):
        play(_Outsider(), CycleForestHider(), _cfg(FiniteGraph.path(3), "connected"))


@pytest.mark.parametrize("hider", ["cycle-forest", "degree:2", "connect", "star:2"])
def test_replay_is_deterministic(hider):
    cfg = _cfg(FiniteGraph.complete(5), "dmin:2")
    assert_replay_deterministic(lambda: RandomSeeker(11), lambda: parse_hider(hider), cfg)


def test_replay_against_other_hider_keeps_probes():
    cfg = _cfg(FiniteGraph.complete(4), "connected")
    tr = play(LexSeeker(), CycleForestHider(), cfg)
    hidden = FiniteGraph.complete(4)
    again = replay(tr, ObliviousHider(hidden), cfg)
    assert all(m.answer == "edge" for m in again.moves)


# ---- hiders


@given(connected_graphs(), st.integers(0, 1000))
@settings(max_examples=60, deadline=None)
def test_cycle_forest_forces_every_pair_on_bridgeless_graphs(g, seed):
    tr = play(RandomSeeker(seed), CycleForestHider(check=True), _cfg(g, "cycle"))
    if all_components_two_edge_connected(g):
        assert tr.determined_count == len(g.edges)
    # the hider's edges always form a forest
    assert len(tr.final_edges) <= g.n - 1


@given(connected_graphs())
@settings(max_examples=40, deadline=None)
def test_bridge_last_beats_cycle_forest(g):
    br = bridges(g)
    if not br:
        return
    seeker = BridgeLastSeeker(br[0], g)
    tr = play(seeker, CycleForestHider(), _cfg(g, "cycle"))
    assert tr.winner is Winner.ALICE
    assert list(br[0]) not in [list(p) for p in tr.final_edges + tr.final_nonedges]


def test_bridge_last_rejects_non_bridges():
    with pytest.raises(StrategyError, match="not a bridge"):
        BridgeLastSeeker((0, 1), FiniteGraph.cycle(4))
    with pytest.raises(StrategyError, match="not an allowed pair"):
        BridgeLastSeeker((0, 2), FiniteGraph.path(3))


def test_oblivious_hider_reports_hidden_graph():
    hidden = FiniteGraph(4, {(0, 1), (1, 2), (2, 0)})
    tr = play(LexSeeker(), ObliviousHider(hidden), _cfg(FiniteGraph.complete(4), "cycle"))
    assert tr.terminal_reason == "ForcedTrue"
    assert set(map(tuple, tr.final_edges)) <= hidden.edges


def test_oblivious_template_on_omega():
    tr = play(LexSeeker(), parse_hider("oblivious:blocks:3"), GameConfig(parse_board("komega"), Property.parse("cycle"), fuel=50))
    assert tr.terminal_reason == "ForcedTrue"


def test_star_rule_matches_exhaustive_expansion():
    # the exhaustive audit inlines the star rule; check it against the strategy
    m, n = 5, 3
    hider = StarHider(n)
    board = FiniteExplicit(FiniteGraph.complete(m))
    view = GameView(board)
    for p in all_pairs(m):
        want = view.deg_e(p[0]) < n - 1 and view.deg_e(p[1]) < n - 1
        ans = hider.answer(view, p)
        assert ans == want
        view.record(p, ans)


@given(st.integers(4, 6), st.integers(1, 3), st.data())
@settings(max_examples=80, deadline=None)
def test_star_terminal_and_B_match_general_evaluator(m, n, data):
    pairs = all_pairs(m)
    marks = data.draw(st.lists(st.sampled_from("EN?"), min_size=len(pairs), max_size=len(pairs)))
    E = {p for p, s in zip(pairs, marks) if s == "E"}
    N = {p for p, s in zip(pairs, marks) if s == "N"}
    deg_e, deg_n = [0] * m, [0] * m
    for u, v in E:
        deg_e[u] += 1
        deg_e[v] += 1
    for u, v in N:
        deg_n[u] += 1
        deg_n[v] += 1
    got = star_terminal(deg_e, deg_n, m, n)
    want = terminal_status(star(n), FinitePregraph(FiniteGraph.complete(m), E, N))
    assert {True: "ForcedTrue", False: "ForcedFalse", None: "Open"}[got] == want.value
    ok, B = star_shape(E, N, m, n)
    loose = set(pairs) - E - N
    assert B == sorted({x for p in loose for x in p})
    assert ok == (len(B) <= n)


@pytest.mark.parametrize("m,n", [(4, 2), (5, 2), (5, 3)])
def test_star_exhaustive_canonical_matches_plain(m, n):
    a = star_audit_exhaustive(m, n, canonical=True)
    b = star_audit_exhaustive(m, n, canonical=False)
    assert a.ok and b.ok
    assert a.stats["positions"] < b.stats["positions"]


def test_star_random_audit():
    for seed in range(5):
        r = star_audit_random(8, 2, seed)
        assert r.ok, r.violations


# ---- audits and negative controls


def test_degree_and_connect_audits_clean():
    for n in (1, 2):
        assert degree_audit(n, seed=1, probes=200).ok
    assert connect_audit(seed=1, probes=200).ok


class _Yes:
    name = "yes"

    def answer(self, view, probe):
        return True


class _No:
    name = "no"
    last_rule = None

    def answer(self, view, probe):
        return False


def test_connect_audit_catches_a_greedy_hider(monkeypatch):
    monkeypatch.setattr(audit, "ConnectHider", _Yes)
    assert not connect_audit(seed=0, probes=100).ok


def test_degree_audit_catches_a_stingy_hider(monkeypatch):
    monkeypatch.setattr(audit, "DegreeHider", lambda n: _No())
    assert not degree_audit(2, seed=0, probes=300).ok


# ---- specs and the human seeker


@pytest.mark.parametrize("spec", ["cycle-forest", "degree:2", "connect", "star:3", "oblivious:g6:Bw", "oblivious:blocks:2"])
def test_parse_hider(spec):
    assert parse_hider(spec).answer is not None


@pytest.mark.parametrize("bad", ["degree", "degree:x", "star:", "oblivious:", "greedy"])
def test_parse_hider_errors(bad):
    with pytest.raises(StrategyError):
        parse_hider(bad)


def test_parse_seeker():
    assert parse_seeker("lex").name == "lex"
    assert parse_seeker("random:4").name == "random:4"
    assert parse_seeker("bridge-last:2-3", FiniteGraph.path(4)).name == "bridge-last:2-3"
    for bad in ["random", "random:x", "bridge-last:2", "alpha"]:
        with pytest.raises(StrategyError):
            parse_seeker(bad)


def test_human_seeker_reprompts_on_bad_input():
    out = io.StringIO()
    seeker = HumanSeeker(io.StringIO("x\n0 0\n0 1\n1-2\n0 2\n"), out)
    tr = play(seeker, CycleForestHider(), _cfg(FiniteGraph.complete(3), "cycle"))
    assert [m.pair for m in tr.moves] == [(0, 1), (1, 2), (0, 2)]
    assert out.getvalue().count("enter two distinct vertex ids") == 2
