import json

import pytest
from hypothesis import given, settings, strategies as st

from evade import cantor
from evade.boards import parse_board
from evade.engine import LargeFamily
from evade.omega.corpus import braided_corpus, scorpion_corpus
from evade.omega.natset import NatSet
from evade.omega.play import batch_play
from evade.omega.regions import (
    AllPairs,
    BlockCliques,
    Comparable,
    Explicit,
    ModClassDistinct,
    NoPairs,
    Rect,
    RegionSet,
    Union,
    square,
    star,
)
from evade.omega.seekers import BraidedSeeker, ScorpionSeeker, parse_omega_seeker
from evade.omega.state import SymbolicState
from evade.omega.templates import (
    TemplateError,
    parse_template,
    template_graph,
    template_has_scorpion,
    template_w_truth,
    template_world,
)
from evade.omega.world import World
from evade.wfunc import parse_wfunction

WINDOW = 200


# ---- region algebra against pointwise membership


@st.composite
def natsets(draw):
    kind = draw(st.sampled_from(["finite", "cofinite", "residue", "subtree"]))
    if kind == "finite":
        return NatSet.finite(draw(st.sets(st.integers(0, 80), max_size=6)))
    if kind == "cofinite":
        return NatSet.cofinite(draw(st.sets(st.integers(0, 80), max_size=6)))
    if kind == "residue":
        m = draw(st.integers(1, 5))
        return NatSet.residues(m, draw(st.sets(st.integers(0, m - 1))), excluded=draw(st.sets(st.integers(0, 40), max_size=3)))
    return NatSet.subtree(draw(st.integers(0, 14)))


small_pairs = st.lists(
    st.tuples(st.integers(0, 60), st.integers(0, 60)).filter(lambda p: p[0] != p[1]).map(lambda p: tuple(sorted(p))),
    max_size=6,
)


@st.composite
def regions(draw, depth=2):
    kind = draw(st.sampled_from(["rect", "square", "star", "all", "none", "blocks", "modclass", "comparable", "explicit", "edits"]))
    if kind == "rect":
        r = Rect(draw(natsets()), draw(natsets()))
    elif kind == "square":
        r = square(draw(natsets()))
    elif kind == "star":
        r = star(draw(st.integers(0, 40)), draw(natsets()))
    elif kind == "all":
        r = AllPairs()
    elif kind == "none":
        r = NoPairs()
    elif kind == "blocks":
        r = BlockCliques(draw(st.integers(2, 5)))
    elif kind == "modclass":
        r = ModClassDistinct(draw(st.integers(2, 4)))
    elif kind == "comparable":
        r = Comparable()
    elif kind == "explicit":
        r = Explicit(draw(small_pairs))
    else:
        r = RegionSet([draw(regions(depth=0))], draw(small_pairs), draw(small_pairs))
    if depth == 0:
        return r
    op = draw(st.sampled_from(["none", "or", "and", "sub", "union3"]))
    if op == "none":
        return r
    other = draw(regions(depth=depth - 1))
    if op == "union3":
        return Union([r, other, draw(regions(depth=0))])
    return {"or": r | other, "and": r & other, "sub": r - other}[op]


@given(regions(), st.lists(st.integers(0, WINDOW - 1), min_size=1, max_size=4))
@settings(max_examples=150, deadline=None)
def test_region_nbr_matches_contains_on_window(region, vs):
    for v in vs:
        nb = region.nbr(v)
        got = {u for u in range(WINDOW) if u in nb}
        want = {u for u in range(WINDOW) if region.contains(u, v)}
        assert got == want, (region.describe(), v)
        assert v not in nb
        assert all(region.contains(v, u) for u in want)


def test_regionset_union_keeps_agreed_edits():
    a = RegionSet([BlockCliques(2)], plus=[(0, 5)], minus=[(0, 1)])
    b = RegionSet([NoPairs()], plus=[(7, 9)])
    u = a.union(b)
    for p in [(0, 5), (7, 9), (2, 3)]:
        assert u.contains(*p)
    assert not u.contains(0, 1)


# ---- templates


@pytest.mark.parametrize(
    "spec",
    ["empty", "complete", "blocks:3", "modclass:2", "stars:0,4", "scorpion:0,1,2", "scorpion:3,1,2,empty",
     "complete;del:0-1,0-2", "blocks:3;add:0-9;del:0-1"],
)
def test_templates_parse_and_keep_their_spec(spec):
    assert str(parse_template(spec)) == spec


@pytest.mark.parametrize(
    "bad", ["", "blocks", "blocks:1", "modclass:x", "stars:", "scorpion:0,1", "complete;add:1-1", "complete;zap:1-2", "nope"]
)
def test_template_errors(bad):
    with pytest.raises(TemplateError):
        parse_template(bad)


def test_modclass_rejected_on_cantor():
    with pytest.raises(TemplateError):
        template_graph(parse_template("modclass:2"), parse_board("cantor")).nbr(0)


@pytest.mark.parametrize("board", ["komega", "turan:2", "turan:3", "cantor"])
@pytest.mark.parametrize("spec", ["complete", "blocks:3", "stars:1,5", "complete;del:0-1,2-5"])
def test_template_graph_stays_on_board(board, spec):
    b = parse_board(board)
    g = template_graph(parse_template(spec), b)
    for v in range(60):
        for u in range(v):
            if g.contains(u, v):
                assert b.contains(u, v)


@pytest.mark.parametrize(
    "spec,triple",
    [
        ("scorpion:0,1,2", (0, 1, 2)),
        ("scorpion:5,3,9,empty", (5, 3, 9)),
        ("scorpion:0,1,2;add:0-2", None),
        ("scorpion:0,1,2;del:1-2", None),
        ("complete", None),
        ("empty", None),
    ],
)
def test_template_scorpion_truth(spec, triple):
    assert template_has_scorpion(parse_template(spec), parse_board("komega")) == triple


@pytest.mark.parametrize(
    "board,spec,wf,want",
    [
        ("komega", "complete", "dmin:3", True),
        ("komega", "empty", "dmin:1", False),
        ("komega", "blocks:3", "dmin:2", True),
        ("komega", "blocks:3", "dmin:3", False),
        ("komega", "blocks:3", "cmin:3", True),
        ("komega", "blocks:2", "cmin:3", False),
        ("turan:2", "complete;del:0-1", "dmin:2", True),
        ("cantor", "stars:0", "dmin:1", True),
        ("cantor", "blocks:5", "dmin:1", False),
    ],
)
def test_template_w_truth(board, spec, wf, want):
    assert template_w_truth(parse_template(spec), parse_board(board), parse_wfunction(wf)) is want


# ---- world model


@pytest.mark.parametrize("board,spec", [("komega", "blocks:3;add:1-20"), ("turan:2", "complete;del:0-1"), ("cantor", "stars:2")])
def test_world_classes_are_invariant(board, spec):
    b = parse_board(board)
    g = template_graph(parse_template(spec), b)
    w = template_world(parse_template(spec), b)
    for r in w.tails:
        for above in (0, 30, 100):
            x = w.fresh_member(r, above)
            assert x > above and w.rep_of(x) == r
    # a tail vertex meets every core vertex the way its representative does
    for v in range(120):
        r = w.rep_of(v)
        if w.is_tail(r) and v != r:
            for c in w.core:
                assert g.contains(v, c) == g.contains(r, c), (v, r, c)


def test_world_rejects_residues_on_cantor():
    with pytest.raises(ValueError):
        World(2, [], True)
    with pytest.raises(ValueError):
        World(1, [], True).fresh_member(0, 5)


def test_cantor_world_tails_cover_the_tree():
    w = World(1, [cantor.encode("01")], True)
    for v in range(200):
        r = w.rep_of(v)
        assert r in w.core or w.is_tail(r)
        assert r == v or cantor.is_prefix(r, v)


# ---- symbolic state against pointwise membership


@pytest.mark.parametrize("board", ["komega", "turan:3", "cantor"])
def test_state_neighbourhoods_match_pointwise(board):
    b = parse_board(board)
    st_ = SymbolicState(b, parse_template("blocks:3;add:0-7"))
    st_.add_region(star(1))
    st_.add_region(square(NatSet.finite(range(6))))
    for p in [(10, 30), (4, 40), (2, 9)]:
        if b.contains(*p):
            st_.add_pair(p)
    for v in range(0, 60, 7):
        probed = {u for u in range(WINDOW) if u != v and b.contains(u, v) and st_.is_probed(u, v)}
        assert {u for u in range(WINDOW) if u in st_.p_nbr(v)} == probed
        assert {u for u in range(WINDOW) if u in st_.e_nbr(v)} == {u for u in probed if st_.answer(u, v)}
        unp = {u for u in range(WINDOW) if u != v and b.contains(u, v)} - probed
        assert {u for u in range(WINDOW) if u in st_.u_nbr(v)} == unp


def test_state_pair_add_remove_round_trip():
    st_ = SymbolicState(parse_board("komega"), parse_template("complete"))
    st_.add_pair((3, 8))
    assert st_.is_probed(3, 8) and 8 in st_.e_nbr(3)
    st_.remove_pair((3, 8))
    assert not st_.is_probed(3, 8) and 8 in st_.u_nbr(3)


# ---- batch play


def test_scorpion_seeker_small_runs():
    for spec, want in [("scorpion:0,1,2", "ForcedTrue"), ("scorpion:4,2,7,empty;add:0-1", "ForcedTrue"),
                       ("complete", "ForcedFalse"), ("blocks:3", "ForcedFalse")]:
        tr = batch_play(ScorpionSeeker(), spec, "komega", "scorpion", family=LargeFamily.parse("jn:5"), prefix_bound=300)
        assert tr.terminal_reason == want, spec
        omega = tr.family_report["infinite_degree_vertices"]
        assert omega != "Infinite" and len(omega) <= 4


@pytest.mark.parametrize("board", ["komega", "turan:2", "cantor"])
@pytest.mark.parametrize("wf", ["dmin:1", "cmin:2"])
def test_braided_seeker_small_runs(board, wf):
    for spec in ["complete", "empty", "blocks:3"]:
        truth = template_w_truth(parse_template(spec), parse_board(board), parse_wfunction(wf))
        sk = BraidedSeeker(wf)
        tr = batch_play(sk, spec, board, sk.wf, prefix_bound=300)
        assert tr.terminal_reason == ("ForcedTrue" if truth else "ForcedFalse"), (board, wf, spec)
        assert tr.family_report["undetermined_witness"] is not None


def test_batch_play_is_deterministic_and_refuels():
    runs = [batch_play(BraidedSeeker("dmin:2"), "blocks:3", "turan:2", parse_wfunction("dmin:2"), prefix_bound=300) for _ in range(2)]
    assert json.dumps(runs[0].to_dict(), sort_keys=True) == json.dumps(runs[1].to_dict(), sort_keys=True)
    short = batch_play(BraidedSeeker("dmin:2"), "blocks:3", "turan:2", parse_wfunction("dmin:2"), fuel=10, prefix_bound=300)
    assert short.terminal_reason == "FuelExhausted"
    assert len(short.moves) <= 10


def test_batch_play_input_errors():
    with pytest.raises(ValueError):
        batch_play(ScorpionSeeker(), "complete", "g6:Bw", "scorpion")
    with pytest.raises(ValueError):
        batch_play(ScorpionSeeker(), "complete", "komega", "scorpion", fuel=0)
    with pytest.raises(ValueError):
        parse_omega_seeker("greedy")


# ---- corpora


def test_scorpion_corpus_is_balanced_and_seeded():
    a, b = scorpion_corpus(), scorpion_corpus()
    assert a == b and len(a) == 50
    assert sum(e.truth for e in a) == 25
    assert len({e.spec for e in a}) == 50


@pytest.mark.parametrize("board", ["komega", "cantor"])
def test_braided_corpus_labels(board):
    c = braided_corpus(board, "cmin:2")
    assert len(c) == 10 and any(e.truth for e in c) and not all(e.truth for e in c)
    if board == "cantor":
        assert not any(e.spec.startswith("modclass") for e in c)
