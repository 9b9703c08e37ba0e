import itertools

import pytest
from hypothesis import given, settings, strategies as st

from evade import graph6
from evade.graph import (
    FiniteGraph,
    FinitePregraph,
    all_components_two_edge_connected,
    all_graphs,
    bridges,
    components,
    graph_to_dot,
    graphs_up_to_isomorphism,
    has_clique,
    has_cycle,
    has_odd_cycle,
    is_bridge,
    is_connected,
    pregraph_to_dot,
    recognize_scorpion,
    scorpion_by_brute_force,
    scorpion_figure_graph,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return FiniteGraph(n, frozenset(p for p, k in zip(pairs, keep) if k))


# ---- oracles

@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_isomorphism_class_counts(n, count):
    assert len(graphs_up_to_isomorphism(n)) == count


@pytest.mark.parametrize(
    "g,text",
    [
        (FiniteGraph.empty(0), "?"),
        (FiniteGraph.empty(1), "@"),
        (FiniteGraph.complete(3), "Bw"),
        (FiniteGraph.complete(4), "C~"),
        (FiniteGraph.complete(5), "D~{"),
        (FiniteGraph(5, {(0, 2), (0, 4), (1, 3), (3, 4)}), "DQc"),
    ],
)
def test_graph6_known_strings(g, text):
    assert graph6.encode(g) == text
    assert graph6.decode(text) == g


def test_graph6_long_length_field():
    g = FiniteGraph.complete(63)
    text = graph6.encode(g)
    assert text.startswith("~??~")
    assert graph6.decode(text) == g


@pytest.mark.parametrize("bad", ["", "D~", "D~{{", "D\x20\x20", "C~\x7f", "Bx"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(graph6.Graph6Error):
        graph6.decode(bad)


def test_graph6_read_file(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text(">>graph6<<Bw\nC~\n\nDQc\n")
    assert [g.n for g in graph6.read_file(p)] == [3, 4, 5]


# ---- properties of the codec and predicates

@given(graphs(max_n=40))
@settings(max_examples=200)
def test_graph6_roundtrip(g):
    assert graph6.decode(graph6.encode(g)) == g


@given(graphs())
def test_bridge_is_edge_whose_removal_disconnects(g):
    br = set(bridges(g))
    for e in g.edges:
        before = len(components(g))
        after = len(components(g.without_edges([e])))
        assert (e in br) == (after > before) == is_bridge(g, e)


@given(graphs())
def test_cycle_iff_more_edges_than_forest(g):
    assert has_cycle(g) == (len(g.edges) > g.n - len(components(g)))


@given(graphs())
def test_two_edge_connected_iff_no_bridges(g):
    assert all_components_two_edge_connected(g) == (not bridges(g))


@given(graphs(max_n=8))
def test_odd_cycle_iff_not_two_colourable(g):
    colourable = any(
        all(c[u] != c[v] for u, v in g.edges) for c in itertools.product((0, 1), repeat=g.n)
    ) if g.n else True
    assert has_odd_cycle(g) == (not colourable)


@given(graphs(max_n=8), st.integers(1, 4))
def test_clique_by_enumeration(g, k):
    want = any(all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2)) for c in itertools.combinations(range(g.n), k))
    assert has_clique(g, k) == want


@given(graphs(max_n=8), st.randoms())
def test_predicates_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert has_cycle(h) == has_cycle(g)
    assert is_connected(h) == is_connected(g)
    assert len(bridges(h)) == len(bridges(g))
    assert (recognize_scorpion(h) is None) == (recognize_scorpion(g) is None)


def test_scorpion_fast_matches_brute_force_up_to_six_vertices():
    for n in range(7):
        for g in all_graphs(n):
            assert (recognize_scorpion(g) is None) == (scorpion_by_brute_force(g) is None), graph6.encode(g)


def test_scorpion_figure():
    w = recognize_scorpion(scorpion_figure_graph())
    assert (w.sting, w.tail, w.body) == (0, 1, 2)


def test_trivial_graphs_connected():
    assert is_connected(FiniteGraph.empty(0))
    assert is_connected(FiniteGraph.empty(1))
    assert not is_connected(FiniteGraph.empty(2))


# ---- pregraphs

def test_pregraph_rejects_overlap_and_strays():
    k3 = FiniteGraph.complete(3)
    with pytest.raises(ValueError):
        FinitePregraph(k3, {(0, 1)}, {(0, 1)})
    with pytest.raises(ValueError):
        FinitePregraph(FiniteGraph.path(3), {(0, 2)})


def test_pregraph_answer_and_bounds():
    pg = FinitePregraph.empty_on(FiniteGraph.complete(4)).answer((0, 1), True).answer((2, 3), False)
    assert pg.gmin().edges == {(0, 1)}
    assert (2, 3) not in pg.gmax().edges and len(pg.gmax().edges) == 5
    assert len(pg.undetermined) == 4
    with pytest.raises(ValueError):
        pg.answer((1, 0), False)


def test_dot_output_styles():
    pg = FinitePregraph(FiniteGraph.complete(3), {(0, 1)}, {(1, 2)})
    dot = pregraph_to_dot(pg)
    assert "0 -- 1" in dot and "dashed" in dot and "dotted" in dot
    assert graph_to_dot(FiniteGraph.path(2)).count("--") == 1
