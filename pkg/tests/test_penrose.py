from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphs import planar_rotation, random_cubic, random_rotation
from kupweb.diagram import NotFound, from_words, random_virtual_code
from kupweb.penrose import (B, P, R, ColoredWeb, componentwise_even, count_edge_3_colorings,
                            edge_3_colorings, inter_component_crossings, link_graph_translate,
                            penrose_bracket, penrose_coloring_sum, sl3_at_one_equals_penrose,
                            two_coloring, web_from_rotation)
from kupweb.web import Web, web_from_edges
from oracles import line_graph_3_colorings

seeds = st.integers(0, 10 ** 6)


def _planar_cubic(seed, n):
    rng = random.Random(seed)
    for _ in range(100):
        g = random_cubic(rng, n)
        rot = planar_rotation(g)
        if rot is not None:
            return g, rot
    pytest.skip("no planar sample")


def _edges(g):
    return [tuple(e) for e in g.edges()]


# ---------------------------------------------------------------- planar

@given(seeds, st.sampled_from([4, 6, 8, 10]))
def test_planar_bracket_counts_colourings(seed, n):
    g, rot = _planar_cubic(seed, n)
    web = web_from_rotation(rot)
    count = line_graph_3_colorings(_edges(g))
    assert count_edge_3_colorings(web) == count
    assert penrose_bracket(web) == count


def test_theta_and_circle():
    # the same three edges read in the same order at both ends is not planar
    twisted = web_from_edges(["src", "snk"], [(0, 1), (0, 1), (0, 1)])
    assert penrose_bracket(twisted) == -6
    theta = Web(("src", "snk"), ((0, 1, 2), (3, 5, 4)), (3, 4, 5, 0, 1, 2), (None, None), 0)
    assert penrose_bracket(theta) == 6
    assert sl3_at_one_equals_penrose(theta)
    circle = web_from_edges([], [], circles=1)
    assert penrose_bracket(circle) == 3


@pytest.mark.parametrize("g", [nx.hypercube_graph(3), nx.circular_ladder_graph(6),
                               nx.circular_ladder_graph(5)], ids=["cube", "prism6", "prism5"])
def test_named_planar_graphs(g):
    g = nx.convert_node_labels_to_integers(g)
    rot = planar_rotation(g)
    web = web_from_rotation(rot)
    assert penrose_bracket(web) == line_graph_3_colorings(_edges(g))
    if nx.is_bipartite(g):
        left, _ = nx.bipartite.sets(g)
        oriented = web_from_rotation(rot, {v: "src" if v in left else "snk" for v in g})
        assert sl3_at_one_equals_penrose(oriented)


def test_petersen_has_no_colouring():
    web = web_from_rotation(random_rotation(nx.petersen_graph(), random.Random(1)))
    assert count_edge_3_colorings(web) == 0
    assert penrose_bracket(web) == 0


# ------------------------------------------------------------ any rotation

@given(seeds, st.sampled_from([4, 6, 8]))
def test_signed_colouring_sum_equals_the_bracket(seed, n):
    rng = random.Random(seed)
    g = random_cubic(rng, n)
    web = web_from_rotation(random_rotation(g, rng))
    assert penrose_coloring_sum(web) == penrose_bracket(web)
    assert abs(penrose_bracket(web)) <= count_edge_3_colorings(web)


def test_k33_bracket_vanishes():
    rng = random.Random(3)
    web = web_from_rotation(random_rotation(nx.complete_bipartite_graph(3, 3), rng))
    assert count_edge_3_colorings(web) == 12
    assert penrose_bracket(web) == penrose_coloring_sum(web)


def test_rejects_four_valent_input():
    web = web_from_edges(["node"], [(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        penrose_bracket(web)


# ------------------------------------------------------------ translation

@given(seeds, st.sampled_from([4, 6, 8]))
def test_graph_link_round_trip(seed, n):
    g, rot = _planar_cubic(seed, n)
    web = web_from_rotation(rot)
    cols = list(edge_3_colorings(web))
    if not cols:
        return
    col = random.Random(seed).choice(cols)
    link = link_graph_translate(ColoredWeb(web, col))
    assert link.is_proper()
    assert link.web.n_vertices == n // 2
    assert set(link.colors.values()) <= {R, B}
    back = link_graph_translate(link)
    assert back.is_proper()
    assert back.web.n_vertices == n
    gb = nx.MultiGraph()
    for h, m in enumerate(back.web.mate):
        if h < m:
            gb.add_edge(back.web.vertex_of(h), back.web.vertex_of(m), c=back.colors[h])
    ga = nx.MultiGraph()
    for h, m in enumerate(web.mate):
        if h < m:
            ga.add_edge(web.vertex_of(h), web.vertex_of(m), c=col[h])
    assert list(back.colors.values()).count(P) == list(col.values()).count(P)
    assert nx.is_isomorphic(ga, gb)


def test_improper_colouring_rejected():
    web = web_from_edges(["tri", "tri"], [(0, 1), (0, 1), (0, 1)])
    bad = {h: R for h, m in enumerate(web.mate) if h < m}
    with pytest.raises(ValueError):
        link_graph_translate(ColoredWeb(web, bad))


# ------------------------------------------------------ two-coloured links

@given(seeds)
def test_two_colouring_exists_iff_componentwise_even(seed):
    rng = random.Random(seed)
    d = random_virtual_code(rng, rng.randint(1, 6), rng.choice((1, 2, 3))).as_free()
    found = not isinstance(two_coloring(d), NotFound)
    assert found == componentwise_even(d)
    assert sum(inter_component_crossings(d)) % 2 == 0


def test_hopf_like_links():
    assert componentwise_even(from_words([[1, 2], [1, 2]]))
    assert not componentwise_even(from_words([[1], [1]]))
    assert isinstance(two_coloring(from_words([[1], [1]])), NotFound)
