from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import IRREDUCIBLY_ODD, KINK, KISHINO, TREFOIL, TREFOIL_MIRROR, UNKNOT, VIRTUAL_TREFOIL
from kupweb.canon import lookup
from kupweb.diagram import (MoveKind, apply_move, enumerate_moves, odd_chords, parse_gauss,
                            random_virtual_code, realize_chord_diagram)
from kupweb.framed import to_framed_graph
from kupweb.parity import (CIRCLE, LOOP, expand_mixed, free_mod2_bracket, irreducible_representative,
                           is_r2_irreducible, node_graph, parity_bracket, rigid_r2_sites)
from kupweb.poly import GraphPolynomial, LaurentPoly, is_scalar
from oracles import as_dict, skein_bracket

seeds = st.integers(0, 10 ** 6)


def _scalar(p: GraphPolynomial) -> dict:
    assert is_scalar(p)
    return as_dict(p.coeff(()))


def _all_even(seed, lo=1, hi=5):
    rng = random.Random(seed)
    while True:
        d = random_virtual_code(rng, rng.randint(lo, hi))
        if not odd_chords(d):
            return d


# ------------------------------------------------- skein bracket oracle

@pytest.mark.parametrize("code", [UNKNOT, KINK, TREFOIL, TREFOIL_MIRROR])
def test_classical_values_match_the_state_walk(code):
    assert _scalar(parity_bracket(parse_gauss(code))) == skein_bracket(code)


def test_trefoil_value_is_frozen():
    assert _scalar(parity_bracket(parse_gauss(TREFOIL))) == {-4: 1, -12: 1, -16: -1}


def test_mirror_inverts_the_variable():
    a = _scalar(parity_bracket(parse_gauss(TREFOIL)))
    b = _scalar(parity_bracket(parse_gauss(TREFOIL_MIRROR)))
    assert b == {-e: c for e, c in a.items()}


@given(seeds)
def test_all_even_diagrams_match_the_state_walk(seed):
    d = _all_even(seed)
    assert _scalar(parity_bracket(d)) == skein_bracket(d.to_text())
    assert _scalar(parity_bracket(d, normalized=False)) == skein_bracket(d.to_text(), normalized=False)


def test_state_count():
    d = parse_gauss(TREFOIL)
    assert len(expand_mixed(d)) == 8
    assert len(expand_mixed(parse_gauss(KISHINO))) == 1
    with pytest.raises(ValueError):
        expand_mixed(d.as_free())


# ------------------------------------------------------------ invariance

@given(seeds)
def test_moves_preserve_the_bracket(seed):
    rng = random.Random(seed)
    d = random_virtual_code(rng, rng.randint(1, 4))
    ref = parity_bracket(d)
    for _ in range(3):
        moves = [m for m in enumerate_moves(d, [MoveKind.R1_ADD, MoveKind.R1_REMOVE, MoveKind.R2_ADD,
                                                MoveKind.R2_REMOVE, MoveKind.R3])
                 if d.n_chords < 5 or m.kind not in (MoveKind.R1_ADD, MoveKind.R2_ADD)]
        d = apply_move(d, rng.choice(moves))
        assert parity_bracket(d) == ref


@given(seeds)
def test_flat_mode_is_stable_under_flat_moves(seed):
    rng = random.Random(seed)
    d = random_virtual_code(rng, rng.randint(1, 4)).as_flat()
    for a in (1, -1):
        ref = parity_bracket(d, "flat", a=a)
        e = d
        for _ in range(2):
            moves = [m for m in enumerate_moves(e, [MoveKind.R1_REMOVE, MoveKind.R2_REMOVE, MoveKind.R3,
                                                    MoveKind.R1_ADD])
                     if e.n_chords < 5 or m.kind != MoveKind.R1_ADD]
            e = apply_move(e, rng.choice(moves))
            assert parity_bracket(e, "flat", a=a) == ref


# ---------------------------------------------------------------- Kishino

def test_kishino_is_a_single_irreducible_graph():
    d = parse_gauss(KISHINO)
    p = parity_bracket(d)
    assert len(p) == 1
    ((mono, _),) = p.items()
    assert len(mono) == 1
    web, _ = lookup(mono[0])
    assert web.n_vertices == 4
    assert is_r2_irreducible(web)
    assert not is_r2_irreducible(web, allow_z=True)
    assert irreducible_representative(web, allow_z=True).n_vertices == 0


def test_kishino_survives_the_flat_and_free_modes():
    d = parse_gauss(KISHINO)
    assert not is_scalar(parity_bracket(d, "flat"))
    assert free_mod2_bracket(d) == {CIRCLE}


def test_virtual_trefoil_is_scalar():
    d = parse_gauss(VIRTUAL_TREFOIL)
    assert is_scalar(parity_bracket(d))
    assert is_scalar(parity_bracket(d, "flat"))


# ------------------------------------------------------- R2 site detection

@given(seeds)
def test_bigon_faces_match_flat_second_moves(seed):
    rng = random.Random(seed)
    d = random_virtual_code(rng, rng.randint(2, 6)).as_flat()
    g = to_framed_graph(d, rigid=True)
    sites = rigid_r2_sites(g)
    moves = enumerate_moves(d, [MoveKind.R2_REMOVE])
    assert bool(sites) == bool(moves)


def test_node_graph_kinds():
    d = parse_gauss(KISHINO)
    assert set(node_graph(d).kinds) == {"rnode"}
    assert set(node_graph(d, allow_z=True).kinds) == {"node"}


# ---------------------------------------------------------- free, mod two

def test_irreducibly_odd_diagram_is_its_own_bracket():
    d = realize_chord_diagram(IRREDUCIBLY_ODD)
    assert len(odd_chords(d)) == d.n_chords == 6
    terms = free_mod2_bracket(d)
    assert len(terms) == 1
    (key,) = terms
    assert key != CIRCLE
    assert lookup(key)[0].n_vertices == 6
    assert free_mod2_bracket(lookup(key)[0]) == terms


def test_free_mode_as_polynomial():
    assert parity_bracket(parse_gauss(UNKNOT), "free") == GraphPolynomial.scalar(1)
    assert parity_bracket(parse_gauss(TREFOIL).as_free(), "free") == GraphPolynomial.scalar(1)


def test_free_mode_needs_a_knot():
    with pytest.raises(ValueError):
        free_mod2_bracket(parse_gauss("1,2;1,2"))


def test_mode_errors():
    with pytest.raises(ValueError):
        parity_bracket(parse_gauss(TREFOIL), "bogus")
    with pytest.raises(ValueError):
        parity_bracket(parse_gauss(TREFOIL).as_flat(), "virtual")
    with pytest.raises(ValueError):
        parity_bracket(parse_gauss(TREFOIL).as_free(), "flat")


def test_loop_value():
    assert LOOP == LaurentPoly({2: -1, -2: -1})
