from __future__ import annotations

import random

from conftest import KISHINO, TREFOIL, VIRTUAL_TREFOIL
from kupweb import g2, parity, sl3
from kupweb.diagram import REIDEMEISTER, MoveKind, odd_writhe, parse_gauss, writhe
from kupweb.fuzz import fuzz_invariant, random_move


def test_random_move_respects_the_crossing_cap():
    d = parse_gauss(TREFOIL)
    rng = random.Random(0)
    assert random_move(d, rng, REIDEMEISTER, max_crossings=3) is None
    for _ in range(50):
        m = random_move(d, rng, REIDEMEISTER, max_crossings=4)
        assert m.kind == MoveKind.R1_ADD


def test_random_move_returns_none_without_sites():
    assert random_move(parse_gauss(""), random.Random(0), [MoveKind.R3]) is None


def test_writhe_is_caught():
    res = fuzz_invariant(writhe, [parse_gauss(TREFOIL)], trials=50, length=5, seed=4)
    assert not res.stable
    assert res.counterexample and res.values[0] != res.values[1]
    assert res.counterexample[-1].startswith(("R1", "R2"))


def test_fuzz_is_reproducible():
    a = fuzz_invariant(writhe, [parse_gauss(TREFOIL)], trials=50, length=5, seed=9)
    b = fuzz_invariant(writhe, [parse_gauss(TREFOIL)], trials=50, length=5, seed=9)
    assert a == b


def test_invariants_survive_short_orbits():
    starts = [parse_gauss(c) for c in (TREFOIL, VIRTUAL_TREFOIL, KISHINO)]
    checks = [
        (sl3.bracket, starts),
        (odd_writhe, starts),
        (lambda d: parity.parity_bracket(d), starts),
        (lambda d: parity.parity_bracket(d, "flat"), [d.as_flat() for d in starts]),
        (lambda d: parity.parity_bracket(d, "free"), [d.as_free() for d in starts]),
        (g2.g2_free, [d.as_free() for d in starts[:2]]),
    ]
    for fn, ss in checks:
        res = fuzz_invariant(fn, ss, trials=6, length=4, seed=1, max_crossings=5)
        assert res.stable, res.counterexample
        assert res.moves_applied > 0
