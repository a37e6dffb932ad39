"""Random move sequences for checking invariance."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .diagram import (REIDEMEISTER, ChordDiagram, Move, MoveKind, apply_move,
                      enumerate_moves)

ADDING = {MoveKind.R1_ADD: 1, MoveKind.R2_ADD: 2}


def random_move(d: ChordDiagram, rng: random.Random, kinds: Iterable[MoveKind],
                max_crossings: int | None = None) -> Move | None:
    """Pick a move kind uniformly among those with a site, then a site."""
    kinds = list(kinds)
    by_kind: dict[MoveKind, list[Move]] = {}
    for m in enumerate_moves(d, kinds):
        grow = ADDING.get(m.kind, 0)
        if max_crossings is not None and d.n_chords + grow > max_crossings:
            continue
        by_kind.setdefault(m.kind, []).append(m)
    if not by_kind:
        return None
    kind = rng.choice(sorted(by_kind, key=lambda k: k.value))
    return rng.choice(by_kind[kind])


@dataclass
class FuzzResult:
    stable: bool
    orbits: int
    moves_applied: int
    seed: int
    counterexample: list[str] = field(default_factory=list)
    start: str = ""
    values: tuple = ()


def fuzz_invariant(invariant: Callable[[ChordDiagram], object], starts: Sequence[ChordDiagram],
                   trials: int, length: int, seed: int,
                   kinds: Iterable[MoveKind] = REIDEMEISTER,
                   max_crossings: int | None = 6) -> FuzzResult:
    """Apply random move sequences and compare the invariant after every move."""
    rng = random.Random(seed)
    kinds = tuple(kinds)
    applied = 0
    for t in range(trials):
        d0 = starts[t % len(starts)]
        ref = invariant(d0)
        d = d0
        trail: list[str] = []
        for _ in range(rng.randint(1, length)):
            m = random_move(d, rng, kinds, max_crossings)
            if m is None:
                break
            d = apply_move(d, m)
            trail.append(f"{m} -> {d}")
            applied += 1
            val = invariant(d)
            if val != ref:
                return FuzzResult(False, t + 1, applied, seed, trail, str(d0), (ref, val))
    return FuzzResult(True, trials, applied, seed)
