"""Deterministic, optionally multi-process state sums."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .poly import GraphPolynomial

ENV_THREADS = "KUPWEB_THREADS"


def thread_cap(threads: int | None = None) -> int:
    if threads is None:
        raw = os.environ.get(ENV_THREADS, "1")
        try:
            threads = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_THREADS} must be an integer, got {raw!r}") from None
    return max(1, threads)


def blocks(n_states: int, n_blocks: int) -> list[tuple[int, int]]:
    """Split ``range(n_states)`` into contiguous index blocks."""
    n_blocks = max(1, min(n_blocks, n_states))
    size, extra = divmod(n_states, n_blocks)
    out, start = [], 0
    for i in range(n_blocks):
        stop = start + size + (1 if i < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def summed(block_fn: Callable[[tuple], GraphPolynomial], args: Sequence[tuple],
           threads: int | None, zero: GraphPolynomial) -> GraphPolynomial:
    """Sum ``block_fn`` over ``args`` in order.

    Addition in the graph module is exact and commutative, so the result does
    not depend on how work is spread across processes.
    """
    cap = thread_cap(threads)
    if cap == 1 or len(args) <= 1:
        parts = [block_fn(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=cap) as pool:
            parts = list(pool.map(block_fn, args))
    total = zero
    for p in parts:
        total = total + p
    return total
