"""The parity bracket: odd crossings stay as graph nodes, even ones are smoothed.

Rigid nodes (``rnode``) keep the counterclockwise order of their darts.
Around a crossing stored as ``(p0, p1, p2, p3)`` in that order, the regions
between ``p0/p1`` and ``p2/p3`` are the A-regions, so the A-smoothing joins
``p1-p2`` and ``p3-p0`` and the B-smoothing joins ``p0-p1`` and ``p2-p3``.

Value conventions.  With ``d = -A^2 - A^-2`` a state with graph part ``G``
(no free loops) and ``c`` free loops contributes ``A^i d^(c-1)`` when ``G`` is
empty and ``A^i d^c [G]/d`` otherwise.  Graph monomials therefore stand for
``[G]/d`` and the unknot evaluates to ``1``.  The sum is multiplied by
``(-A^3)^(-writhe)`` so that it does not change under the first move.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .canon import canonical_key, component_keys
from .diagram import FREE, ODD, VIRTUAL, ChordDiagram, from_words, gaussian_parity, writhe
from .framed import strand_walks, to_framed_graph, unicursal_count
from .poly import GraphPolynomial, LaurentPoly
from .statesum import blocks, summed, thread_cap
from .web import OLD, Web, faces, splice

MODES = ("virtual", "flat", "free")
LOOP = LaurentPoly({2: -1, -2: -1})


@dataclass(frozen=True)
class MixedState:
    choices: tuple[tuple[int, str], ...]  # (label, "A" | "B") for even chords
    weight: LaurentPoly
    web: Web  # rigid nodes of odd chords; ``web.circles`` counts free loops


# ----------------------------------------------------------------- R2 moves

def _opposite(web: Web, h: int) -> int:
    v, s = web.owner[h]
    return web.ports[v][(s + 2) % 4]


def rigid_r2_sites(web: Web) -> list[tuple[int, int]]:
    """Bigon faces between two distinct rigid nodes, as dart pairs ``(x1, x2)``.

    ``x1`` and ``x2`` are the darts at the first node on the two bigon edges.
    """
    out = []
    seen = set()
    for f in faces(web):
        if len(f) != 2:
            continue
        a, b = f
        u, v = web.vertex_of(a), web.vertex_of(b)
        if u == v or web.kinds[u] != "rnode" or web.kinds[v] != "rnode":
            continue
        # face darts are x1 (at u) and y2 (at v); x2 is the mate of y2
        x1, x2 = a, web.mate[b]
        key = frozenset((x1, x2, web.mate[x1], b))
        if key not in seen:
            seen.add(key)
            out.append((x1, x2))
    return out


def free_r2_sites(web: Web) -> list[tuple[int, int]]:
    """Pairs of parallel edges between two framed nodes that are adjacent at both ends."""
    out = []
    seen = set()
    for u, kind in enumerate(web.kinds):
        if kind not in ("node", "rnode"):
            continue
        ps = web.ports[u]
        for i in range(4):
            for j in (i + 1, i + 3):
                x1, x2 = ps[i], ps[j % 4]
                y1, y2 = web.mate[x1], web.mate[x2]
                v = web.vertex_of(y1)
                if v == u or web.vertex_of(y2) != v or web.kinds[v] not in ("node", "rnode"):
                    continue
                if _opposite(web, y1) == y2:
                    continue
                key = frozenset((x1, x2, y1, y2))
                if key not in seen:
                    seen.add(key)
                    out.append((x1, x2))
    return out


def remove_r2(web: Web, site: tuple[int, int]) -> Web:
    """Delete the two nodes of an R2 site and reconnect the strands through them."""
    x1, x2 = site
    y1, y2 = web.mate[x1], web.mate[x2]
    u, v = web.vertex_of(x1), web.vertex_of(y1)
    wires = [((OLD, _opposite(web, x1)), (OLD, _opposite(web, y1))),
             ((OLD, _opposite(web, x2)), (OLD, _opposite(web, y2)))]
    return splice(web, [u, v], [], wires)


def forget_rotation(web: Web) -> Web:
    kinds = tuple("node" if k == "rnode" else k for k in web.kinds)
    return Web(kinds, web.ports, web.mate, web.labels, web.circles)


def r2_sites(web: Web) -> list[tuple[int, int]]:
    if "rnode" in web.kinds:
        return rigid_r2_sites(web)
    return free_r2_sites(web)


def irreducible_representative(g: Web, allow_z: bool = False,
                               rng: random.Random | None = None) -> Web:
    """Remove R2 pairs until none is left.

    Rigid nodes use the bigon-face condition.  With ``allow_z`` the cyclic
    orders are dropped first (a graphical Z-move reverses the order at a
    node), leaving plain framed nodes.  ``rng`` picks sites at random.
    """
    web = forget_rotation(g) if allow_z else g
    while True:
        sites = r2_sites(web)
        if not sites:
            return web
        web = remove_r2(web, sites[0] if rng is None else rng.choice(sites))


def is_r2_irreducible(g: Web, allow_z: bool = False) -> bool:
    web = forget_rotation(g) if allow_z else g
    return not r2_sites(web)


# ---------------------------------------------------------- rigid brackets

def _even_wires(ports: Sequence[int], choice: str):
    p0, p1, p2, p3 = ports
    if choice == "A":
        return [((OLD, p1), (OLD, p2)), ((OLD, p3), (OLD, p0))]
    return [((OLD, p0), (OLD, p1)), ((OLD, p2), (OLD, p3))]


def expand_mixed(d: ChordDiagram) -> list[MixedState]:
    """All ``2^(even chords)`` states of a virtual or flat diagram."""
    if d.level == FREE:
        raise ValueError("mixed states need cyclic orders at the crossings")
    return [_state(d, to_framed_graph(d, rigid=True), idx) for idx in range(2 ** _n_even(d))]


def _even(d: ChordDiagram) -> list[int]:
    return [lab for lab in d.labels() if gaussian_parity(d, lab) != ODD]


def _n_even(d: ChordDiagram) -> int:
    return len(_even(d))


def _state(d: ChordDiagram, g: Web, idx: int) -> MixedState:
    even = _even(d)
    wires = []
    choices = []
    exp = 0
    for k, lab in enumerate(even):
        c = "B" if idx >> k & 1 else "A"
        choices.append((lab, c))
        exp += 1 if c == "A" else -1
        wires.extend(_even_wires(g.ports[lab - 1], c))
    web = splice(g, [lab - 1 for lab in even], [], wires)
    return MixedState(tuple(choices), LaurentPoly.mono(exp), web)


def _state_value(st: MixedState) -> GraphPolynomial:
    rep = irreducible_representative(st.web.without_circles())
    loops = st.web.circles + rep.circles
    if rep.n_vertices == 0:
        return GraphPolynomial.scalar(st.weight * LOOP ** (loops - 1))
    keys = [k.key for k in component_keys(rep)]
    return GraphPolynomial.graph(keys, st.weight * LOOP ** loops)


def _block(args) -> GraphPolynomial:
    d, start, stop = args
    g = to_framed_graph(d, rigid=True)
    total = GraphPolynomial.zero()
    for idx in range(start, stop):
        total = total + _state_value(_state(d, g, idx))
    return total


def _rigid_bracket(d: ChordDiagram, normalized: bool, threads: int | None) -> GraphPolynomial:
    n = 2 ** _n_even(d)
    cap = thread_cap(threads)
    args = [(d, a, b) for a, b in blocks(n, cap * 4 if cap > 1 else 1)]
    total = summed(_block, args, cap, GraphPolynomial.zero())
    if normalized:
        # flat diagrams store every sign as +1
        w = writhe(d) if d.level == VIRTUAL else d.n_chords
        total = total.scale(LaurentPoly.mono(-3 * w, (-1) ** (w % 2)))
    return total


def parity_bracket(d: ChordDiagram, mode: str = "virtual", a: int = 1,
                   normalized: bool = True, threads: int | None = None) -> GraphPolynomial:
    """Parity bracket in one of the modes ``virtual``, ``flat`` or ``free``.

    ``flat`` evaluates the rigid bracket of the flat diagram at ``A = a``
    (``a`` is ``1`` or ``-1``).  ``free`` is :func:`free_mod2_bracket` with
    each surviving graph as a monomial of coefficient 1; it needs a knot.
    """
    if mode == "virtual":
        if d.level != VIRTUAL:
            raise ValueError("virtual mode needs signed crossings")
        return _rigid_bracket(d, normalized, threads)
    if mode == "flat":
        if d.level == FREE:
            raise ValueError("flat mode needs cyclic orders at the crossings")
        flat = d.as_flat() if d.level == VIRTUAL else d
        p = _rigid_bracket(flat, normalized, threads)
        return GraphPolynomial({m: c.substitute_sign(a) for m, c in p.items()})
    if mode == "free":
        terms = free_mod2_bracket(d)
        out = GraphPolynomial.zero()
        for key in sorted(terms):
            out = out + (GraphPolynomial.scalar(1) if key == CIRCLE else GraphPolynomial.graph([key]))
        return out
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


# ---------------------------------------------------------- free, modulo 2

CIRCLE = "circle"


def gauss_word(web: Web) -> ChordDiagram:
    """Free chord diagram read off a unicursal framed graph."""
    walks, circles = strand_walks(web)
    if len(walks) + circles != 1:
        raise ValueError("the framed graph has more than one unicursal component")
    if circles:
        return from_words([[]])
    return from_words([[web.vertex_of(h) + 1 for h in walks[0]]])


def free_mod2_bracket(g: ChordDiagram | Web) -> frozenset[str]:
    """Sum over smoothings of the even nodes that leave one unicursal component.

    Odd nodes are kept, every summand is reduced by free R2 moves and the
    result is taken modulo two.  Returned as the set of canonical keys that
    occur an odd number of times; ``"circle"`` stands for the trivial graph.
    """
    if isinstance(g, ChordDiagram):
        if len(g.circles) != 1:
            raise ValueError("the mod-2 free bracket is defined for knots only")
        d = g.as_free()
        web = to_framed_graph(d)
    else:
        web = forget_rotation(g)
        d = gauss_word(web)
        web = to_framed_graph(d)
    even = [lab for lab in d.labels() if gaussian_parity(d, lab) != ODD]
    counts: dict[str, int] = {}
    for choice in product("AB", repeat=len(even)):
        wires = []
        for lab, c in zip(even, choice):
            wires.extend(_even_wires(web.ports[lab - 1], c))
        st = splice(web, [lab - 1 for lab in even], [], wires)
        if unicursal_count(st) != 1:
            continue
        rep = irreducible_representative(st)
        if rep.circles and rep.n_vertices:
            continue  # a free loop next to a non-empty graph counts as zero
        key = CIRCLE if rep.n_vertices == 0 else canonical_key(rep).key
        counts[key] = counts.get(key, 0) + 1
    return frozenset(k for k, c in counts.items() if c % 2)


def node_graph(d: ChordDiagram, allow_z: bool = False) -> Web:
    """All crossings as nodes: rigid for decorated input unless ``allow_z``."""
    if d.level == FREE or allow_z:
        return to_framed_graph(d.as_free())
    return to_framed_graph(d, rigid=True)
