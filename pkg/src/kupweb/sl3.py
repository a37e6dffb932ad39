"""The graph-valued sl(3) bracket of oriented Gauss diagrams."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .diagram import FREE, VIRTUAL, ChordDiagram, _make, writhe
from .engine import find_polygons, reduce_sl3
from .framed import to_framed_graph
from .poly import GraphPolynomial, LaurentPoly, evaluate_A, is_scalar
from .statesum import blocks, summed, thread_cap
from .web import NEW, OLD, Web, cycles_up_to, girth, splice

ORIENTED = "oriented"
UNORIENTED = "unoriented"


@dataclass(frozen=True)
class Sl3State:
    choices: tuple[str, ...]  # indexed by chord label - 1
    weight: LaurentPoly
    web: Web


def reorient(d: ChordDiagram, reverse: Sequence[bool]) -> ChordDiagram:
    """Reverse the traversal direction of the flagged circles.

    A crossing between one reversed and one kept strand changes sign.
    """
    if len(reverse) != len(d.circles):
        raise ValueError("one flag per circle is required")
    circles = [list(reversed(c)) if r else list(c) for c, r in zip(d.circles, reverse)]
    roles = None
    if d.roles is not None:
        roles = [list(reversed(rr)) if r else list(rr) for rr, r in zip(d.roles, reverse)]
    signs = None
    if d.signs is not None:
        signs = []
        for lab in d.labels():
            (c1, _), (c2, _) = d.endpoints[lab]
            s = d.signs[lab - 1]
            signs.append(-s if reverse[c1] != reverse[c2] else s)
    from .diagram import _normalize

    sign_map = None if signs is None else {lab: signs[lab - 1] for lab in d.labels()}
    return _normalize(circles, roles, sign_map, d.level)


def _signs(d: ChordDiagram) -> list[int]:
    return list(d.signs) if d.level == VIRTUAL else [1] * d.n_chords


def state_web(d: ChordDiagram, choices: Sequence[str], framed: Web | None = None) -> Web:
    """Web of one state.  Chord ``k`` is resolved by ``choices[k - 1]``."""
    g = framed if framed is not None else to_framed_graph(d)
    new_kinds: list[str] = []
    wires = []
    for lab, choice in zip(d.labels(), choices):
        o_in, u_in, o_out, u_out = g.ports[lab - 1]
        if choice == ORIENTED:
            wires.append(((OLD, o_in), (OLD, u_out)))
            wires.append(((OLD, u_in), (OLD, o_out)))
        else:
            t = len(new_kinds)
            new_kinds.extend(["snk", "src"])
            s = t + 1
            wires.extend([
                ((OLD, o_in), (NEW, t, 0)),
                ((OLD, u_in), (NEW, t, 1)),
                ((NEW, s, 0), (OLD, o_out)),
                ((NEW, s, 1), (OLD, u_out)),
                ((NEW, s, 2), (NEW, t, 2)),
            ])
    return splice(g, range(g.n_vertices), new_kinds, wires)


def _weight(sign: int, choice: str) -> LaurentPoly:
    if choice == ORIENTED:
        return LaurentPoly.mono(2 * sign)
    return LaurentPoly.mono(-sign, -1)


def _choices(n: int, index: int) -> tuple[str, ...]:
    # bit k of the counter decides chord k + 1; 0 = oriented
    return tuple(UNORIENTED if index >> k & 1 else ORIENTED for k in range(n))


def expand_states(d: ChordDiagram) -> list[Sl3State]:
    """All 2^n states in binary-counter order over chord labels."""
    if d.level == FREE:
        raise ValueError("the sl(3) state sum needs a decorated diagram")
    g = to_framed_graph(d)
    signs = _signs(d)
    out = []
    for idx in range(2 ** d.n_chords):
        ch = _choices(d.n_chords, idx)
        w = LaurentPoly.const(1)
        for s, c in zip(signs, ch):
            w = w * _weight(s, c)
        out.append(Sl3State(ch, w, state_web(d, ch, g)))
    return out


def _block_sum(args) -> GraphPolynomial:
    d, start, stop = args
    g = to_framed_graph(d)
    signs = _signs(d)
    total = GraphPolynomial.zero()
    for idx in range(start, stop):
        ch = _choices(d.n_chords, idx)
        w = LaurentPoly.const(1)
        for s, c in zip(signs, ch):
            w = w * _weight(s, c)
        total = total + reduce_sl3(state_web(d, ch, g)).scale(w)
    return total


def bracket(d: ChordDiagram, normalized: bool = True, threads: int | None = None) -> GraphPolynomial:
    """Sum of state weights times reduced state webs, times ``A^(-8 writhe)``."""
    if d.level == FREE:
        raise ValueError("the sl(3) bracket needs a decorated diagram")
    n_states = 2 ** d.n_chords
    cap = thread_cap(threads)
    args = [(d, a, b) for a, b in blocks(n_states, cap * 4 if cap > 1 else 1)]
    total = summed(_block_sum, args, cap, GraphPolynomial.zero())
    if normalized and d.level == VIRTUAL:
        total = total.scale(LaurentPoly.mono(-8 * writhe(d)))
    return total


def free_bracket(d: ChordDiagram, a: int = 1, threads: int | None = None) -> GraphPolynomial:
    """The bracket at ``A = a``; any decoration level (signs play no role there)."""
    if d.level == FREE:
        d = _make(d.circles, _default_roles(d), [1] * d.n_chords, VIRTUAL)
    return evaluate_A(bracket(d, normalized=True, threads=threads), a)


def _default_roles(d: ChordDiagram):
    roles = [["U"] * len(c) for c in d.circles]
    for lab in d.labels():
        (c, i), _ = d.endpoints[lab]
        roles[c][i] = "O"
    return roles


def unoriented_state(d: ChordDiagram) -> Web:
    """The state with every crossing resolved by a sink/source pair."""
    return state_web(d, [UNORIENTED] * d.n_chords)


# ----------------------------------------------------------- certificates

def _cycle_direction_counts(g: Web, cycle) -> list[int]:
    """For each cycle vertex, how many of its two cycle edges leave it."""
    verts, darts = cycle
    k = len(verts)
    outs = []
    for i in range(k):
        leaving = darts[i][0]  # dart at verts[i] on the edge to verts[i+1]
        arriving = darts[i - 1][1]  # dart at verts[i] on the edge from verts[i-1]
        outs.append(sum(1 for h in (leaving, arriving) if g.slot_of(h) >= 2))
    return outs


@dataclass
class MinimalityReport:
    crossings: int
    kus_vertices: int
    kus_has_bigon: bool
    kus_has_quadrilateral: bool
    kus_girth: float
    diagram_girth: float
    bad_triangles: int
    bad_quadrilaterals: int
    special_quadrilaterals: int
    certificates: list[str] = field(default_factory=list)
    conclusions: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        for k in ("kus_girth", "diagram_girth"):
            if out[k] == float("inf"):
                out[k] = "inf"
        return out


def minimality_report(d: ChordDiagram) -> MinimalityReport:
    """Sufficient conditions for minimality read off the diagram and its K_us.

    * ``kus-irreducible``: the all-unoriented state has no bigon and no
      quadrilateral, so it survives in the bracket of every diagram of the
      same class, and the diagram has the minimal number of crossings.
    * ``girth>=5``: a framed graph of girth at least five always has an
      irreducible all-unoriented state, so the previous certificate applies.
    * ``no-bad-polygons``: no loops or bigons, no triangle has a vertex with both of its triangle
      edges leaving it, and no quadrilateral has two such vertices.

    A quadrilateral with two source-like vertices must have them opposite
    each other (adjacent ones would share an edge leaving both), so bad and
    special quadrilaterals are the same cycles; both counts are reported.
    """
    g = to_framed_graph(d)
    kus = unoriented_state(d)
    polys = find_polygons(kus, 4)
    has_bigon = any(len(c[0]) == 2 for c in polys)
    has_quad = any(len(c[0]) == 4 for c in polys)
    cycles = [c for c in cycles_up_to(g, 4) if len(c[0]) >= 3]
    bad_tri = bad_quad = special = 0
    for c in cycles:
        outs = _cycle_direction_counts(g, c)
        if len(c[0]) == 3 and 2 in outs:
            bad_tri += 1
        if len(c[0]) == 4:
            sources = [i for i, o in enumerate(outs) if o == 2]
            if len(sources) >= 2:
                bad_quad += 1
            if sources in ([0, 2], [1, 3]):
                special += 1
    rep = MinimalityReport(
        crossings=d.n_chords,
        kus_vertices=kus.n_vertices,
        kus_has_bigon=has_bigon,
        kus_has_quadrilateral=has_quad,
        kus_girth=girth(kus),
        diagram_girth=girth(g),
        bad_triangles=bad_tri,
        bad_quadrilaterals=bad_quad,
        special_quadrilaterals=special,
    )
    if d.n_chords and not has_bigon and not has_quad:
        rep.certificates.append("kus-irreducible")
        rep.conclusions.extend([
            "minimal crossing number among equivalent diagrams",
            "non-trivial",
            "non-classical",
        ])
    if d.n_chords and rep.diagram_girth >= 5:
        rep.certificates.append("girth>=5")
    if d.n_chords and rep.diagram_girth >= 3 and bad_tri == 0 and bad_quad == 0:
        rep.certificates.append("no-bad-polygons")
    return rep


def classicality_flag(p: GraphPolynomial) -> str:
    return "undetermined" if is_scalar(p) else "non-classical"
