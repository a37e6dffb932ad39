"""The graph-valued G2 bracket of free knots at q = 1.

Trivalent vertices are ``tri`` vertices; the order of their three darts
matters up to even permutations, and an odd reordering negates the graph.

Polygon relations are stated for a simple cycle ``v0 .. v(k-1)`` whose
vertices are ordered ``(next, prev, outer)``: the dart on the edge to
``v(i+1)``, the dart on the edge to ``v(i-1)``, and the remaining dart.  The
outer darts ``o0 .. o(k-1)`` follow the cycle.  A cycle stored with other
orders picks up the product of the reordering parities as a sign.

A framed 4-valent node with darts ``(a, b, c, d)`` (``a``/``c`` and
``b``/``d`` opposite) expands into four states of weight 1/2 each.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .canon import _perm_parity, canonical_key, component_keys
from .diagram import ChordDiagram, NotFound
from .framed import to_framed_graph
from .poly import QQ, GraphPolynomial, LaurentPoly
from .statesum import blocks, summed, thread_cap
from .web import NEW, OLD, Web, cycles_up_to, girth, splice

HALF = Fraction(1, 2)

# Values at q = 1.  Each right-hand term is a list of pieces on the outer
# darts; "wire" joins two darts, "vertex" is a new tri vertex, "tree" and
# the H/I shapes add internal edges named by letters.
LOOP = 7
LOLLIPOP = 0
BIGON = -6
TRIANGLE = 3
SQUARE_WIRES = 3
SQUARE_EDGES = -2
PENTAGON_TREE = 1
PENTAGON_WIRE_VERTEX = -1

SMOOTHING_A = "SmoothingA"
SMOOTHING_B = "SmoothingB"
EDGE_A = "EdgeA"
EDGE_B = "EdgeB"
CHOICES = (SMOOTHING_A, SMOOTHING_B, EDGE_A, EDGE_B)

G2_CONSTANTS = {
    "loop": LOOP,
    "lollipop": LOLLIPOP,
    "bigon": BIGON,
    "triangle": TRIANGLE,
    "square_wires": SQUARE_WIRES,
    "square_edges": SQUARE_EDGES,
    "pentagon_tree": PENTAGON_TREE,
    "pentagon_wire_vertex": PENTAGON_WIRE_VERTEX,
    "node_state": HALF,
}


def _zero() -> GraphPolynomial:
    return GraphPolynomial.zero(QQ)


def _scalar(c) -> GraphPolynomial:
    return GraphPolynomial.scalar(LaurentPoly.const(Fraction(c), QQ))


# ------------------------------------------------------------ local pieces

def node_terms(a, b, c, d) -> list[tuple[str, Fraction, list[str], list]]:
    """The four resolutions of a framed node on terminals ``a, b, c, d``.

    Returned as ``(choice, weight, new kinds, wires)``.  New trivalent
    vertices list the two inherited darts first and the new edge last.
    """
    return [
        (SMOOTHING_A, HALF, [], [(a, b), (c, d)]),
        (SMOOTHING_B, HALF, [], [(a, d), (b, c)]),
        (EDGE_A, HALF, ["tri", "tri"],
         [(a, (NEW, 0, 0)), (b, (NEW, 0, 1)), (c, (NEW, 1, 0)), (d, (NEW, 1, 1)),
          ((NEW, 0, 2), (NEW, 1, 2))]),
        (EDGE_B, HALF, ["tri", "tri"],
         [(d, (NEW, 0, 0)), (a, (NEW, 0, 1)), (b, (NEW, 1, 0)), (c, (NEW, 1, 1)),
          ((NEW, 0, 2), (NEW, 1, 2))]),
    ]


def polygon_terms(o: Sequence) -> list[tuple[Fraction, list[str], list]]:
    """Right-hand side of the relation for a ``len(o)``-gon with outer terminals ``o``.

    Terms are ``(coefficient, new kinds, wires)``; the polygon vertices are
    removed by the caller.
    """
    k = len(o)
    if k == 1:
        return []
    if k == 2:
        return [(Fraction(BIGON), [], [(o[0], o[1])])]
    if k == 3:
        return [(Fraction(TRIANGLE), ["tri"],
                 [(o[0], (NEW, 0, 0)), (o[1], (NEW, 0, 1)), (o[2], (NEW, 0, 2))])]
    if k == 4:
        e = ((NEW, 0, 2), (NEW, 1, 2))
        return [
            (Fraction(SQUARE_WIRES), [], [(o[0], o[1]), (o[2], o[3])]),
            (Fraction(SQUARE_WIRES), [], [(o[0], o[3]), (o[1], o[2])]),
            (Fraction(SQUARE_EDGES), ["tri", "tri"],
             [(o[0], (NEW, 0, 0)), (o[1], (NEW, 0, 1)),
              (o[2], (NEW, 1, 0)), (o[3], (NEW, 1, 1)), e]),
            (Fraction(SQUARE_EDGES), ["tri", "tri"],
             [(o[3], (NEW, 0, 0)), (o[0], (NEW, 0, 1)),
              (o[1], (NEW, 1, 0)), (o[2], (NEW, 1, 1)), e]),
        ]
    if k == 5:
        out = []
        for i in range(5):
            r = [o[(i + j) % 5] for j in range(5)]
            # x(r0, r1, e), y(e, r2, f), z(f, r3, r4)
            out.append((Fraction(PENTAGON_TREE), ["tri", "tri", "tri"], [
                (r[0], (NEW, 0, 0)), (r[1], (NEW, 0, 1)), ((NEW, 0, 2), (NEW, 1, 0)),
                (r[2], (NEW, 1, 1)), ((NEW, 1, 2), (NEW, 2, 0)),
                (r[3], (NEW, 2, 1)), (r[4], (NEW, 2, 2)),
            ]))
        for i in range(5):
            r = [o[(i + j) % 5] for j in range(5)]
            out.append((Fraction(PENTAGON_WIRE_VERTEX), ["tri"], [
                (r[0], r[1]),
                (r[2], (NEW, 0, 0)), (r[3], (NEW, 0, 1)), (r[4], (NEW, 0, 2)),
            ]))
        return out
    raise ValueError(f"no relation for a {k}-gon")


def find_g2_polygons(web: Web, max_len: int = 5):
    """Simple cycles of length <= ``max_len`` through ``tri`` vertices only."""
    tri = {v for v, k in enumerate(web.kinds) if k == "tri"}
    cycles = cycles_up_to(web, max_len, allowed=tri)
    cycles.sort(key=lambda c: (len(c[0]), c[0]))
    return cycles


def rewrite_polygon(web: Web, cycle) -> list[tuple[Fraction, Web]]:
    """Apply the polygon relation to ``cycle``; coefficients include the sign."""
    verts, darts = cycle
    k = len(verts)
    if k == 1:
        return []
    sign = 1
    outer = []
    for i, v in enumerate(verts):
        nxt = darts[i][0]
        prv = darts[i - 1][1]
        (rest,) = [h for h in web.ports[v] if h not in (nxt, prv)]
        ps = web.ports[v]
        target = (nxt, prv, rest)
        sign *= _perm_parity([target.index(h) for h in ps])
        outer.append((OLD, rest))
    out = []
    for coeff, kinds, wires in polygon_terms(outer):
        out.append((sign * coeff, splice(web, verts, kinds, wires)))
    return out


def transpose_vertex(web: Web, v: int, i: int = 0, j: int = 1) -> Web:
    """Swap two darts in the stored order of vertex ``v`` (negates the graph)."""
    ports = list(web.ports)
    p = list(ports[v])
    p[i], p[j] = p[j], p[i]
    ports[v] = tuple(p)
    return Web(web.kinds, tuple(ports), web.mate, web.labels, web.circles)


# --------------------------------------------------------------- evaluator

class G2Evaluator:
    """Memoised evaluation of webs mixing framed nodes and tri vertices.

    Polygons among tri vertices are reduced first (smallest, then lowest
    vertex indices); when none is left the first framed node is expanded.
    The memo maps a canonical key to ``(value, sign)`` for the first web
    seen with that key, which equals ``sign`` times the canonical graph.
    """

    def __init__(self, polygon_choice=None):
        self.polygon_choice = polygon_choice
        self.memo: dict[str, tuple[GraphPolynomial, int]] = {}
        self.lock = threading.Lock()

    def value(self, web: Web) -> GraphPolynomial:
        factor = Fraction(LOOP) ** web.circles
        if web.circles:
            web = web.without_circles()
        if self.polygon_choice is not None:
            return self._compute(web).scale(LaurentPoly.const(factor, QQ))
        ck = canonical_key(web)
        if ck.sign == 0:
            return _zero()
        with self.lock:
            hit = self.memo.get(ck.key)
        if hit is None:
            val = self._compute(web)
            with self.lock:
                self.memo[ck.key] = (val, ck.sign)
            return val.scale(LaurentPoly.const(factor, QQ))
        val, s0 = hit
        return val.scale(LaurentPoly.const(factor * ck.sign * s0, QQ))

    def _compute(self, web: Web) -> GraphPolynomial:
        polys = find_g2_polygons(web)
        if polys:
            cyc = polys[0] if self.polygon_choice is None else self.polygon_choice(polys)
            total = _zero()
            for c, w in rewrite_polygon(web, cyc):
                total = total + self.value(w).scale(LaurentPoly.const(c, QQ))
            return total
        nodes = [v for v, k in enumerate(web.kinds) if k == "node"]
        if nodes:
            v = nodes[0]
            total = _zero()
            for _, wt, kinds, wires in node_terms(*[(OLD, h) for h in web.ports[v]]):
                w = splice(web, [v], kinds, wires)
                total = total + self.value(w).scale(LaurentPoly.const(wt, QQ))
            return total
        return irreducible_term(web)


def irreducible_term(web: Web) -> GraphPolynomial:
    """Signed monomial of an irreducible web without circles."""
    if web.n_vertices == 0:
        return _scalar(1)
    keys = component_keys(web)
    sign = 1
    for k in keys:
        sign *= k.sign
    if sign == 0:
        return _zero()
    return GraphPolynomial.graph([k.key for k in keys], LaurentPoly.const(Fraction(sign), QQ))


_default = G2Evaluator()


def g2_reduce(web: Web, rng=None) -> GraphPolynomial:
    """Normal form of a G2 web.  With ``rng``, polygons are picked at random."""
    if rng is not None:
        return G2Evaluator(polygon_choice=rng.choice).value(web)
    return _default.value(web)


def is_g2_irreducible(web: Web) -> bool:
    return web.circles == 0 and not find_g2_polygons(web)


# ------------------------------------------------------------------ states

@dataclass(frozen=True)
class G2State:
    choices: tuple[str, ...]  # indexed by node position in the framed graph
    weight: Fraction
    web: Web

    @property
    def leading(self) -> bool:
        return all(c in (EDGE_A, EDGE_B) for c in self.choices)


def state_web(g: Web, choices: Sequence[str]) -> Web:
    """Resolve every framed node of ``g`` by the matching choice."""
    kinds: list[str] = []
    wires = []
    nodes = [v for v, k in enumerate(g.kinds) if k == "node"]
    for v, choice in zip(nodes, choices):
        terms = {t[0]: t for t in node_terms(*[(OLD, h) for h in g.ports[v]])}
        _, _, nk, nw = terms[choice]
        base = len(kinds)
        kinds.extend(nk)
        for a, b in nw:
            wires.append((_shift(a, base), _shift(b, base)))
    return splice(g, nodes, kinds, wires)


def _shift(t, base):
    return (NEW, t[1] + base, t[2]) if t[0] == NEW else t


def _framed(d: ChordDiagram | Web) -> Web:
    return d if isinstance(d, Web) else to_framed_graph(d.as_free())


def g2_expand(d: ChordDiagram | Web, leading_only: bool = False) -> list[G2State]:
    """All 4^n states (or the 2^n leading ones) of a framed graph or diagram."""
    g = _framed(d)
    n = sum(1 for k in g.kinds if k == "node")
    options = (EDGE_A, EDGE_B) if leading_only else CHOICES
    out = []
    for ch in product(options, repeat=n):
        out.append(G2State(tuple(ch), HALF ** n, state_web(g, ch)))
    return out


def _state_block(args) -> GraphPolynomial:
    g, n, start, stop = args
    total = _zero()
    for idx in range(start, stop):
        ch = tuple(CHOICES[idx // 4 ** k % 4] for k in range(n))
        total = total + g2_reduce(state_web(g, ch)).scale(LaurentPoly.const(HALF ** n, QQ))
    return total


def g2_free(d: ChordDiagram | Web, threads: int | None = None,
            by_states: bool = False) -> GraphPolynomial:
    """The free G2 bracket.

    By default nodes are expanded lazily with polygon reduction in between.
    ``by_states=True`` sums over all 4^n states explicitly, split across
    ``threads`` processes.
    """
    g = _framed(d)
    if not by_states:
        return _default.value(g)
    n = sum(1 for k in g.kinds if k == "node")
    cap = thread_cap(threads)
    args = [(g, n, a, b) for a, b in blocks(4 ** n, cap * 4 if cap > 1 else 1)]
    return summed(_state_block, args, cap, _zero())


# ------------------------------------------------------------ certificates

@dataclass
class G2MinimalityReport:
    crossings: int
    leading_states: int
    witness: tuple[str, ...] | None = None
    witness_girth: float | None = None
    witness_key: str | None = None
    survives: bool | None = None
    certificates: list[str] = field(default_factory=list)
    conclusions: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        if out["witness"] is not None:
            out["witness"] = list(out["witness"])
        if out["witness_girth"] == float("inf"):
            out["witness_girth"] = "inf"
        return out


def g2_minimality(d: ChordDiagram | Web, check_survival: bool = True) -> G2MinimalityReport:
    """Look for a leading state of girth at least six.

    Such a state is irreducible, so if its graph keeps a nonzero coefficient
    in the bracket the diagram is non-trivial and has minimal crossing
    number.  Survival is checked against the computed bracket.
    """
    g = _framed(d)
    n = sum(1 for k in g.kinds if k == "node")
    rep = G2MinimalityReport(crossings=n, leading_states=2 ** n if n else 0)
    if n == 0:
        return rep
    for st in g2_expand(g, leading_only=True):
        gi = girth(st.web)
        if gi >= 6 and st.web.circles == 0:
            rep.witness = st.choices
            rep.witness_girth = gi
            keys = component_keys(st.web)
            rep.witness_key = "*".join(k.key for k in keys)
            break
    if rep.witness is None:
        return rep
    rep.certificates.append("leading-girth>=6")
    if check_survival:
        bracket = g2_free(g)
        mono = [k.key for k in component_keys(state_web(g, rep.witness))]
        rep.survives = not bracket.coeff(mono).is_zero()
    if rep.survives or not check_survival:
        rep.conclusions.extend([
            "minimal crossing number among equivalent diagrams",
            "non-trivial",
            "non-classical",
        ])
    return rep


def bipartite_state(d: ChordDiagram | Web) -> Web | NotFound:
    """A leading state whose graph is bipartite, or ``NotFound``.

    Orienting the strands makes the all-EdgeA state bipartite (each node
    splits into an incoming and an outgoing vertex), so for framed graphs
    the scan stops at its first state.
    """
    g = _framed(d)
    for st in g2_expand(g, leading_only=True):
        if _is_bipartite(st.web):
            return st.web
    return NotFound("no leading state is bipartite")


def _is_bipartite(web: Web) -> bool:
    side: dict[int, int] = {}
    for s in range(web.n_vertices):
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in web.neighbors(v):
                if u not in side:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return False
    return True


# ---------------------------------------------------------------- families

def girth_six_family(n: int) -> ChordDiagram:
    """Free knot whose chords intersect in an ``n``-cycle (``n >= 7``).

    Its all-EdgeA leading state has girth six, so the minimality
    certificate applies.
    """
    from .diagram import polygon_code

    if n < 7:
        raise ValueError("the family starts at n = 7")
    return polygon_code(n)
