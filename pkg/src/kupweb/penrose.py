"""Penrose bracket, edge 3-colourings and two-coloured free links.

Colours are the non-zero elements of the Klein four-group, written as the
integers 1, 2, 3 with XOR as the group law (``R = 1``, ``B = 2``,
``P = 3``; ``W = 0`` is the identity used only for faces).

The Penrose bracket reads the stored dart order of a trivalent vertex as
its counterclockwise order.  An edge ``e`` between vertices ``u`` and ``v``
with orders ``(e, a, b)`` and ``(e, c, d)`` expands as the parallel
joining ``a-d, b-c`` minus the crossed joining ``a-c, b-d``; closed curves
count 3 each.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .canon import _perm_parity
from .diagram import ChordDiagram, NotFound
from .engine import reduce_sl3
from .framed import strand_walks, to_framed_graph
from .poly import evaluate_A, is_scalar
from .web import NEW, OLD, Web, WebBuilder, splice

TRIVALENT = ("tri", "src", "snk")
R, B, P = 1, 2, 3
COLOR_NAMES = {0: "W", R: "R", B: "B", P: "P"}


def _check_trivalent(web: Web) -> None:
    bad = sorted({k for k in web.kinds if k not in TRIVALENT})
    if bad:
        raise ValueError(f"expected trivalent vertices only, found {bad}")


def edge_ids(web: Web) -> list[int]:
    """One representative dart (the smaller one) per edge."""
    return sorted(h for h, m in enumerate(web.mate) if h < m)


# ------------------------------------------------------------- colourings

def edge_3_colorings(web: Web):
    """Yield every proper edge colouring as ``{edge id: colour}``."""
    _check_trivalent(web)
    edges = edge_ids(web)
    # order edges by a walk so conflicts show up early
    order = []
    seen = set()
    for v in range(web.n_vertices):
        for h in web.ports[v]:
            e = min(h, web.mate[h])
            if e not in seen:
                seen.add(e)
                order.append(e)
    order += [e for e in edges if e not in seen]
    color: dict[int, int] = {}

    def ok(e: int, c: int) -> bool:
        for h in (e, web.mate[e]):
            v = web.vertex_of(h)
            for g in web.ports[v]:
                f = min(g, web.mate[g])
                if f != e and color.get(f) == c:
                    return False
        # a loop edge meets itself at one vertex
        return web.vertex_of(e) != web.vertex_of(web.mate[e])

    def rec(i: int):
        if i == len(order):
            yield dict(color)
            return
        e = order[i]
        for c in (R, B, P):
            if ok(e, c):
                color[e] = c
                yield from rec(i + 1)
                del color[e]

    yield from rec(0)


def count_edge_3_colorings(web: Web) -> int:
    """Number of proper edge colourings; free circles contribute 3 each."""
    return sum(1 for _ in edge_3_colorings(web)) * 3 ** web.circles


def penrose_coloring_sum(web: Web) -> int:
    """Signed colouring count ``(-1)^(V/2) sum_c prod_v eps_v(c)``.

    ``eps_v`` is +1 when the colours read in dart order are an even
    permutation of ``(R, B, P)``.  This agrees with the Penrose bracket for
    every cyclic-order assignment, planar or not.
    """
    total = 0
    for col in edge_3_colorings(web):
        s = 1
        for ps in web.ports:
            s *= _perm_parity([col[min(h, web.mate[h])] - 1 for h in ps])
        total += s
    sign = -1 if web.n_vertices // 2 % 2 else 1
    return sign * total * 3 ** web.circles


# ---------------------------------------------------------------- bracket

def penrose_bracket(web: Web) -> int:
    """Expand edges until only closed curves remain."""
    _check_trivalent(web)
    return _penrose(_strip(web))


def _strip(web: Web) -> Web:
    kinds = tuple("tri" for _ in web.kinds)
    return Web(kinds, web.ports, web.mate, (None,) * len(kinds), web.circles)


@lru_cache(maxsize=4096)
def _penrose(web: Web) -> int:
    if web.n_vertices == 0:
        return 3 ** web.circles
    for h, m in enumerate(web.mate):
        u, v = web.vertex_of(h), web.vertex_of(m)
        if u != v:
            break
    else:
        return 0  # every remaining vertex carries a loop and a bridge
    su, sv = web.slot_of(h), web.slot_of(m)
    pu, pv = web.ports[u], web.ports[v]
    a, b = pu[(su + 1) % 3], pu[(su + 2) % 3]
    c, d = pv[(sv + 1) % 3], pv[(sv + 2) % 3]
    parallel = splice(web, [u, v], [], [((OLD, a), (OLD, d)), ((OLD, b), (OLD, c))])
    crossed = splice(web, [u, v], [], [((OLD, a), (OLD, c)), ((OLD, b), (OLD, d))])
    return _penrose(parallel) - _penrose(crossed)


def sl3_at_one_equals_penrose(web: Web) -> bool:
    """Compare the sl(3) value at ``A = 1`` with the Penrose bracket."""
    p = evaluate_A(reduce_sl3(web), 1)
    if not is_scalar(p):
        raise ValueError("the sl(3) reduction left irreducible graphs; is the web planar?")
    return p.coeff(()).evaluate(1) == penrose_bracket(web)


def web_from_rotation(rotation: Mapping[object, Sequence[object]],
                      kind: str | Mapping[object, str] = "tri") -> Web:
    """Trivalent web of a simple graph from cyclic neighbour orders.

    ``rotation[v]`` lists the neighbours of ``v`` in counterclockwise order.
    ``kind`` is one vertex kind for all vertices or a per-vertex mapping.
    """
    verts = sorted(rotation, key=repr)
    idx = {v: i for i, v in enumerate(verts)}
    b = WebBuilder()
    darts = [b.add_vertex(kind if isinstance(kind, str) else kind[v]) for v in verts]
    for v in verts:
        for i, u in enumerate(rotation[v]):
            if idx[u] < idx[v]:
                continue
            j = list(rotation[u]).index(v)
            b.join(darts[idx[v]][i], darts[idx[u]][j])
    w = b.build()
    w.validate()
    return w


# ------------------------------------------------------- free link colours

def inter_component_crossings(d: ChordDiagram) -> list[int]:
    """For each circle, the number of chords joining it to another circle."""
    out = [0] * len(d.circles)
    for lab in d.labels():
        (c1, _), (c2, _) = d.endpoints[lab]
        if c1 != c2:
            out[c1] += 1
            out[c2] += 1
    return out


def componentwise_even(d: ChordDiagram) -> bool:
    """Every component meets the others an even number of times.

    In a planar drawing two closed curves cross an even number of times in
    total, so the count of virtual crossings a component has with the others
    has the same parity as its count of classical ones.
    """
    return all(c % 2 == 0 for c in inter_component_crossings(d))


def two_coloring(x: ChordDiagram | Web) -> dict[int, int] | NotFound:
    """Colour edges of the framed graph by ``R``/``B`` so that opposite darts differ.

    Colours flip at every pass through a node, so each unicursal component
    must pass through nodes an even number of times.
    """
    web = x if isinstance(x, Web) else to_framed_graph(x.as_free())
    walks, _ = strand_walks(web)
    color: dict[int, int] = {}
    for walk in walks:
        if len(walk) % 2:
            return NotFound("a component passes through nodes an odd number of times")
        c = R
        for h in walk:
            # h enters a node; the edge it lies on gets the current colour
            color[min(h, web.mate[h])] = c
            c = B if c == R else R
    return color


@dataclass(frozen=True)
class ColoredWeb:
    web: Web
    colors: dict  # edge id -> colour

    def is_proper(self) -> bool:
        if all(k in TRIVALENT for k in self.web.kinds):
            for ps in self.web.ports:
                if sorted(self.colors[min(h, self.web.mate[h])] for h in ps) != [R, B, P]:
                    return False
            return True
        for ps in self.web.ports:
            for i in (0, 1):
                a, c = ps[i], ps[i + 2]
                ca = self.colors[min(a, self.web.mate[a])]
                cc = self.colors[min(c, self.web.mate[c])]
                if ca == cc or ca not in (R, B) or cc not in (R, B):
                    return False
        return True


def link_graph_translate(x: ColoredWeb) -> ColoredWeb:
    """Translate between edge 3-coloured trivalent graphs and 2-coloured free links.

    Graph to link: every ``P`` edge and its two end vertices become one
    framed node.  Each end keeps its ``R`` and ``B`` darts, and the ``R``
    dart of one end sits opposite the ``B`` dart of the other.  Link to
    graph: each node splits into two vertices, each taking one ``R`` and one
    ``B`` dart that are not opposite, joined by a new ``P`` edge.
    """
    if not x.is_proper():
        raise ValueError("input colouring is not proper")
    web, col = x.web, x.colors
    if all(k in TRIVALENT for k in web.kinds):
        return _graph_to_link(web, col)
    if all(k in ("node", "rnode") for k in web.kinds):
        return _link_to_graph(web, col)
    raise ValueError("expected a trivalent graph or a framed 4-valent graph")


def _color_of(web: Web, col, h: int) -> int:
    return col[min(h, web.mate[h])]


def _graph_to_link(web: Web, col) -> ColoredWeb:
    pedges = [e for e in edge_ids(web) if col[e] == P]
    remove, wires = [], []
    for k, e in enumerate(pedges):
        u, v = web.vertex_of(e), web.vertex_of(web.mate[e])
        ru, bu = _rb(web, col, u)
        rv, bv = _rb(web, col, v)
        remove += [u, v]
        # node darts (a, b, c, d): a/c and b/d opposite
        for slot, h in enumerate((ru, bu, bv, rv)):
            wires.append(((OLD, h), (NEW, k, slot)))
    out = splice(web, remove, ["node"] * len(pedges), wires)
    return ColoredWeb(out, _carry_colors(web, col, out, remove, wires))


def _rb(web: Web, col, v: int) -> tuple[int, int]:
    r = [h for h in web.ports[v] if _color_of(web, col, h) == R]
    b = [h for h in web.ports[v] if _color_of(web, col, h) == B]
    return r[0], b[0]


def _link_to_graph(web: Web, col) -> ColoredWeb:
    remove, wires, kinds = [], [], []
    for v in range(web.n_vertices):
        a, b, c, d = web.ports[v]
        pairs = [(a, b), (c, d)] if _color_of(web, col, a) != _color_of(web, col, b) else [(a, d), (b, c)]
        x, y = len(kinds), len(kinds) + 1
        kinds += ["tri", "tri"]
        remove.append(v)
        for t, (h1, h2) in zip((x, y), pairs):
            wires.append(((OLD, h1), (NEW, t, 0)))
            wires.append(((OLD, h2), (NEW, t, 1)))
        wires.append(((NEW, x, 2), (NEW, y, 2)))
    out = splice(web, remove, kinds, wires)
    colors = _carry_colors(web, col, out, remove, wires)
    for ps in out.ports:
        e = min(ps[2], out.mate[ps[2]])
        colors.setdefault(e, P)
    return ColoredWeb(out, colors)


def _carry_colors(old: Web, col, new: Web, removed, wires) -> dict[int, int]:
    """Colours of ``new`` edges, matched through the dart that kept its edge.

    The splice keeps vertex order: surviving vertices first, then the new
    ones, each with its darts in order.
    """
    gone = set(removed)
    keep = [v for v in range(old.n_vertices) if v not in gone]
    dart_map: dict[int, int] = {}
    k = 0
    for v in keep:
        for h in old.ports[v]:
            dart_map[h] = new.ports[k][old.slot_of(h)]
        k += 1
    n_keep = len(keep)
    out: dict[int, int] = {}
    for v in keep:
        for h in old.ports[v]:
            nh = dart_map[h]
            out[min(nh, new.mate[nh])] = _color_of(old, col, h)
    for a, b in wires:
        if a[0] == OLD and b[0] == NEW:
            nh = new.ports[n_keep + b[1]][b[2]]
            out[min(nh, new.mate[nh])] = _color_of(old, col, a[1])
    return out
