"""Polygon search and the oriented trivalent (sl(3)) reduction rewriter.

Local rules, with ``[3] = A^6 + 1 + A^-6``:

* a free circle is replaced by the factor ``[3]``;
* a bigon (source and sink joined by two parallel edges) collapses to a
  single edge, times ``A^3 + A^-3``;
* a quadrilateral with four distinct vertices is replaced by the sum of the
  two ways of joining its outer edges in cyclically adjacent pairs.

Graphs with neither bigons nor quadrilaterals are irreducible; each
connected irreducible component becomes a monomial factor named by its
canonical key.  End vertices (tangle boundary points) are never part of a
cycle, so polygons touching the boundary are left alone automatically.
"""

from __future__ import annotations

import random
import threading
from typing import Sequence

from .canon import canonical_key, component_keys
from .poly import GraphPolynomial, LaurentPoly, bigon_factor, quantum3
from .web import OLD, Web, cycles_up_to, splice

ORIENTED_KINDS = {"src", "snk", "end"}


def find_polygons(web: Web, max_len: int = 5) -> list[tuple[list[int], list[tuple[int, int]]]]:
    """Simple cycles with distinct vertices, up to ``max_len`` edges.

    On oriented bipartite webs only bigons and quadrilaterals are returned.
    Cycles through vertices that are not trivalent are ignored.
    """
    tri = {v for v, k in enumerate(web.kinds) if k in ("src", "snk", "tri")}
    cycles = cycles_up_to(web, max_len, allowed=tri)
    if set(web.kinds) <= ORIENTED_KINDS:
        cycles = [c for c in cycles if len(c[0]) in (2, 4)]
    cycles.sort(key=lambda c: (len(c[0]), c[0]))
    return cycles


def _bigon(web: Web):
    for v, k in enumerate(web.kinds):
        if k != "src":
            continue
        seen = {}
        for h in web.ports[v]:
            u = web.vertex_of(web.mate[h])
            if u in seen:
                return v, u
            seen[u] = h
    return None


def _collapse_bigon(web: Web, u: int, v: int) -> Web:
    hu = [h for h in web.ports[u] if web.vertex_of(web.mate[h]) == v]
    outer_u = [h for h in web.ports[u] if web.vertex_of(web.mate[h]) != v]
    outer_v = [h for h in web.ports[v] if web.vertex_of(web.mate[h]) != u]
    if len(hu) == 3:
        # theta component: two of the edges form the bigon, the third closes up
        return splice(web, [u, v], [], [((OLD, web.ports[u][2]), (OLD, web.mate[web.ports[u][2]]))])
    return splice(web, [u, v], [], [((OLD, outer_u[0]), (OLD, outer_v[0]))])


def _quad_terms(web: Web, cycle) -> list[Web]:
    verts, darts = cycle
    on_cycle = set()
    for a, b in darts:
        on_cycle.add(a)
        on_cycle.add(b)
    outer = []
    for v in verts:
        rest = [h for h in web.ports[v] if h not in on_cycle]
        outer.append(rest[0])
    t1 = [((OLD, outer[0]), (OLD, outer[1])), ((OLD, outer[2]), (OLD, outer[3]))]
    t2 = [((OLD, outer[1]), (OLD, outer[2])), ((OLD, outer[3]), (OLD, outer[0]))]
    return [splice(web, verts, [], t1), splice(web, verts, [], t2)]


class Sl3Reducer:
    """Memoised sl(3) rewriter.  With ``rng`` set, picks polygons at random
    and bypasses the memo table (used to exercise confluence)."""

    def __init__(self, rng: random.Random | None = None):
        self.rng = rng
        self.memo: dict[str, GraphPolynomial] = {}
        self.lock = threading.Lock()

    def reduce(self, web: Web) -> GraphPolynomial:
        factor = LaurentPoly.const(1)
        q3 = quantum3()
        while True:
            if web.circles:
                factor = factor * q3 ** web.circles
                web = web.without_circles()
            if self.rng is not None:
                polys = find_polygons(web, 4)
                if not polys:
                    return _irreducible(web).scale(factor)
                verts, _ = self.rng.choice(polys)
                if len(verts) == 2:
                    u, v = verts if web.kinds[verts[0]] == "src" else verts[::-1]
                    web = _collapse_bigon(web, u, v)
                    factor = factor * bigon_factor()
                    continue
                total = GraphPolynomial.zero()
                for t in _quad_terms(web, self.rng.choice([c for c in polys if len(c[0]) == 4])):
                    total = total + self.reduce(t)
                return total.scale(factor)
            b = _bigon(web)
            if b is None:
                break
            web = _collapse_bigon(web, *b)
            factor = factor * bigon_factor()
        key = canonical_key(web).key
        with self.lock:
            hit = self.memo.get(key)
        if hit is None:
            quads = find_polygons(web, 4)
            if quads:
                hit = GraphPolynomial.zero()
                for t in _quad_terms(web, quads[0]):
                    hit = hit + self.reduce(t)
            else:
                hit = _irreducible(web)
            with self.lock:
                self.memo[key] = hit
        return hit.scale(factor)


def _irreducible(web: Web) -> GraphPolynomial:
    if web.n_vertices == 0:
        return GraphPolynomial.scalar(1)
    keys = [k.key for k in component_keys(web)]
    return GraphPolynomial.graph(keys)


_default = Sl3Reducer()


def reduce_sl3(web: Web, rng: random.Random | None = None) -> GraphPolynomial:
    """Reduce an oriented web to its normal form in the graph module."""
    if rng is not None:
        return Sl3Reducer(rng).reduce(web)
    return _default.reduce(web)


def is_sl3_irreducible(web: Web) -> bool:
    return web.circles == 0 and not find_polygons(web, 4)


def oriented_web(n_src: int, edges: Sequence[tuple[int, int]]) -> Web:
    """Oriented web from an edge list; vertices ``< n_src`` are sources."""
    from .web import web_from_edges

    n = 1 + max((max(e) for e in edges), default=-1)
    n = max(n, n_src)
    kinds = ["src" if v < n_src else "snk" for v in range(n)]
    w = web_from_edges(kinds, edges)
    w.validate()
    return w
