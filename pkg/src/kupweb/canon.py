"""Canonical labeling of webs.

Each web is encoded as a vertex-coloured simple graph whose nodes are the
web's vertices *and* darts.  Local structure that an isomorphism must
respect (opposite pairs of a framed node, the cyclic order at a rigid node)
is expressed with small gadget nodes.  A colour-refinement plus
individualisation search then produces a certificate that is identical for
isomorphic inputs.

The dart order at ``tri`` vertices is deliberately left out of the encoding.
Instead the search reports, for the chosen canonical labeling, the parity
of every ``tri`` vertex's order relative to rank order.  Their product is
the sign of the graph relative to its canonical representative.  When some
automorphism has odd total parity the graph equals its own negative and
the sign is reported as ``0``.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass
from typing import Sequence

from .web import Web

ZERO = 0


@dataclass(frozen=True)
class CanonicalKey:
    key: str  # lowercase hex
    sign: int  # +1, -1, or 0 when the graph is its own negative

    def __str__(self) -> str:
        return self.key


# ------------------------------------------------------------------ encoding

def _encode(web: Web, verts: Sequence[int]):
    """Coloured simple graph for the component spanned by ``verts``."""
    colors: list[str] = []
    adj: list[list[int]] = []

    def node(color: str) -> int:
        colors.append(color)
        adj.append([])
        return len(colors) - 1

    def link(a: int, b: int) -> None:
        adj[a].append(b)
        adj[b].append(a)

    vnode = {}
    dnode = {}
    for v in verts:
        k = web.kinds[v]
        lab = web.labels[v]
        vnode[v] = node(f"V:{k}:{lab!r}" if lab is not None else f"V:{k}")
        for h in web.ports[v]:
            dnode[h] = node("D")
    for v in verts:
        k = web.kinds[v]
        ps = web.ports[v]
        if k == "node":
            for pair in ((ps[0], ps[2]), (ps[1], ps[3])):
                p = node("P")
                link(p, vnode[v])
                link(p, dnode[pair[0]])
                link(p, dnode[pair[1]])
        elif k == "rnode":
            for i in range(4):
                link(dnode[ps[i]], vnode[v])
                t = node("T")
                s = node("S")
                link(t, dnode[ps[i]])
                link(s, dnode[ps[(i + 1) % 4]])
                link(t, s)
        else:
            for h in ps:
                link(dnode[h], vnode[v])
    for v in verts:
        for h in web.ports[v]:
            m = web.mate[h]
            if h < m:
                link(dnode[h], dnode[m])
    return colors, adj, vnode, dnode


# ------------------------------------------------------------------ search

def _refine(col: list[int], adj: list[list[int]]) -> list[int]:
    n = len(col)
    ncls = len(set(col))
    while True:
        sig = [(col[v], tuple(sorted(col[u] for u in adj[v]))) for v in range(n)]
        order = sorted(set(sig))
        rank = {s: i for i, s in enumerate(order)}
        new = [rank[s] for s in sig]
        if len(order) == ncls:
            return new
        ncls = len(order)
        col = new


def _perm_parity(seq: Sequence[int]) -> int:
    """+1 if ``seq`` sorts with an even number of transpositions."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        while seq[i] != i:
            j = seq[i]
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


def _rank_positions(values: Sequence[int]) -> list[int]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    pos = [0] * len(values)
    for r, i in enumerate(order):
        pos[i] = r
    return pos


class _Search:
    def __init__(self, colors: list[str], adj: list[list[int]]):
        self.adj = adj
        self.colors = colors
        names = sorted(set(colors))
        rank = {c: i for i, c in enumerate(names)}
        self.init = [rank[c] for c in colors]
        self.cert_first: dict[tuple, list[int]] = {}
        self.autos: list[list[int]] = []
        self.best: tuple | None = None
        self.best_lab: list[int] | None = None
        self.abort_subtree = False
        self.root_branch = 0

    def leaf(self, col: list[int]) -> None:
        n = len(col)
        lab = [0] * n  # lab[node] = canonical position
        for v in range(n):
            lab[v] = col[v]
        inv = [0] * n
        for v in range(n):
            inv[lab[v]] = v
        edges = sorted(
            (min(lab[a], lab[b]), max(lab[a], lab[b]))
            for a in range(n) for b in self.adj[a] if a < b
        )
        cert = (tuple(self.colors[inv[i]] for i in range(n)), tuple(edges))
        seen = self.cert_first.get(cert)
        if seen is not None:
            prev, branch = seen
            # prev and lab give the same certificate, so inv o prev is an automorphism
            self.autos.append([inv[prev[v]] for v in range(n)])
            if branch != self.root_branch:
                # this root branch is an automorphic image of an earlier one
                self.abort_subtree = True
            return
        self.cert_first[cert] = (lab, self.root_branch)
        if self.best is None or cert < self.best:
            self.best = cert
            self.best_lab = lab

    def descend(self, col: list[int], root: bool) -> None:
        col = _refine(col, self.adj)
        n = len(col)
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(col[v], []).append(v)
        if len(cells) == n:
            self.leaf(col)
            return
        target = min((len(c), k) for k, c in cells.items() if len(c) > 1)[1]
        cell = cells[target]
        explored: list[int] = []
        for v in cell:
            if root and explored and self._same_orbit(v, explored):
                continue
            nc = [2 * c + 1 for c in col]
            nc[v] = 2 * col[v]
            if root:
                self.abort_subtree = False
                self.root_branch += 1
            self.descend(nc, False)
            explored.append(v)
            if not root and self.abort_subtree:
                return

    def _same_orbit(self, v: int, explored: list[int]) -> bool:
        # orbit of v under the group generated by the automorphisms so far
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for a in self.autos:
                y = a[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(e in orbit for e in explored)

    def run(self):
        self.descend(list(self.init), True)
        return self.best, self.best_lab, self.autos


# ------------------------------------------------------------------ public

_registry: dict[str, tuple[tuple, Web, int]] = {}
_registry_lock = threading.Lock()


def _component_form(web: Web, verts: Sequence[int]):
    colors, adj, vnode, dnode = _encode(web, verts)
    cert, lab, autos = _Search(colors, adj).run()
    sign = 1
    tri = [v for v in verts if web.kinds[v] == "tri"]
    for v in tri:
        sign *= _perm_parity(_rank_positions([lab[dnode[h]] for h in web.ports[v]]))
    back = {vnode[u]: u for u in tri}
    for a in autos:
        s = 1
        for v in tri:
            # where each dart of v lands among the darts of its image vertex
            img_v = back[a[vnode[v]]]
            slot_of = {dnode[h]: i for i, h in enumerate(web.ports[img_v])}
            s *= _perm_parity([slot_of[a[dnode[h]]] for h in web.ports[v]])
        if s == -1:
            sign = ZERO
            break
    return cert, sign


def _digest(payload: tuple) -> str:
    return hashlib.blake2b(repr(payload).encode(), digest_size=16).hexdigest()


def component_keys(web: Web) -> list[CanonicalKey]:
    """Keys of the connected components (free circles are not included)."""
    out = []
    for comp in web.components():
        cert, sign = _component_form(web, comp)
        key = _digest(("C", cert))
        _remember(key, ("C", cert), web.induced(comp), sign)
        out.append(CanonicalKey(key, sign))
    return sorted(out, key=lambda k: k.key)


def canonical_key(web: Web) -> CanonicalKey:
    """Key of the whole web, circles included; sign multiplies over components."""
    comps = component_keys(web)
    sign = 1
    for c in comps:
        sign *= c.sign
    payload = ("W", web.circles, tuple(c.key for c in comps))
    key = _digest(payload)
    _remember(key, payload, web, sign)
    return CanonicalKey(key, sign)


def _remember(key: str, payload: tuple, web: Web, sign: int) -> None:
    with _registry_lock:
        old = _registry.get(key)
        if old is None:
            _registry[key] = (payload, web, sign)
        elif old[0] != payload:
            raise RuntimeError(f"digest collision on key {key}")


def lookup(key: str) -> tuple[Web, int]:
    """A representative web for ``key`` and its sign relative to the key.

    The representative equals ``sign`` times the canonical graph named by
    the key.
    """
    with _registry_lock:
        _, web, sign = _registry[key]
    return web, sign


def is_isomorphic(a: Web, b: Web) -> bool:
    return canonical_key(a).key == canonical_key(b).key
