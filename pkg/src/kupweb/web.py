"""Half-edge graphs used for every state space in the package.

A :class:`Web` stores vertices with a *kind*, each owning an ordered tuple
of half-edges ("darts").  ``mate`` is the involution pairing darts into
edges.  Closed loops that carry no vertex are tracked only as a count.

Vertex kinds:

``src`` / ``snk``
    trivalent vertices of an oriented bipartite web; every edge runs from a
    ``src`` to a ``snk`` so no per-edge orientation is stored.
``tri``
    trivalent vertex whose dart order matters up to even permutations.
``node``
    4-valent framed vertex; slots (0, 2) and (1, 3) are opposite pairs.
``rnode``
    4-valent vertex whose dart tuple is a cyclic (counterclockwise) order.
``end``
    univalent boundary point of a tangle; carries a label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

VALENCE = {"src": 3, "snk": 3, "tri": 3, "node": 4, "rnode": 4, "end": 1}


@dataclass(frozen=True)
class Web:
    kinds: tuple[str, ...]
    ports: tuple[tuple[int, ...], ...]
    mate: tuple[int, ...]
    labels: tuple = ()
    circles: int = 0
    owner: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", (None,) * len(self.kinds))
        own = [None] * len(self.mate)
        for v, ps in enumerate(self.ports):
            for s, h in enumerate(ps):
                own[h] = (v, s)
        object.__setattr__(self, "owner", tuple(own))

    # ------------------------------------------------------------ basics
    @property
    def n_vertices(self) -> int:
        return len(self.kinds)

    @property
    def n_edges(self) -> int:
        return len(self.mate) // 2

    def vertex_of(self, h: int) -> int:
        return self.owner[h][0]

    def slot_of(self, h: int) -> int:
        return self.owner[h][1]

    def neighbor(self, h: int) -> int:
        return self.owner[self.mate[h]][0]

    def neighbors(self, v: int) -> list[int]:
        return [self.owner[self.mate[h]][0] for h in self.ports[v]]

    def validate(self) -> None:
        for v, (k, ps) in enumerate(zip(self.kinds, self.ports)):
            if len(ps) != VALENCE[k]:
                raise ValueError(f"vertex {v} of kind {k} has {len(ps)} darts")
        for h, m in enumerate(self.mate):
            if self.mate[m] != h or m == h:
                raise ValueError(f"dart {h} is not properly matched")
        for h, m in enumerate(self.mate):
            a, b = self.kinds[self.vertex_of(h)], self.kinds[self.vertex_of(m)]
            if a == "src" and b not in ("snk", "end"):
                raise ValueError("source vertex joined to a non-sink")
            if a == "snk" and b not in ("src", "end"):
                raise ValueError("sink vertex joined to a non-source")

    def with_circles(self, extra: int) -> "Web":
        return Web(self.kinds, self.ports, self.mate, self.labels, self.circles + extra)

    def without_circles(self) -> "Web":
        return Web(self.kinds, self.ports, self.mate, self.labels, 0)

    # ------------------------------------------------------- components
    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components (circles excluded)."""
        seen = [False] * self.n_vertices
        comps = []
        for s in range(self.n_vertices):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.neighbors(v):
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def induced(self, verts: Sequence[int]) -> "Web":
        """Sub-web on a union of whole components (no circles)."""
        darts = [h for v in verts for h in self.ports[v]]
        hid = {h: i for i, h in enumerate(darts)}
        ports = tuple(tuple(hid[h] for h in self.ports[v]) for v in verts)
        mate = [0] * len(darts)
        for h in darts:
            if self.mate[h] not in hid:
                raise ValueError("vertex set is not closed under adjacency")
            mate[hid[h]] = hid[self.mate[h]]
        return Web(tuple(self.kinds[v] for v in verts), ports, tuple(mate),
                   tuple(self.labels[v] for v in verts), 0)

    def split(self) -> list["Web"]:
        return [self.induced(c) for c in self.components()]

    # ------------------------------------------------------ serialization
    def to_json(self) -> dict:
        return {
            "vertices": [
                {"kind": k, "darts": list(p), **({"label": list(l) if isinstance(l, tuple) else l}
                                                  if l is not None else {})}
                for k, p, l in zip(self.kinds, self.ports, self.labels)
            ],
            "mate": list(self.mate),
            "circles": self.circles,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Web":
        kinds, ports, labels = [], [], []
        for v in data["vertices"]:
            kinds.append(v["kind"])
            ports.append(tuple(v["darts"]))
            lab = v.get("label")
            labels.append(tuple(lab) if isinstance(lab, list) else lab)
        web = cls(tuple(kinds), tuple(ports), tuple(data["mate"]), tuple(labels),
                  data.get("circles", 0))
        web.validate()
        return web

    def to_dot(self, name: str = "web") -> str:
        shapes = {"src": "circle", "snk": "doublecircle", "tri": "circle",
                  "node": "box", "rnode": "diamond", "end": "point"}
        lines = [f"graph {name} {{"]
        bottoms, tops = [], []
        for v, k in enumerate(self.kinds):
            lab = self.labels[v]
            text = f"{k}{v}" if lab is None else f"{lab[0]}{lab[1]}"
            lines.append(f'  v{v} [shape={shapes[k]}, label="{text}"];')
            if k == "end" and lab is not None:
                (bottoms if lab[0] == "b" else tops).append(v)
        for h, m in enumerate(self.mate):
            if h < m:
                a, b = self.vertex_of(h), self.vertex_of(m)
                kind_a = self.kinds[a]
                if kind_a == "snk" or (kind_a == "end" and self.kinds[b] == "src"):
                    a, b = b, a
                lines.append(f"  v{a} -- v{b};")
        for group in (bottoms, tops):
            if group:
                lines.append("  { rank=same; " + " ".join(f"v{v};" for v in group) + " }")
        if self.circles:
            lines.append(f'  circles [shape=plaintext, label="+{self.circles} circle(s)"];')
        lines.append("}")
        return "\n".join(lines)


# --------------------------------------------------------------- building

class WebBuilder:
    """Mutable helper for assembling webs dart by dart."""

    def __init__(self):
        self.kinds: list[str] = []
        self.ports: list[list[int]] = []
        self.labels: list = []
        self.mate: list[int] = []
        self.circles = 0

    def add_vertex(self, kind: str, label=None) -> list[int]:
        darts = list(range(len(self.mate), len(self.mate) + VALENCE[kind]))
        self.mate.extend([-1] * len(darts))
        self.kinds.append(kind)
        self.ports.append(darts)
        self.labels.append(label)
        return darts

    def join(self, h1: int, h2: int) -> None:
        if self.mate[h1] != -1 or self.mate[h2] != -1 or h1 == h2:
            raise ValueError(f"cannot join darts {h1} and {h2}")
        self.mate[h1] = h2
        self.mate[h2] = h1

    def build(self) -> Web:
        if any(m == -1 for m in self.mate):
            raise ValueError("unmatched dart")
        return Web(tuple(self.kinds), tuple(tuple(p) for p in self.ports),
                   tuple(self.mate), tuple(self.labels), self.circles)


def web_from_edges(kinds: Sequence[str], edges: Iterable[tuple[int, int]],
                   labels: Sequence | None = None, circles: int = 0) -> Web:
    """Build a web from a vertex kind list and an edge list.

    Darts are assigned to slots in the order edges are listed, so the edge
    order fixes the dart order at ``tri``/``rnode`` vertices.
    """
    b = WebBuilder()
    for i, k in enumerate(kinds):
        b.add_vertex(k, None if labels is None else labels[i])
    used = [0] * len(kinds)
    for u, v in edges:
        hu = b.ports[u][used[u]]
        used[u] += 1
        hv = b.ports[v][used[v]]
        used[v] += 1
        b.join(hu, hv)
    b.circles = circles
    return b.build()


# ---------------------------------------------------------------- splice

OLD = "old"
NEW = "new"


def splice(web: Web, remove: Iterable[int], new_kinds: Sequence[str],
           wires: Sequence[tuple[tuple, tuple]], new_labels: Sequence | None = None,
           ) -> Web:
    """Replace the vertices ``remove`` by ``new_kinds`` and re-route edges.

    Terminals are ``("old", dart)`` for darts of removed vertices whose far
    side must be reconnected, or ``("new", i, slot)`` for darts of the i-th
    new vertex.  Each terminal appears in exactly one wire.  Darts of removed
    vertices that are not terminals are discarded together with their edge,
    so both sides of such an edge must be discarded.  Chains that close up
    inside the removed region become free circles.
    """
    removed = set(remove)
    partner: dict[tuple, tuple] = {}
    for a, b in wires:
        for t in (a, b):
            if t in partner:
                raise ValueError(f"terminal {t} wired twice")
        partner[a] = b
        partner[b] = a
    term_darts = {t[1] for t in partner if t[0] == OLD}
    for v in removed:
        for h in web.ports[v]:
            m = web.mate[h]
            if h in term_darts:
                continue
            if web.vertex_of(m) not in removed or m in term_darts:
                raise ValueError(f"discarded dart {h} leaves a dangling edge")

    # new numbering
    keep = [v for v in range(web.n_vertices) if v not in removed]
    b = WebBuilder()
    old_to_new: dict[int, int] = {}
    for v in keep:
        darts = b.add_vertex(web.kinds[v], web.labels[v])
        for h, nh in zip(web.ports[v], darts):
            old_to_new[h] = nh
    new_darts = []
    for i, k in enumerate(new_kinds):
        new_darts.append(b.add_vertex(k, None if new_labels is None else new_labels[i]))

    def exit_of(t):
        if t[0] == NEW:
            return new_darts[t[1]][t[2]]
        m = web.mate[t[1]]
        if web.vertex_of(m) in removed:
            return None
        return old_to_new[m]

    def inner(t):
        # terminal reached through an internal removed-removed edge
        return (OLD, web.mate[t[1]])

    visited: set[tuple] = set()
    circles = web.circles
    for t0 in partner:
        if t0 in visited:
            continue
        # walk backwards from t0 to one end of the chain
        t = t0
        start = None
        while True:
            e = exit_of(t)
            if e is not None:
                start = t
                break
            t = partner[inner(t)]
            if t == t0:
                break
        if start is None:
            # closed chain: mark it and count one circle
            t = t0
            while True:
                visited.add(t)
                u = partner[t]
                visited.add(u)
                t = inner(u)
                if t == t0:
                    break
            circles += 1
            continue
        t = start
        visited.add(t)
        while True:
            u = partner[t]
            visited.add(u)
            e = exit_of(u)
            if e is not None:
                b.join(exit_of(start), e)
                break
            t = inner(u)
            visited.add(t)
    for v in keep:
        for h in web.ports[v]:
            m = web.mate[h]
            if web.vertex_of(m) not in removed and h < m:
                b.join(old_to_new[h], old_to_new[m])
    b.circles = circles
    return b.build()


def disjoint_union(webs: Sequence[Web]) -> Web:
    b = WebBuilder()
    for w in webs:
        offset = len(b.mate)
        for k, p, l in zip(w.kinds, w.ports, w.labels):
            b.add_vertex(k, l)
        for h, m in enumerate(w.mate):
            b.mate[offset + h] = offset + m
        b.circles += w.circles
    return b.build()


# ------------------------------------------------------------ structure

def cycles_up_to(web: Web, max_len: int, allowed: set[int] | None = None):
    """Simple cycles of length <= max_len as (vertex list, dart list).

    A cycle is reported as the vertex sequence v0..v(k-1) together with the
    darts ``(out_i, in_{i+1})`` for each edge.  Loops (length 1) and
    parallel-edge bigons are included.  Each cycle appears once.
    """
    out = []
    seen = set()
    for v0 in range(web.n_vertices):
        if allowed is not None and v0 not in allowed:
            continue
        # DFS paths starting at v0 visiting only vertices > v0
        stack = [(v0, [v0], [])]
        while stack:
            v, path, darts = stack.pop()
            for h in web.ports[v]:
                m = web.mate[h]
                u = web.vertex_of(m)
                if allowed is not None and u not in allowed:
                    continue
                if u == v0:
                    if darts and (darts[0][0] == m):
                        continue  # walking straight back along the first edge
                    cyc_darts = darts + [(h, m)]
                    edge_ids = frozenset(min(a, b) for a, b in cyc_darts)
                    if len(path) >= 1 and edge_ids not in seen:
                        seen.add(edge_ids)
                        out.append((list(path), cyc_darts))
                    continue
                if u < v0 or u in path or len(path) >= max_len:
                    continue
                stack.append((u, path + [u], darts + [(h, m)]))
    return out


def girth(web: Web) -> float:
    """Length of the shortest cycle; ``math.inf`` for forests."""
    best = math.inf
    for h, m in enumerate(web.mate):
        if web.vertex_of(h) == web.vertex_of(m):
            return 1
    # BFS from every vertex over edges
    for s in range(web.n_vertices):
        dist = {s: 0}
        via = {s: None}
        queue = [s]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for h in web.ports[v]:
                m = web.mate[h]
                u = web.vertex_of(m)
                if via[v] is not None and m == via[v]:
                    continue  # do not go back along the edge we came from
                if u in dist:
                    best = min(best, dist[u] + dist[v] + 1)
                else:
                    dist[u] = dist[v] + 1
                    via[u] = h
                    queue.append(u)
    return best


def faces(web: Web, rotation: Sequence[Sequence[int]] | None = None) -> list[list[int]]:
    """Face boundaries of the rotation system as dart cycles.

    ``rotation[v]`` is the cyclic order of darts at ``v``; by default the
    stored port order is used.  The successor of dart ``h`` in a face walk
    is the rotation-successor of ``mate[h]``.
    """
    rot = rotation if rotation is not None else web.ports
    succ = {}
    for ps in rot:
        for i, h in enumerate(ps):
            succ[h] = ps[(i + 1) % len(ps)]
    seen = set()
    out = []
    for h0 in range(len(web.mate)):
        if h0 in seen:
            continue
        face = []
        h = h0
        while h not in seen:
            seen.add(h)
            face.append(h)
            h = succ[web.mate[h]]
        out.append(face)
    return out


@dataclass(frozen=True)
class GenusReport:
    genus: int
    vertices: int
    edges: int
    faces: int
    face_lengths: tuple[int, ...]
    components: int


def genus(web: Web, rotation: Sequence[Sequence[int]] | None = None) -> GenusReport:
    """Genus of the surface determined by a rotation system.

    For disconnected input the genera of the components are summed.  Free
    circles are spheres and contribute nothing.
    """
    fs = faces(web, rotation)
    v, e, f = web.n_vertices, web.n_edges, len(fs)
    comps = len(web.components())
    chi = v - e + f
    twice = 2 * comps - chi
    if twice % 2:
        raise ArithmeticError("Euler characteristic has the wrong parity")
    g = twice // 2
    assert 2 * comps - 2 * g == v - e + f
    if g < 0:
        raise ArithmeticError("negative genus; rotation system is inconsistent")
    return GenusReport(g, v, e, f, tuple(sorted(len(x) for x in fs)), comps)
