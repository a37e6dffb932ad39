"""Random trivalent test graphs built with networkx."""

from __future__ import annotations

import random

import networkx as nx

from kupweb.penrose import web_from_rotation
from kupweb.web import Web


def random_cubic(rng: random.Random, n: int) -> nx.Graph:
    return nx.random_regular_graph(3, n, seed=rng.randrange(2 ** 31))


def random_rotation(g: nx.Graph, rng: random.Random) -> dict:
    out = {}
    for v in g:
        nb = list(g[v])
        rng.shuffle(nb)
        out[v] = nb
    return out


def planar_rotation(g: nx.Graph) -> dict | None:
    """Counterclockwise neighbour orders of a planar embedding, or None."""
    ok, emb = nx.check_planarity(g)
    if not ok:
        return None
    return {v: list(reversed(list(emb.neighbors_cw_order(v)))) for v in g}


def relabel(web: Web, rng: random.Random, even: bool = True) -> Web:
    """Shuffle vertex and dart numbering; dart orders change by even permutations."""
    n = web.n_vertices
    order = list(range(n))
    rng.shuffle(order)
    dart_ids = list(range(len(web.mate)))
    rng.shuffle(dart_ids)
    ports, kinds, labels = [], [], []
    for v in order:
        ps = list(web.ports[v])
        if len(ps) == 3:
            r = rng.randrange(3)
            ps = ps[r:] + ps[:r]
        elif len(ps) == 4:
            r = rng.randrange(4)
            if web.kinds[v] == "node" and rng.random() < 0.5:
                ps = [ps[1], ps[0], ps[3], ps[2]]  # keeps the opposite pairs
            ps = ps[r:] + ps[:r]
        ports.append(tuple(dart_ids[h] for h in ps))
        kinds.append(web.kinds[v])
        labels.append(web.labels[v])
    mate = [0] * len(web.mate)
    for h, m in enumerate(web.mate):
        mate[dart_ids[h]] = dart_ids[m]
    out = Web(tuple(kinds), tuple(ports), tuple(mate), tuple(labels), web.circles)
    out.validate()
    return out


def cubic_web(rng: random.Random, n: int, planar: bool = False, kind="tri") -> Web | None:
    g = random_cubic(rng, n)
    rot = planar_rotation(g) if planar else random_rotation(g, rng)
    if rot is None:
        return None
    return web_from_rotation(rot, kind)


def oriented_cubic(rng: random.Random, n: int) -> Web | None:
    """A random bipartite cubic graph as an oriented web (sources on one side)."""
    for _ in range(50):
        g = random_cubic(rng, n)
        if nx.is_bipartite(g) and nx.is_connected(g):
            left, _ = nx.bipartite.sets(g)
            kinds = {v: ("src" if v in left else "snk") for v in g}
            return web_from_rotation(random_rotation(g, rng), kinds)
    return None


def random_oriented_web(rng: random.Random, n: int) -> Web:
    """Sources ``0..n/2-1`` joined to sinks by three random matchings; multi-edges allowed."""
    from kupweb.web import WebBuilder

    half = n // 2
    b = WebBuilder()
    src = [b.add_vertex("src") for _ in range(half)]
    snk = [b.add_vertex("snk") for _ in range(half)]
    slots_src = [rng.sample(range(3), 3) for _ in range(half)]
    slots_snk = [rng.sample(range(3), 3) for _ in range(half)]
    for k in range(3):
        perm = list(range(half))
        rng.shuffle(perm)
        for i, j in enumerate(perm):
            b.join(src[i][slots_src[i][k]], snk[j][slots_snk[j][k]])
    w = b.build()
    w.validate()
    return w
