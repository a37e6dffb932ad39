"""Framed 4-valent graphs obtained from Gauss codes."""

from __future__ import annotations

from .diagram import FREE, ChordDiagram
from .web import Web, WebBuilder

# A framed node stores its darts as (O_in, U_in, O_out, U_out): slots 0/2 and
# 1/3 belong to the same strand, so they are the opposite pairs.  For a
# positive crossing this tuple is also the counterclockwise order around the
# crossing; a negative crossing has the two under darts exchanged.


def to_framed_graph(d: ChordDiagram, rigid: bool = False) -> Web:
    """One 4-valent vertex per chord, edges along the circles.

    With ``rigid=True`` the vertices are ``rnode`` and their dart tuples are
    the counterclockwise orders of the crossings (needs arrows).  Otherwise
    only the opposite pairing is kept.
    """
    if rigid and d.level == FREE:
        raise ValueError("rotation data needs over/under information")
    b = WebBuilder()
    darts: dict[int, list[int]] = {}
    for lab in d.labels():
        darts[lab] = b.add_vertex("rnode" if rigid else "node")
    # map endpoint position -> (in dart, out dart)
    io: dict[tuple[int, int], tuple[int, int]] = {}
    for lab in d.labels():
        first, second = d.endpoints[lab]
        if d.level == FREE:
            over, under = first, second
        else:
            over, under = d.over_endpoint(lab), d.under_endpoint(lab)
        o_in, u_in, o_out, u_out = darts[lab]
        if rigid and d.sign(lab) < 0:
            # keep slot order counterclockwise: O_in, U_out, O_out, U_in
            u_in, u_out = u_out, u_in
        io[over] = (o_in, o_out)
        io[under] = (u_in, u_out)
    for c, circ in enumerate(d.circles):
        if not circ:
            b.circles += 1
            continue
        n = len(circ)
        for i in range(n):
            b.join(io[(c, i)][1], io[(c, (i + 1) % n)][0])
    return b.build()


def strand_walks(web: Web) -> tuple[list[list[int]], int]:
    """Unicursal components as lists of darts, plus the free circle count.

    A walk enters a 4-valent vertex through a dart and leaves through the
    opposite dart.  Only ``node``/``rnode`` vertices are allowed.
    """
    seen: set[int] = set()
    walks = []
    for h0 in range(len(web.mate)):
        if h0 in seen:
            continue
        walk = []
        h = h0
        while h not in seen:
            v, s = web.owner[h]
            if web.kinds[v] not in ("node", "rnode"):
                raise ValueError("strand walks need 4-valent vertices only")
            seen.add(h)
            opp = web.ports[v][(s + 2) % 4]
            seen.add(opp)
            walk.append(h)
            h = web.mate[opp]
        walks.append(walk)
    return walks, web.circles


def unicursal_count(web: Web) -> int:
    walks, circles = strand_walks(web)
    return len(walks) + circles
