"""Gauss-code diagrams on one or more circles.

A diagram is a list of circles; each circle is a cyclic sequence of chord
labels, every label occurring exactly twice overall.  Decorations come in
three levels:

``virtual``
    every endpoint carries an over/under role and every chord a sign;
``flat``
    roles only; stored with all signs ``+1`` after replacing each negative
    chord by its crossing switch (roles exchanged);
``free``
    bare chords.

All moves act on the Gauss code directly.  Endpoint positions are written
``(circle, index)``; the arc ``(c, i)`` is the stretch of circle ``c``
between position ``i`` and the next position ``i + 1`` (cyclically).
"""

from __future__ import annotations

import enum
import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

VIRTUAL = "virtual"
FLAT = "flat"
FREE = "free"
LEVELS = (VIRTUAL, FLAT, FREE)


class GaussCodeError(ValueError):
    """Malformed or inconsistent Gauss code.  ``offset`` is a character index."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (at character {offset})")
        self.offset = offset


@dataclass(frozen=True)
class ChordDiagram:
    circles: tuple[tuple[int, ...], ...]
    roles: tuple[tuple[str, ...], ...] | None = None
    signs: tuple[int, ...] | None = None  # signs[label - 1]
    flat: bool = False

    # ------------------------------------------------------------ shape
    @property
    def level(self) -> str:
        if self.roles is None:
            return FREE
        return FLAT if self.flat else VIRTUAL

    @property
    def n_chords(self) -> int:
        return sum(len(c) for c in self.circles) // 2

    @cached_property
    def endpoints(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        """label -> (first endpoint, second endpoint) in traversal order."""
        seen: dict[int, list] = {}
        for c, circ in enumerate(self.circles):
            for i, lab in enumerate(circ):
                seen.setdefault(lab, []).append((c, i))
        return {lab: (e[0], e[1]) for lab, e in seen.items()}

    def role_at(self, pos: tuple[int, int]) -> str | None:
        if self.roles is None:
            return None
        return self.roles[pos[0]][pos[1]]

    def sign(self, label: int) -> int | None:
        return None if self.signs is None else self.signs[label - 1]

    def over_endpoint(self, label: int) -> tuple[int, int]:
        a, b = self.endpoints[label]
        return a if self.role_at(a) == "O" else b

    def under_endpoint(self, label: int) -> tuple[int, int]:
        a, b = self.endpoints[label]
        return b if self.role_at(a) == "O" else a

    def labels(self) -> list[int]:
        return list(range(1, self.n_chords + 1))

    # ------------------------------------------------------------ output
    def tokens(self) -> list[list[str]]:
        out = []
        for c, circ in enumerate(self.circles):
            row = []
            for i, lab in enumerate(circ):
                t = str(lab)
                if self.roles is not None:
                    t = self.roles[c][i] + t
                    if self.level == VIRTUAL:
                        t += "+" if self.signs[lab - 1] > 0 else "-"
                row.append(t)
            out.append(row)
        return out

    def to_text(self) -> str:
        return ";".join(",".join(row) for row in self.tokens())

    def __str__(self) -> str:
        return self.to_text()

    def to_json(self) -> dict:
        flat_index = {}
        k = 0
        for c, circ in enumerate(self.circles):
            for i in range(len(circ)):
                flat_index[(c, i)] = k
                k += 1
        chords = []
        for lab in self.labels():
            entry: dict = {"label": lab}
            if self.roles is not None:
                entry["arrow"] = [flat_index[self.over_endpoint(lab)],
                                  flat_index[self.under_endpoint(lab)]]
                if self.level == VIRTUAL:
                    entry["sign"] = self.signs[lab - 1]
            chords.append(entry)
        return {"circles": self.tokens(), "chords": chords, "level": self.level}

    # ------------------------------------------------------- conversions
    def as_flat(self) -> "ChordDiagram":
        if self.roles is None:
            raise ValueError("a free diagram carries no over/under data")
        roles = [list(r) for r in self.roles]
        for lab in self.labels():
            if self.signs[lab - 1] < 0:
                for c, i in self.endpoints[lab]:
                    roles[c][i] = "U" if roles[c][i] == "O" else "O"
        return _make(self.circles, tuple(tuple(r) for r in roles), (1,) * self.n_chords, FLAT)

    def as_free(self) -> "ChordDiagram":
        return _make(self.circles, None, None, FREE)

    def at_level(self, level: str) -> "ChordDiagram":
        if level == self.level:
            return self
        if level == FREE:
            return self.as_free()
        if level == FLAT and self.level == VIRTUAL:
            return self.as_flat()
        raise ValueError(f"cannot lift a {self.level} diagram to {level}")


def _make(circles, roles, signs, level) -> ChordDiagram:
    return ChordDiagram(tuple(tuple(c) for c in circles),
                        None if roles is None else tuple(tuple(r) for r in roles),
                        None if signs is None else tuple(signs),
                        level == FLAT)


def _normalize(circles: Sequence[Sequence[int]], roles, signs: dict[int, int] | None,
               level: str) -> ChordDiagram:
    """Relabel chords 1..n by first appearance and rebuild the diagram."""
    relabel: dict[int, int] = {}
    for circ in circles:
        for lab in circ:
            if lab not in relabel:
                relabel[lab] = len(relabel) + 1
    new_circles = [[relabel[l] for l in circ] for circ in circles]
    new_signs = None
    if signs is not None:
        arr = [0] * len(relabel)
        for old, new in relabel.items():
            arr[new - 1] = signs[old]
        new_signs = arr
    if level == FLAT:
        d = _make(new_circles, roles, new_signs, VIRTUAL)
        return d.as_flat()
    return _make(new_circles, roles if level != FREE else None,
                 new_signs if level == VIRTUAL else None, level)


def from_words(circles: Sequence[Sequence[int]], roles=None, signs: dict[int, int] | None = None,
               level: str | None = None) -> ChordDiagram:
    """Build a validated diagram from label words plus optional decorations."""
    if level is None:
        level = FREE if roles is None else (VIRTUAL if signs is not None else FLAT)
    counts: dict[int, int] = {}
    for circ in circles:
        for lab in circ:
            counts[lab] = counts.get(lab, 0) + 1
    for lab, n in counts.items():
        if n != 2:
            raise GaussCodeError(f"label {lab} appears {n} time(s), expected 2")
    if roles is not None:
        seen: dict[int, str] = {}
        for circ, rr in zip(circles, roles):
            for lab, r in zip(circ, rr):
                if lab in seen and seen[lab] == r:
                    raise GaussCodeError(f"label {lab} has role {r} at both endpoints")
                seen[lab] = r
    if level == FLAT and signs is None:
        signs = {lab: 1 for lab in counts}
    return _normalize(circles, roles, signs, level)


_TOKEN = re.compile(r"^([OU])?(\d+)([+\-])?$")


def parse_gauss(text: str) -> ChordDiagram:
    """Parse ``O1+,U2-,...;...`` style codes.

    Components are separated by ``;`` and tokens by ``,``.  Either every
    token has an ``O``/``U`` prefix or none does, and likewise for the
    trailing sign.  Signs without roles are rejected.  The empty string is
    the crossingless unknot; having no chords, it counts as fully decorated.
    """
    text = text.replace("−", "-")
    if text.strip() == "":
        return _make(((),), ((),), (), VIRTUAL)
    circles: list[list[int]] = []
    roles: list[list[str]] = []
    signs: dict[int, int] = {}
    has_role: set[bool] = set()
    has_sign: set[bool] = set()
    offset = 0
    for comp in text.split(";"):
        if comp.strip() == "":
            raise GaussCodeError("empty component", offset)
        circ, rr = [], []
        tok_off = offset
        for raw in comp.split(","):
            tok = raw.strip()
            start = tok_off + (len(raw) - len(raw.lstrip()))
            m = _TOKEN.match(tok)
            if not m:
                raise GaussCodeError(f"malformed token {tok!r}", start)
            role, lab, sg = m.group(1), int(m.group(2)), m.group(3)
            if lab <= 0:
                raise GaussCodeError("labels must be positive", start)
            has_role.add(role is not None)
            has_sign.add(sg is not None)
            if len(has_role) > 1:
                raise GaussCodeError("O/U markers must be on all tokens or none", start)
            if len(has_sign) > 1:
                raise GaussCodeError("signs must be on all tokens or none", start)
            if sg is not None:
                s = 1 if sg == "+" else -1
                if signs.get(lab, s) != s:
                    raise GaussCodeError(f"label {lab} carries two different signs", start)
                signs[lab] = s
            circ.append(lab)
            rr.append(role)
            tok_off += len(raw) + 1
        circles.append(circ)
        roles.append(rr)
        offset += len(comp) + 1
    with_roles = True in has_role
    with_signs = True in has_sign
    if with_signs and not with_roles:
        raise GaussCodeError("signs given without O/U markers")
    level = VIRTUAL if with_signs else (FLAT if with_roles else FREE)
    return from_words(circles, roles if with_roles else None,
                      signs if with_signs else None, level)


# ------------------------------------------------------------------ parity

EVEN = "even"
ODD = "odd"


def gaussian_parity(d: ChordDiagram, label: int) -> str:
    """Parity of a chord by the number of endpoints it flanks.

    For a chord joining two circles the count is taken on the circle of its
    first endpoint: all other endpoints of that circle.
    """
    (c1, i1), (c2, i2) = d.endpoints[label]
    if c1 == c2:
        between = abs(i2 - i1) - 1
    else:
        between = len(d.circles[c1]) - 1
    return ODD if between % 2 else EVEN


def odd_chords(d: ChordDiagram) -> list[int]:
    return [lab for lab in d.labels() if gaussian_parity(d, lab) == ODD]


def writhe(d: ChordDiagram) -> int:
    if d.level != VIRTUAL:
        raise ValueError("writhe needs a signed diagram")
    return sum(d.signs)


def odd_writhe(d: ChordDiagram) -> int:
    if d.level != VIRTUAL:
        raise ValueError("odd writhe needs a signed diagram")
    return sum(d.signs[lab - 1] for lab in odd_chords(d))


def mirror(d: ChordDiagram) -> ChordDiagram:
    """Switch every crossing."""
    out = d
    for lab in d.labels():
        out = _switch(out, lab)
    return out


# ------------------------------------------------------------------ moves

class MoveKind(enum.Enum):
    R1_ADD = "R1+"
    R1_REMOVE = "R1-"
    R2_ADD = "R2+"
    R2_REMOVE = "R2-"
    R3 = "R3"
    SWITCH = "switch"
    Z = "Z"
    VIRTUALIZE = "virtualize"


REIDEMEISTER = (MoveKind.R1_ADD, MoveKind.R1_REMOVE, MoveKind.R2_ADD,
                MoveKind.R2_REMOVE, MoveKind.R3)


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    site: tuple

    def __str__(self) -> str:
        return f"{self.kind.value}{self.site}"


class MoveError(ValueError):
    pass


def _next(d: ChordDiagram, c: int, i: int) -> int:
    return (i + 1) % len(d.circles[c])


def _arcs(d: ChordDiagram) -> list[tuple[int, int]]:
    """All arcs (c, i): positions i and i+1 on circle c, circles of length >= 2."""
    return [(c, i) for c, circ in enumerate(d.circles) if len(circ) >= 2
            for i in range(len(circ))]


def _arc_positions(d: ChordDiagram, arc: tuple[int, int]) -> tuple[tuple[int, int], tuple[int, int]]:
    c, i = arc
    return (c, i), (c, _next(d, c, i))


def _label_at(d: ChordDiagram, pos: tuple[int, int]) -> int:
    return d.circles[pos[0]][pos[1]]


def _rebuild(d: ChordDiagram, circles, roles, signs_by_label: dict[int, int] | None) -> ChordDiagram:
    level = d.level
    return _normalize(circles, roles if level != FREE else None,
                      signs_by_label if level != FREE else None, level)


def _lists(d: ChordDiagram):
    circles = [list(c) for c in d.circles]
    roles = None if d.roles is None else [list(r) for r in d.roles]
    signs = None if d.signs is None else {lab: d.signs[lab - 1] for lab in d.labels()}
    return circles, roles, signs


# --- R3 geometry -----------------------------------------------------------
#
# A triangle site is classified by the heights of its three strands (top,
# middle, bottom), which crossing each strand meets first, and the three
# crossing signs.  The admissible classes are generated once from straight
# lines in the plane, so no case table is written by hand.

def _r3_geometric_signatures() -> frozenset:
    import math

    def cross(a, b):
        return a[0] * b[1] - a[1] * b[0]

    sigs = set()
    angles = (0.0, math.pi / 3, 2 * math.pi / 3)
    for perm in itertools.permutations(angles):
        for dirs in itertools.product((1, -1), repeat=3):
            for offset in (0.3, -0.3):
                lines = []
                for k, (ang, sgn) in enumerate(zip(perm, dirs)):
                    dvec = (sgn * math.cos(ang), sgn * math.sin(ang))
                    base = (0.0, 0.0)
                    if k == 2:
                        nrm = (-math.sin(ang), math.cos(ang))
                        base = (offset * nrm[0], offset * nrm[1])
                    lines.append((base, dvec))

                def meet(i, j):
                    (p, u), (q, v) = lines[i], lines[j]
                    den = cross(u, v)
                    w = (q[0] - p[0], q[1] - p[1])
                    return cross(w, v) / den, cross(w, u) / den  # params on i and j

                # strand 0 = top, 1 = middle, 2 = bottom
                names = {(0, 1): "tm", (0, 2): "tb", (1, 2): "mb"}
                params = {k: {} for k in range(3)}
                signs = {}
                for (i, j), nm in names.items():
                    ti, tj = meet(i, j)
                    params[i][nm] = ti
                    params[j][nm] = tj
                    signs[nm] = 1 if cross(lines[i][1], lines[j][1]) > 0 else -1
                first = tuple(min(params[k], key=params[k].get) for k in range(3))
                sigs.add((first, (signs["tm"], signs["tb"], signs["mb"])))
    return frozenset(sigs)


R3_SIGNATURES = _r3_geometric_signatures()


def _r3_signature(d: ChordDiagram, arcs: Sequence[tuple[int, int]]):
    """Signature of a virtual triangle site, or ``None`` if heights are inconsistent."""
    info = []
    for arc in arcs:
        p, q = _arc_positions(d, arc)
        info.append(((p, q), (_label_at(d, p), _label_at(d, q)),
                     (d.role_at(p), d.role_at(q))))
    strand = {}
    for k, (_, _, rr) in enumerate(info):
        h = {("O", "O"): 0, ("U", "U"): 2}.get(rr, 1)
        if h in strand:
            return None
        strand[h] = k
    top, mid, bot = (info[strand[h]] for h in range(3))
    shared = lambda a, b: (set(a[1]) & set(b[1])).pop()
    x_tm, x_tb, x_mb = shared(top, mid), shared(top, bot), shared(mid, bot)
    # the middle strand must pass under the top one and over the bottom one
    mid_role = dict(zip(mid[1], mid[2]))
    if mid_role[x_tm] != "U" or mid_role[x_mb] != "O":
        return None
    name = {x_tm: "tm", x_tb: "tb", x_mb: "mb"}
    first = (name[top[1][0]], name[mid[1][0]], name[bot[1][0]])
    signs = (d.sign(x_tm), d.sign(x_tb), d.sign(x_mb))
    return first, signs


def _r3_sites(d: ChordDiagram) -> list[tuple]:
    """Triples of pairwise disjoint arcs whose chords form a triangle."""
    by_pair: dict[frozenset, list] = {}
    for arc in _arcs(d):
        p, q = _arc_positions(d, arc)
        a, b = _label_at(d, p), _label_at(d, q)
        if a != b:
            by_pair.setdefault(frozenset((a, b)), []).append(arc)
    sites = set()
    pairs = list(by_pair)
    for pa in pairs:
        for pb in pairs:
            if len(pa & pb) != 1:
                continue
            pc = pa ^ pb
            if pc not in by_pair or len(pc) != 2:
                continue
            for a1 in by_pair[pa]:
                for a2 in by_pair[pb]:
                    for a3 in by_pair[pc]:
                        pos = set()
                        ok = True
                        for arc in (a1, a2, a3):
                            pp = set(_arc_positions(d, arc))
                            if pp & pos:
                                ok = False
                                break
                            pos |= pp
                        if ok:
                            sites.add(tuple(sorted((a1, a2, a3))))
    return sorted(sites)


def _lifts(d: ChordDiagram, labels: Iterable[int]):
    """Virtual lifts of a flat or free diagram over the given chords.

    Flat diagrams may switch each chord; free diagrams may additionally
    reverse the arrow while keeping the sign, i.e. any role/sign choice.
    """
    labels = list(labels)
    if d.level == VIRTUAL:
        yield d
        return
    if d.level == FLAT:
        base = _make(d.circles, d.roles, d.signs, VIRTUAL)
        for mask in itertools.product((False, True), repeat=len(labels)):
            out = base
            for lab, flip in zip(labels, mask):
                if flip:
                    out = _switch(out, lab)
            yield out
        return
    # free: assign roles/signs arbitrarily on the chords involved
    n = d.n_chords
    for choice in itertools.product(((0, 1), (1, 1), (0, -1), (1, -1)), repeat=len(labels)):
        roles = [["O"] * len(c) for c in d.circles]
        signs = [1] * n
        for lab in d.labels():
            a, b = d.endpoints[lab]
            roles[b[0]][b[1]] = "U"
        for lab, (first_under, s) in zip(labels, choice):
            a, b = d.endpoints[lab]
            if first_under:
                roles[a[0]][a[1]], roles[b[0]][b[1]] = "U", "O"
            signs[lab - 1] = s
        yield _make(d.circles, roles, signs, VIRTUAL)


def _r3_valid(d: ChordDiagram, site) -> bool:
    labels = set()
    for arc in site:
        for p in _arc_positions(d, arc):
            labels.add(_label_at(d, p))
    for lift in _lifts(d, sorted(labels)):
        if _r3_signature(lift, site) in R3_SIGNATURES:
            return True
    return False


def _r2_sites(d: ChordDiagram) -> list[tuple]:
    by_pair: dict[frozenset, list] = {}
    for arc in _arcs(d):
        p, q = _arc_positions(d, arc)
        a, b = _label_at(d, p), _label_at(d, q)
        if a != b:
            by_pair.setdefault(frozenset((a, b)), []).append(arc)
    out = []
    for pair, arcs in by_pair.items():
        for a1, a2 in itertools.combinations(arcs, 2):
            if set(_arc_positions(d, a1)) & set(_arc_positions(d, a2)):
                continue
            out.append((a1, a2))
    return sorted(out)


def _r2_valid_virtual(d: ChordDiagram, site) -> bool:
    a1, _ = site
    p, q = _arc_positions(d, a1)
    x, y = _label_at(d, p), _label_at(d, q)
    return d.role_at(p) == d.role_at(q) and d.sign(x) == -d.sign(y)


def _r2_valid(d: ChordDiagram, site) -> bool:
    p, q = _arc_positions(d, site[0])
    labels = sorted({_label_at(d, p), _label_at(d, q)})
    return any(_r2_valid_virtual(lift, site) for lift in _lifts(d, labels))


def _delete_labels(d: ChordDiagram, labels: set[int]) -> ChordDiagram:
    circles, roles, signs = _lists(d)
    nc, nr = [], []
    for c, circ in enumerate(circles):
        keep = [i for i, lab in enumerate(circ) if lab not in labels]
        nc.append([circ[i] for i in keep])
        if roles is not None:
            nr.append([roles[c][i] for i in keep])
    if signs is not None:
        signs = {k: v for k, v in signs.items() if k not in labels}
    return _rebuild(d, nc, nr if roles is not None else None, signs)


def _switch(d: ChordDiagram, label: int) -> ChordDiagram:
    circles, roles, signs = _lists(d)
    for c, i in d.endpoints[label]:
        roles[c][i] = "U" if roles[c][i] == "O" else "O"
    signs[label] = -signs[label]
    return _make(circles, roles, [signs[l] for l in d.labels()], VIRTUAL)


def _reverse_arrow(d: ChordDiagram, label: int) -> ChordDiagram:
    circles, roles, signs = _lists(d)
    for c, i in d.endpoints[label]:
        roles[c][i] = "U" if roles[c][i] == "O" else "O"
    return _rebuild(d, circles, roles, signs)


def _gaps(d: ChordDiagram) -> list[tuple[int, int]]:
    return [(c, g) for c, circ in enumerate(d.circles) for g in range(max(len(circ), 1))]


def _insert(d: ChordDiagram, inserts: list[tuple[int, int, list[tuple[int, str | None]]]],
            new_signs: dict[int, int]) -> ChordDiagram:
    """Insert runs of (label, role) before position g of circle c (highest gaps first)."""
    circles, roles, signs = _lists(d)
    for c, g, run in sorted(inserts, key=lambda t: (t[0], t[1]), reverse=True):
        circles[c][g:g] = [lab for lab, _ in run]
        if roles is not None:
            roles[c][g:g] = [r for _, r in run]
    if signs is not None:
        signs.update(new_signs)
    return _rebuild(d, circles, roles, signs)


def enumerate_moves(d: ChordDiagram, kinds: Iterable[MoveKind] | None = None) -> list[Move]:
    """Every applicable (move, site) pair, optionally restricted to ``kinds``."""
    kinds = set(MoveKind) if kinds is None else set(kinds)
    out: list[Move] = []
    decorated = d.level != FREE
    role_opts = ("O", "U") if decorated else (None,)
    sign_opts = (1, -1) if d.level == VIRTUAL else (None,)
    if MoveKind.R1_REMOVE in kinds:
        for lab, (a, b) in sorted(d.endpoints.items()):
            if a[0] == b[0] and (b[1] == _next(d, *a) or a[1] == _next(d, *b)):
                out.append(Move(MoveKind.R1_REMOVE, (lab,)))
    if MoveKind.R1_ADD in kinds:
        for c, g in _gaps(d):
            for r in role_opts:
                for s in sign_opts:
                    out.append(Move(MoveKind.R1_ADD, (c, g, r, s)))
    if MoveKind.R2_REMOVE in kinds:
        for site in _r2_sites(d):
            if _r2_valid(d, site):
                out.append(Move(MoveKind.R2_REMOVE, site))
    if MoveKind.R2_ADD in kinds:
        gaps = _gaps(d)
        for g1, g2 in itertools.combinations_with_replacement(gaps, 2):
            for anti in (False, True):
                for r in role_opts:
                    for s in sign_opts:
                        out.append(Move(MoveKind.R2_ADD, (g1, g2, anti, r, s)))
    if MoveKind.R3 in kinds:
        for site in _r3_sites(d):
            if _r3_valid(d, site):
                out.append(Move(MoveKind.R3, site))
    if d.level == VIRTUAL:
        for kind in (MoveKind.SWITCH, MoveKind.Z, MoveKind.VIRTUALIZE):
            if kind in kinds:
                out.extend(Move(kind, (lab,)) for lab in d.labels())
    elif d.level == FLAT:
        for kind in (MoveKind.Z, MoveKind.VIRTUALIZE):
            if kind in kinds:
                out.extend(Move(kind, (lab,)) for lab in d.labels())
    return out


def apply_move(d: ChordDiagram, move: Move) -> ChordDiagram:
    """Apply ``move``; raises :class:`MoveError` if the site does not match."""
    kind, site = move.kind, move.site
    try:
        if kind == MoveKind.R1_REMOVE:
            (lab,) = site
            a, b = d.endpoints[lab]
            if not (a[0] == b[0] and (b[1] == _next(d, *a) or a[1] == _next(d, *b))):
                raise MoveError("chord endpoints are not adjacent")
            return _delete_labels(d, {lab})
        if kind == MoveKind.R1_ADD:
            c, g, r, s = site
            _check_gap(d, c, g)
            lab = d.n_chords + 1
            r2 = None if r is None else ("U" if r == "O" else "O")
            if d.level != FREE and r is None:
                raise MoveError("decorated diagram needs a role for the new chord")
            return _insert(d, [(c, g, [(lab, r), (lab, r2)])],
                           {lab: s if s is not None else 1})
        if kind == MoveKind.R2_REMOVE:
            site = tuple(site)
            if site not in _r2_sites(d) or not _r2_valid(d, site):
                raise MoveError("not a second-move site")
            p, q = _arc_positions(d, site[0])
            return _delete_labels(d, {_label_at(d, p), _label_at(d, q)})
        if kind == MoveKind.R2_ADD:
            g1, g2, anti, r, s = site
            _check_gap(d, *g1)
            _check_gap(d, *g2)
            x, y = d.n_chords + 1, d.n_chords + 2
            r_other = None if r is None else ("U" if r == "O" else "O")
            run1 = [(x, r), (y, r)]
            run2 = [(y, r_other), (x, r_other)] if anti else [(x, r_other), (y, r_other)]
            sx = s if s is not None else 1
            # flat diagrams are re-canonicalised by _rebuild
            signs = {x: sx, y: -sx}
            if tuple(g1) == tuple(g2):
                return _insert(d, [(g1[0], g1[1], run1 + run2)], signs)
            return _insert(d, [(g1[0], g1[1], run1), (g2[0], g2[1], run2)], signs)
        if kind == MoveKind.R3:
            site = tuple(sorted(site))
            if site not in _r3_sites(d) or not _r3_valid(d, site):
                raise MoveError("not a third-move site")
            circles, roles, signs = _lists(d)
            for arc in site:
                (c, i), (_, j) = _arc_positions(d, arc)
                circles[c][i], circles[c][j] = circles[c][j], circles[c][i]
                if roles is not None:
                    roles[c][i], roles[c][j] = roles[c][j], roles[c][i]
            return _rebuild(d, circles, roles, signs)
        if kind == MoveKind.SWITCH:
            (lab,) = site
            if d.level != VIRTUAL:
                raise MoveError("crossing switch needs a signed diagram")
            return _switch(d, lab)
        if kind in (MoveKind.Z, MoveKind.VIRTUALIZE):
            (lab,) = site
            if d.level == FREE:
                raise MoveError("free diagrams carry no arrows")
            return _reverse_arrow(d, lab)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        if isinstance(exc, MoveError):
            raise
        raise MoveError(f"bad site {site!r} for {kind.value}: {exc}") from exc
    raise MoveError(f"unknown move kind {kind}")


def _check_gap(d: ChordDiagram, c: int, g: int) -> None:
    if not (0 <= c < len(d.circles) and 0 <= g < max(len(d.circles[c]), 1)):
        raise MoveError(f"no gap {g} on circle {c}")


# ------------------------------------------------------------- chord graphs

def intersection_graph(d: ChordDiagram) -> dict[int, set[int]]:
    """Interlacement graph of a one-circle diagram as an adjacency dict."""
    if len(d.circles) != 1:
        raise ValueError("intersection graph is defined for one-circle diagrams")
    pos = {lab: (a[1], b[1]) for lab, (a, b) in d.endpoints.items()}
    adj = {lab: set() for lab in d.labels()}
    for x, y in itertools.combinations(d.labels(), 2):
        (a, b), (c, e) = pos[x], pos[y]
        if (a < c < b) != (a < e < b):
            adj[x].add(y)
            adj[y].add(x)
    return adj


def is_irreducibly_odd(adj: dict) -> bool:
    nodes = list(adj)
    if any(len(adj[v]) % 2 == 0 for v in nodes):
        return False
    for u, v in itertools.combinations(nodes, 2):
        if not any((w in adj[u]) != (w in adj[v]) for w in nodes if w != u and w != v):
            return False
    return True


class NotFound:
    """Sentinel result of a search that gave up or found nothing."""

    def __init__(self, reason: str = ""):
        self.reason = reason

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"NotFound({self.reason!r})"


def realize_chord_diagram(adj: dict, budget: int = 10 ** 6) -> ChordDiagram | NotFound:
    """Search for a one-circle chord diagram with interlacement graph ``adj``.

    The word is built left to right.  Closing a chord fixes exactly which
    chords interlace it, so every close is checked against ``adj``.
    Vertices with identical closed neighbourhoods are interchangeable, so
    only the first unopened member of each such class is ever opened.
    """
    nodes = sorted(adj)
    n = len(nodes)
    if n == 0:
        return _make(((),), None, None, FREE)
    nbr = {v: frozenset(adj[v]) for v in nodes}
    word: list[int] = []
    opened_at: dict[int, int] = {}
    closed_at: dict[int, int] = {}
    steps = [0]

    def interlaced_now(u: int) -> set[int]:
        p = opened_at[u]
        out = set()
        for w, pw in opened_at.items():
            if w == u:
                continue
            tw = closed_at.get(w)
            if pw < p and tw is not None and tw > p:
                out.add(w)
            elif pw > p and tw is None:
                out.add(w)
        return out

    def dfs() -> bool:
        steps[0] += 1
        if steps[0] > budget:
            raise _Budget
        if len(closed_at) == n:
            return True
        # close an open chord
        for u in list(opened_at):
            if u in closed_at:
                continue
            if interlaced_now(u) == nbr[u]:
                closed_at[u] = len(word)
                word.append(u)
                if dfs():
                    return True
                word.pop()
                del closed_at[u]
        # open a new chord; an unopened twin of a chord already tried here
        # would only reproduce the same search with two labels swapped
        tried: list[int] = []
        for v in nodes:
            if v in opened_at:
                continue
            if any(_are_twins(nbr, v, w) for w in tried):
                continue
            tried.append(v)
            opened_at[v] = len(word)
            word.append(v)
            if dfs():
                return True
            word.pop()
            del opened_at[v]
            if not word:
                # the cyclic word may be rotated to start with any fixed chord
                break
        return False

    class _Budget(Exception):
        pass

    try:
        ok = dfs()
    except _Budget:
        return NotFound("budget exhausted")
    if not ok:
        return NotFound("graph is not a circle graph")
    return from_words([word])


def _are_twins(nbr: dict, u: int, v: int) -> bool:
    return nbr[u] - {v} == nbr[v] - {u}


def polygon_code(n: int) -> ChordDiagram:
    """One-circle free diagram whose interlacement graph is the n-cycle.

    Chords ``k`` and ``k - 1`` interlace through the pattern ``k, k-1``
    repeated along the circle; chord 2 closes the cycle with chord ``n``.
    """
    if n < 3:
        raise ValueError("polygon codes need at least three chords")
    word = [1, 2, 3, 1]
    for k in range(4, n + 1):
        word += [k, k - 1]
    word += [2, n]
    return from_words([word])


# -------------------------------------------------------------- utilities

def to_json_text(d: ChordDiagram) -> str:
    return json.dumps(d.to_json(), sort_keys=True)


def random_virtual_code(rng, n: int, circles: int = 1) -> ChordDiagram:
    """Random fully decorated diagram with ``n`` chords on ``circles`` circles."""
    labels = [lab for lab in range(1, n + 1) for _ in range(2)]
    rng.shuffle(labels)
    circles = max(1, min(circles, len(labels)))
    cuts = sorted(rng.sample(range(1, len(labels)), circles - 1)) if circles > 1 else []
    words, prev = [], 0
    for cut in cuts + [len(labels)]:
        words.append(labels[prev:cut])
        prev = cut
    if any(len(w) == 0 for w in words):
        words = [w for w in words if w] or [[]]
    first_over = {lab: rng.random() < 0.5 for lab in range(1, n + 1)}
    seen: set[int] = set()
    roles = []
    for w in words:
        rr = []
        for lab in w:
            first = lab not in seen
            seen.add(lab)
            rr.append("O" if first == first_over[lab] else "U")
        roles.append(rr)
    signs = {lab: rng.choice((1, -1)) for lab in range(1, n + 1)}
    if n == 0:
        return parse_gauss("")
    return from_words(words, roles, signs, VIRTUAL)
