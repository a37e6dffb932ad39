"""Virtual braids, tangles of oriented webs and the closure trace.

A tangle on ``n`` strands is a graph polynomial whose monomials are
oriented webs with ``end`` vertices labelled ``("b", k)`` at the bottom and
``("t", k)`` at the top, ``k = 1..n``.  Strands run upwards.  A monomial is
stored through the canonical keys of its components, so the web it stands
for is the disjoint union of the registered representatives.

Words are read left to right from the bottom: in ``X * Y`` the top ends of
``X`` are glued to the bottom ends of ``Y``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .canon import lookup
from .diagram import ChordDiagram, _normalize, VIRTUAL
from .engine import reduce_sl3
from .poly import GraphPolynomial, LaurentPoly
from .web import OLD, Web, WebBuilder, disjoint_union, splice

_TOKEN = re.compile(r"^([sv])(\d+)(\^-1)?$")


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    n: int
    word: tuple[tuple[str, int, int], ...]  # (kind "s"/"v", index i, exponent +-1)

    def __post_init__(self):
        if self.n < 1:
            raise BraidError("a braid needs at least one strand")
        for kind, i, e in self.word:
            if not 1 <= i < self.n:
                raise BraidError(f"generator index {i} out of range for {self.n} strands")
            if kind == "v" and e != 1:
                raise BraidError("virtual generators are involutions; write v<i>")

    @classmethod
    def parse(cls, n: int, text: str) -> "BraidWord":
        gens = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if not m:
                raise BraidError(f"bad braid token {tok!r}; expected s<i>, s<i>^-1 or v<i>")
            kind, i, inv = m.group(1), int(m.group(2)), m.group(3)
            if kind == "v" and inv:
                raise BraidError("virtual generators are involutions; write v<i>")
            gens.append((kind, i, -1 if inv else 1))
        return cls(n, tuple(gens))

    def __str__(self) -> str:
        out = []
        for kind, i, e in self.word:
            out.append(f"{kind}{i}" + ("^-1" if e < 0 else ""))
        return " ".join(out)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise BraidError("strand counts differ")
        return BraidWord(self.n, self.word + other.word)


def random_word(rng: random.Random, n: int, length: int, virtual: bool = True) -> BraidWord:
    gens = []
    for _ in range(length):
        kind = rng.choice("sv") if virtual and n > 1 else "s"
        i = rng.randint(1, n - 1)
        gens.append((kind, i, rng.choice((1, -1)) if kind == "s" else 1))
    return BraidWord(n, tuple(gens))


# ------------------------------------------------------------------ tangles

@dataclass(frozen=True)
class Tangle:
    n: int
    poly: GraphPolynomial = field(compare=True)

    def __mul__(self, other: "Tangle") -> "Tangle":
        return compose(self, other)

    def __add__(self, other: "Tangle") -> "Tangle":
        _same(self, other)
        return Tangle(self.n, self.poly + other.poly)

    def __sub__(self, other: "Tangle") -> "Tangle":
        _same(self, other)
        return Tangle(self.n, self.poly - other.poly)

    def scale(self, c) -> "Tangle":
        return Tangle(self.n, self.poly.scale(c))

    def is_zero(self) -> bool:
        return self.poly.is_zero()


def _same(a: Tangle, b: Tangle) -> None:
    if a.n != b.n:
        raise BraidError("tangles on different strand counts")


def _ends(b: WebBuilder, n: int):
    bottom = [b.add_vertex("end", ("b", k))[0] for k in range(1, n + 1)]
    top = [b.add_vertex("end", ("t", k))[0] for k in range(1, n + 1)]
    return bottom, top


def _generator_web(n: int, kind: str, i: int) -> Web:
    """``I`` (kind ``"I"``), the double-Y ``P_i`` (``"P"``) or ``v_i`` (``"v"``)."""
    b = WebBuilder()
    bottom, top = _ends(b, n)
    for k in range(n):
        if kind != "I" and k in (i - 1, i):
            continue
        b.join(bottom[k], top[k])
    if kind == "P":
        snk = b.add_vertex("snk")
        src = b.add_vertex("src")
        b.join(bottom[i - 1], snk[0])
        b.join(bottom[i], snk[1])
        b.join(src[0], top[i - 1])
        b.join(src[1], top[i])
        b.join(src[2], snk[2])
    elif kind == "v":
        b.join(bottom[i - 1], top[i])
        b.join(bottom[i], top[i - 1])
    w = b.build()
    w.validate()
    return w


def _from_web(n: int, web: Web, coeff=1) -> Tangle:
    return Tangle(n, reduce_sl3(web).scale(coeff if isinstance(coeff, LaurentPoly) else LaurentPoly.const(coeff)))


def identity(n: int) -> Tangle:
    return _from_web(n, _generator_web(n, "I", 0))


def P(n: int, i: int) -> Tangle:
    return _from_web(n, _generator_web(n, "P", i))


def V(n: int, i: int) -> Tangle:
    return _from_web(n, _generator_web(n, "v", i))


def sigma(n: int, i: int, exponent: int = 1) -> Tangle:
    """``A^2 I - A^-1 P_i`` or, for the inverse, ``A^-2 I - A P_i``."""
    e = 1 if exponent > 0 else -1
    return identity(n).scale(LaurentPoly.mono(2 * e)) - P(n, i).scale(LaurentPoly.mono(-e))


def monomial_web(m: tuple) -> Web:
    """Web of a tangle monomial (disjoint union of its components)."""
    parts = []
    for key in m:
        web, sign = lookup(key)
        parts.append(web)
    return disjoint_union(parts)


def _end_index(web: Web) -> dict:
    return {lab: v for v, lab in enumerate(web.labels) if web.kinds[v] == "end"}


@lru_cache(maxsize=65536)
def _compose_monomials(n: int, m1: tuple, m2: tuple) -> GraphPolynomial:
    w1, w2 = monomial_web(m1), monomial_web(m2)
    both = disjoint_union([w1, w2])
    off = w1.n_vertices
    e1 = _end_index(w1)
    e2 = {lab: v + off for lab, v in _end_index(w2).items()}
    remove, wires = [], []
    for k in range(1, n + 1):
        a, b = e1[("t", k)], e2[("b", k)]
        remove += [a, b]
        wires.append(((OLD, both.ports[a][0]), (OLD, both.ports[b][0])))
    return reduce_sl3(splice(both, remove, [], wires))


def compose(x: Tangle, y: Tangle) -> Tangle:
    """Stack ``y`` on top of ``x``."""
    _same(x, y)
    total = GraphPolynomial.zero()
    for m1, c1 in x.poly.items():
        for m2, c2 in y.poly.items():
            total = total + _compose_monomials(x.n, m1, m2).scale(c1 * c2)
    return Tangle(x.n, total)


def represent(b: BraidWord) -> Tangle:
    """Product of the generator tangles, reduced after each step."""
    out = identity(b.n)
    for kind, i, e in b.word:
        g = V(b.n, i) if kind == "v" else sigma(b.n, i, e)
        out = out * g
    return out


@lru_cache(maxsize=65536)
def _close_monomial(n: int, m: tuple) -> GraphPolynomial:
    web = monomial_web(m)
    ends = _end_index(web)
    remove, wires = [], []
    for k in range(1, n + 1):
        a, b = ends[("t", k)], ends[("b", k)]
        remove += [a, b]
        wires.append(((OLD, web.ports[a][0]), (OLD, web.ports[b][0])))
    return reduce_sl3(splice(web, remove, [], wires))


def trace(t: Tangle) -> GraphPolynomial:
    """Join top end ``k`` to bottom end ``k`` and reduce."""
    total = GraphPolynomial.zero()
    for m, c in t.poly.items():
        total = total + _close_monomial(t.n, m).scale(c)
    return total


def closure_trace(b: BraidWord, normalized: bool = False) -> GraphPolynomial:
    out = trace(represent(b))
    if normalized:
        w = sum(e for kind, _, e in b.word if kind == "s")
        out = out.scale(LaurentPoly.mono(-8 * w))
    return out


def closure_diagram(b: BraidWord) -> ChordDiagram:
    """Signed Gauss code of the closed braid.

    At ``s_i`` the strand coming from position ``i`` passes over; the sign
    is the exponent.  Virtual generators only swap positions.
    """
    n = b.n
    visited = [False] * n
    circles, roles = [], []
    signs = {}
    for start in range(n):
        if visited[start]:
            continue
        word, rr = [], []
        pos = start
        while True:
            visited[pos] = True
            for j, (kind, i, e) in enumerate(b.word):
                if pos not in (i - 1, i):
                    continue
                if kind == "s":
                    word.append(j + 1)
                    rr.append("O" if pos == i - 1 else "U")
                    signs[j + 1] = e
                pos = i if pos == i - 1 else i - 1
            if pos == start:
                break
        circles.append(word)
        roles.append(rr)
    return _normalize(circles, roles, signs, VIRTUAL)


# ---------------------------------------------------------------- relations

@dataclass
class RelationCheck:
    name: str
    n: int
    holds: bool
    residual: str = ""


def _check(name: str, n: int, lhs: Tangle, rhs: Tangle) -> RelationCheck:
    diff = lhs - rhs
    return RelationCheck(name, n, diff.is_zero(), "" if diff.is_zero() else str(diff.poly))


def verify_relations(n: int) -> list[RelationCheck]:
    """Check the projector and braid relations on ``n`` strands."""
    out: list[RelationCheck] = []
    I = identity(n)
    bigon = LaurentPoly({3: 1, -3: 1})
    for i in range(1, n):
        Pi, Si, Si_inv, Vi = P(n, i), sigma(n, i), sigma(n, i, -1), V(n, i)
        out.append(_check(f"P{i}^2 = (A^3+A^-3) P{i}", n, Pi * Pi, Pi.scale(bigon)))
        out.append(_check(f"s{i} s{i}^-1 = 1", n, Si * Si_inv, I))
        out.append(_check(f"v{i} P{i} = P{i}", n, Vi * Pi, Pi))
        out.append(_check(f"P{i} v{i} = P{i}", n, Pi * Vi, Pi))
        out.append(_check(f"v{i}^2 = 1", n, Vi * Vi, I))
        z2 = LaurentPoly({2: 1, -2: -1})
        out.append(_check(f"s{i}^2 - (A^2-A^-2) s{i} - 1 = 0 [q=A^2]", n,
                          Si * Si - Si.scale(z2) - I, I.scale(0)))
        Sp = Si.scale(LaurentPoly.mono(1))
        z3 = LaurentPoly({3: 1, -3: -1})
        out.append(_check(f"(A s{i})^2 - (A^3-A^-3)(A s{i}) - 1 = 0 [q=A^3]", n,
                          Sp * Sp - Sp.scale(z3) - I, I.scale(0)))
        if i + 1 < n:
            Pj, Sj, Vj = P(n, i + 1), sigma(n, i + 1), V(n, i + 1)
            out.append(_check(f"P{i}P{i+1}P{i} - P{i} = P{i+1}P{i}P{i+1} - P{i+1}", n,
                              Pi * Pj * Pi - Pi, Pj * Pi * Pj - Pj))
            out.append(_check(f"s{i}s{i+1}s{i} = s{i+1}s{i}s{i+1}", n, Si * Sj * Si, Sj * Si * Sj))
            out.append(_check(f"v{i}v{i+1}v{i} = v{i+1}v{i}v{i+1}", n, Vi * Vj * Vi, Vj * Vi * Vj))
            out.append(_check(f"v{i}s{i+1}v{i} = v{i+1}s{i}v{i+1}", n, Vi * Sj * Vi, Vj * Si * Vj))
        for j in range(i + 2, n):
            Pj = P(n, j)
            out.append(_check(f"P{i}P{j} = P{j}P{i} (|i-j|={j - i})", n, Pi * Pj, Pj * Pi))
            out.append(_check(f"v{i}v{j} = v{j}v{i} (|i-j|={j - i})", n, Vi * V(n, j), V(n, j) * Vi))
            out.append(_check(f"s{i}s{j} = s{j}s{i} (|i-j|={j - i})", n, Si * sigma(n, j), sigma(n, j) * Si))
    return out
