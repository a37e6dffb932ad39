"""Laurent polynomials in A and linear combinations of graph monomials.

Coefficients are ``int`` in the integer context and ``Fraction`` in the
rational context.  The two contexts never mix silently: combining them
raises ``TypeError`` unless one side is promoted with ``to_rational``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Number = Union[int, Fraction]

ZZ = "ZZ"
QQ = "QQ"


def _clean(terms: Mapping[int, Number], ring: str) -> dict[int, Number]:
    out = {}
    for e, c in terms.items():
        if c:
            if ring == ZZ:
                if isinstance(c, Fraction):
                    raise TypeError("rational coefficient in integer context")
                out[e] = int(c)
            else:
                out[e] = Fraction(c)
    return out


class LaurentPoly:
    """Sparse Laurent polynomial in one variable ``A``."""

    __slots__ = ("_terms", "ring", "_hash")

    def __init__(self, terms: Mapping[int, Number] | None = None, ring: str = ZZ):
        if ring not in (ZZ, QQ):
            raise ValueError(f"unknown coefficient ring {ring!r}")
        self.ring = ring
        self._terms = _clean(terms or {}, ring)
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: Number, ring: str | None = None) -> "LaurentPoly":
        if ring is None:
            ring = QQ if isinstance(c, Fraction) else ZZ
        return cls({0: c}, ring)

    @classmethod
    def mono(cls, exp: int, c: Number = 1, ring: str | None = None) -> "LaurentPoly":
        if ring is None:
            ring = QQ if isinstance(c, Fraction) else ZZ
        return cls({exp: c}, ring)

    @classmethod
    def zero(cls, ring: str = ZZ) -> "LaurentPoly":
        return cls({}, ring)

    def to_rational(self) -> "LaurentPoly":
        return LaurentPoly(self._terms, QQ)

    def to_integer(self) -> "LaurentPoly":
        """Demote to integer coefficients; fails if some coefficient is fractional."""
        for c in self._terms.values():
            if Fraction(c).denominator != 1:
                raise ValueError("polynomial has non-integral coefficients")
        return LaurentPoly({e: int(c) for e, c in self._terms.items()}, ZZ)

    # inspection
    def items(self) -> Iterator[tuple[int, Number]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, exp: int) -> Number:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._terms)

    def degree_span(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        return min(self._terms), max(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic
    def _check(self, other: "LaurentPoly") -> str:
        if self.ring != other.ring:
            raise TypeError(
                f"cannot combine {self.ring} and {other.ring} polynomials; promote explicitly"
            )
        return self.ring

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, bool):
            raise TypeError("bool is not a coefficient")
        if isinstance(other, int):
            return LaurentPoly.const(other, self.ring)
        if isinstance(other, Fraction):
            if self.ring == ZZ and other.denominator != 1:
                raise TypeError("rational scalar in integer context")
            return LaurentPoly.const(other, self.ring)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, ring)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.ring)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self._check(other)
        out: dict[int, Number] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, ring)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial coefficient is not a unit")
            # c is a unit (+1 or -1) so c**n == c**|n|
            return LaurentPoly({e * n: c ** (-n)}, self.ring)
        result = LaurentPoly.const(1, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient ``self / other`` or ``None`` when it does not divide."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self._terms)
        lo_o, hi_o = other.degree_span()
        lead = other._terms[hi_o]
        quot: dict[int, Number] = {}
        while rem:
            hi = max(rem)
            if hi - hi_o < min(rem) - lo_o:
                return None
            c = rem[hi]
            q = Fraction(c, 1) / lead
            if self.ring == ZZ:
                if q.denominator != 1:
                    return None
                q = int(q)
            e = hi - hi_o
            quot[e] = q
            for eo, co in other._terms.items():
                k = e + eo
                v = rem.get(k, 0) - q * co
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot, self.ring)

    def evaluate(self, a: Number) -> Number:
        total: Number = 0
        for e, c in self._terms.items():
            total += c * (Fraction(a) ** e if e < 0 else a ** e)
        if self.ring == ZZ:
            total = Fraction(total)
            if total.denominator != 1:
                raise ValueError("evaluation left the integers")
            return int(total)
        return Fraction(total)

    def substitute_sign(self, a: int) -> "LaurentPoly":
        if a not in (1, -1):
            raise ValueError("A may only be specialised to +1 or -1")
        return LaurentPoly.const(self.evaluate(a), self.ring)

    # equality / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = LaurentPoly.const(other, self.ring)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # presentation
    def to_json(self) -> list[list[int]]:
        rows = []
        for e, c in self.items():
            c = Fraction(c)
            if c.denominator == 1:
                rows.append([e, c.numerator])
            else:
                rows.append([e, c.numerator, c.denominator])
        return rows

    @classmethod
    def from_json(cls, rows: Iterable[list[int]], ring: str = ZZ) -> "LaurentPoly":
        terms = {}
        for row in rows:
            e, num = row[0], row[1]
            den = row[2] if len(row) > 2 else 1
            terms[e] = Fraction(num, den) if ring == QQ else num
        return cls(terms, ring)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


A = LaurentPoly.mono(1)
ONE = LaurentPoly.const(1)


def quantum3() -> LaurentPoly:
    """Loop value of the sl(3) calculus, A^6 + 1 + A^-6."""
    return LaurentPoly({6: 1, 0: 1, -6: 1})


def bigon_factor() -> LaurentPoly:
    return LaurentPoly({3: 1, -3: 1})


# ---------------------------------------------------------------- graph side

Monomial = tuple  # sorted tuple of hex key strings; () is the scalar unit


def monomial(keys: Iterable[str]) -> Monomial:
    return tuple(sorted(keys))


class GraphPolynomial:
    """Finitely supported map from graph monomials to Laurent polynomials."""

    __slots__ = ("_terms", "ring")

    def __init__(self, terms: Mapping[Monomial, LaurentPoly] | None = None, ring: str = ZZ):
        self.ring = ring
        self._terms: dict[Monomial, LaurentPoly] = {}
        for m, p in (terms or {}).items():
            if p.ring != ring:
                raise TypeError(f"coefficient ring {p.ring} does not match {ring}")
            if p:
                self._terms[tuple(sorted(m))] = p

    @classmethod
    def scalar(cls, p: LaurentPoly | Number) -> "GraphPolynomial":
        if not isinstance(p, LaurentPoly):
            p = LaurentPoly.const(p)
        return cls({(): p}, p.ring)

    @classmethod
    def zero(cls, ring: str = ZZ) -> "GraphPolynomial":
        return cls({}, ring)

    @classmethod
    def graph(cls, keys: Iterable[str], coeff: LaurentPoly | Number = 1,
              ring: str | None = None) -> "GraphPolynomial":
        if not isinstance(coeff, LaurentPoly):
            coeff = LaurentPoly.const(coeff, ring)
        return cls({monomial(keys): coeff}, coeff.ring)

    def to_rational(self) -> "GraphPolynomial":
        return GraphPolynomial({m: p.to_rational() for m, p in self._terms.items()}, QQ)

    def items(self) -> list[tuple[Monomial, LaurentPoly]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def coeff(self, m: Iterable[str]) -> LaurentPoly:
        return self._terms.get(monomial(m), LaurentPoly.zero(self.ring))

    def support(self) -> list[Monomial]:
        return sorted(self._terms)

    def keys_used(self) -> set[str]:
        return {k for m in self._terms for k in m}

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "GraphPolynomial") -> None:
        if self.ring != other.ring:
            raise TypeError(
                f"cannot combine {self.ring} and {other.ring} graph polynomials; promote explicitly"
            )

    def __add__(self, other: "GraphPolynomial") -> "GraphPolynomial":
        if not isinstance(other, GraphPolynomial):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, p in other._terms.items():
            out[m] = out[m] + p if m in out else p
        return GraphPolynomial(out, self.ring)

    def __neg__(self) -> "GraphPolynomial":
        return GraphPolynomial({m: -p for m, p in self._terms.items()}, self.ring)

    def __sub__(self, other: "GraphPolynomial") -> "GraphPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "GraphPolynomial":
        if isinstance(other, GraphPolynomial):
            self._check(other)
            out: dict[Monomial, LaurentPoly] = {}
            for m1, p1 in self._terms.items():
                for m2, p2 in other._terms.items():
                    m = tuple(sorted(m1 + m2))
                    q = p1 * p2
                    out[m] = out[m] + q if m in out else q
            return GraphPolynomial(out, self.ring)
        return self.scale(other)

    def __rmul__(self, other) -> "GraphPolynomial":
        return self.scale(other)

    def scale(self, c) -> "GraphPolynomial":
        if not isinstance(c, LaurentPoly):
            if isinstance(c, Fraction) and self.ring == ZZ and c.denominator != 1:
                raise TypeError("rational scalar in integer context")
            c = LaurentPoly.const(c, self.ring)
        if c.ring != self.ring:
            raise TypeError(f"cannot scale {self.ring} graph polynomial by {c.ring} scalar")
        return GraphPolynomial({m: p * c for m, p in self._terms.items()}, self.ring)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def to_json(self) -> dict:
        return {
            "terms": [
                {"graphs": list(m), "poly": p.to_json()} for m, p in self.items()
            ]
        }

    @classmethod
    def from_json(cls, data: dict, ring: str = ZZ) -> "GraphPolynomial":
        terms = {}
        for t in data["terms"]:
            terms[tuple(t["graphs"])] = LaurentPoly.from_json(t["poly"], ring)
        return cls(terms, ring)

    def __repr__(self) -> str:
        return f"GraphPolynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, p in self.items():
            gr = "*".join(f"[{k[:12]}]" for k in m)
            parts.append(f"({p})" + (f"*{gr}" if gr else ""))
        return " + ".join(parts)


def evaluate_A(p: GraphPolynomial, a: int) -> GraphPolynomial:
    """Collapse every coefficient to its value at ``A = a`` (``a`` is +1 or -1)."""
    if a not in (1, -1):
        raise ValueError("A may only be specialised to +1 or -1")
    out: dict[Monomial, LaurentPoly] = {}
    for m, c in p.items():
        out[m] = c.substitute_sign(a)
    return GraphPolynomial(out, p.ring)


def is_scalar(p: GraphPolynomial) -> bool:
    return all(m == () for m in p.support())
