"""Reference computations that share no code with the package internals.

* ``skein_bracket``: the skein bracket from a signed Gauss code, with
  state loops counted by walking the code itself and polynomials kept as
  plain ``{exponent: coefficient}`` dicts.
* ``g2_tensor_value``: the G2 web evaluation at q = 1 as a contraction of
  the octonion 3-form, a framed node being the identity crossing.
* ``line_graph_3_colorings``: proper 3-colourings of the line graph.
* ``sl3_braid_closure``: the quantum trace of a classical braid built from
  the Hecke-normalised R-matrix on ``C^3``.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product

import numpy as np

# ------------------------------------------------------------ dict polys


def padd(p, q):
    out = defaultdict(int, p)
    for e, c in q.items():
        out[e] += c
    return {e: c for e, c in out.items() if c}


def pmul(p, q):
    out = defaultdict(int)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] += c1 * c2
    return {e: c for e, c in out.items() if c}


def ppow(p, n):
    out = {0: 1}
    for _ in range(n):
        out = pmul(out, p)
    return out


def as_dict(lp) -> dict:
    """Package ``LaurentPoly`` to a plain dict."""
    return {e: c for e, c in lp.items()}


# ------------------------------------------------------ skein bracket

def parse_signed_code(text: str):
    """``[(label, role, sign), ...]`` per circle; empty text is one empty circle."""
    if not text.strip():
        return [[]]
    circles = []
    for comp in text.split(";"):
        row = []
        for tok in comp.split(","):
            tok = tok.strip()
            role, sign = tok[0], tok[-1]
            row.append((int(tok[1:-1]), role, 1 if sign == "+" else -1))
        circles.append(row)
    return circles


def state_loops(circles, choice: dict) -> int:
    """Loops after smoothing every crossing.

    Points are arc ends: ``("out", c, i)`` leaves position ``i`` of circle
    ``c`` and ``("in", c, i)`` arrives there.  Arcs join out(i) to in(i+1).
    The oriented smoothing joins each incoming end to the other strand's
    outgoing end; the other smoothing joins the two incoming ends and the
    two outgoing ends.
    """
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    empty = 0
    where = defaultdict(list)
    for c, circ in enumerate(circles):
        if not circ:
            empty += 1
            continue
        n = len(circ)
        for i, (lab, _, _) in enumerate(circ):
            union(("out", c, i), ("in", c, (i + 1) % n))
            where[lab].append((c, i))
    for lab, (p, q) in where.items():
        if choice[lab] == "oriented":
            union(("in",) + p, ("out",) + q)
            union(("in",) + q, ("out",) + p)
        else:
            union(("in",) + p, ("in",) + q)
            union(("out",) + p, ("out",) + q)
    roots = {find(x) for x in list(parent)}
    return len(roots) + empty


def skein_bracket(text: str, normalized: bool = True) -> dict:
    """``<K>`` with ``d = -A^2 - A^-2`` and the unknot equal to 1.

    For a positive crossing the A-smoothing is the oriented one, for a
    negative crossing it is the other one.
    """
    circles = parse_signed_code(text)
    signs = {}
    for circ in circles:
        for lab, _, s in circ:
            signs[lab] = s
    labels = sorted(signs)
    d = {2: -1, -2: -1}
    total: dict = {}
    for bits in product((0, 1), repeat=len(labels)):
        choice, exp = {}, 0
        for lab, b in zip(labels, bits):
            a_smoothing = b == 0
            exp += 1 if a_smoothing else -1
            oriented = a_smoothing == (signs[lab] > 0)
            choice[lab] = "oriented" if oriented else "unoriented"
        loops = state_loops(circles, choice)
        total = padd(total, pmul({exp: 1}, ppow(d, loops - 1)))
    if normalized:
        w = sum(signs.values())
        total = pmul(total, {-3 * w: (-1) ** (w % 2)})
    return total


# ------------------------------------------------------------ G2 tensor

FANO = [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)]


def octonion_form() -> np.ndarray:
    phi = np.zeros((7, 7, 7))
    for t in FANO:
        a, b, c = (x - 1 for x in t)
        for (i, j, k), s in (((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
                             ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1)):
            phi[i, j, k] = s
    return phi


PHI = octonion_form()
CROSS = np.einsum("ac,bd->abcd", np.eye(7), np.eye(7))


def g2_tensor_value(web) -> float:
    """Contract one tensor per vertex over the edges of ``web``."""
    import opt_einsum

    args = []
    for v, kind in enumerate(web.kinds):
        args.append(PHI if kind == "tri" else CROSS)
        args.append([min(h, web.mate[h]) for h in web.ports[v]])
    value = opt_einsum.contract(*args, [], optimize="auto-hq") if args else 1.0
    return float(value) * 7 ** web.circles


def g2_poly_value(p) -> float:
    """Numeric value of a G2 graph polynomial through the key registry."""
    from kupweb.canon import lookup

    total = 0.0
    for mono, coeff in p.items():
        v = float(coeff.evaluate(1))
        for key in mono:
            web, sign = lookup(key)
            v *= sign * g2_tensor_value(web)
        total += v
    return total


def fit_coefficients(target: np.ndarray, basis: list[np.ndarray]):
    """Least-squares coefficients of ``target`` in ``basis`` and the residual."""
    mat = np.stack([b.reshape(-1) for b in basis]).T
    x, *_ = np.linalg.lstsq(mat, target.reshape(-1), rcond=None)
    resid = float(np.abs(mat @ x - target.reshape(-1)).max())
    return x, resid


# ------------------------------------------------------------ colourings

def line_graph_3_colorings(edges: list[tuple]) -> int:
    """Proper 3-colourings of the line graph of a simple graph (brute force with pruning)."""
    m = len(edges)
    touching = [[j for j in range(i) if set(edges[i]) & set(edges[j])] for i in range(m)]
    colors = [0] * m

    def rec(i):
        if i == m:
            return 1
        n = 0
        for c in range(3):
            if all(colors[j] != c for j in touching[i]):
                colors[i] = c
                n += rec(i + 1)
        return n

    return rec(0)


# ------------------------------------------------- sl(3) R-matrix trace

def jimbo_r(q: complex, n: int = 3) -> np.ndarray:
    """The Hecke-normalised braiding on ``C^n (x) C^n``: eigenvalues ``q`` and ``-1/q``."""
    r = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            src = i * n + j
            if i == j:
                r[src, src] = q
            elif i < j:
                r[j * n + i, src] = 1
            else:
                r[j * n + i, src] = 1
                r[src, src] = q - 1 / q
    return r


def sl3_braid_closure(word: list[tuple[int, int]], strands: int, a: complex) -> complex:
    """Quantum trace of a classical braid with ``q = A^3`` and ``s_i = A^-1 R_i``.

    ``word`` lists ``(i, exponent)`` pairs, first generator at the bottom.
    """
    q = a ** 3
    r = jimbo_r(q)
    rinv = np.linalg.inv(r)
    dim = 3 ** strands
    m = np.eye(dim, dtype=complex)
    for i, e in word:
        g = r / a if e > 0 else rinv * a
        full = np.kron(np.kron(np.eye(3 ** (i - 1)), g), np.eye(3 ** (strands - i - 1)))
        m = full @ m
    k = np.diag([q ** 2, 1, q ** -2])
    kk = np.eye(1)
    for _ in range(strands):
        kk = np.kron(kk, k)
    return complex(np.trace(kk @ m))


def eval_laurent(p, a: complex) -> complex:
    return sum(c * a ** e for e, c in p.items())
