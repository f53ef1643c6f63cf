"""Sparse multivariate polynomials over Q, just enough for Bareiss rank.

A polynomial is a dict mapping exponent tuples to nonzero Fractions.
"""

from __future__ import annotations

from fractions import Fraction

Poly = dict


def add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def exact_div(p: Poly, q: Poly) -> Poly:
    """Quotient ``p / q``; raises ArithmeticError unless q divides p."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = max(q)
    lc = q[lead]
    quot: Poly = {}
    rem = dict(p)
    while rem:
        lt = max(rem)
        mono = tuple(a - b for a, b in zip(lt, lead))
        if any(e < 0 for e in mono):
            raise ArithmeticError("division is not exact")
        c = Fraction(rem[lt]) / lc
        quot[mono] = quot.get(mono, 0) + c
        rem = add(rem, mul({mono: c}, q), scale=-1)
    return {m: c for m, c in quot.items() if c}


def bareiss_rank(rows: list[list[Poly]]) -> int:
    """Rank over the fraction field of Q[x1..xd]."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    prev: Poly | None = None
    r = 0
    for j in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][j]), -1)
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][j]
        for i in range(r + 1, m):
            x = a[i][j]
            for k in range(j + 1, n):
                v = add(mul(p, a[i][k]), mul(x, a[r][k]), scale=-1)
                a[i][k] = exact_div(v, prev) if prev is not None else v
            a[i][j] = {}
        prev = p
        r += 1
    return r
