"""Ranks, saturated integer kernels and unimodular completions.

Integer vectors ``u`` annihilate a K-matrix exactly when they annihilate
its flattening over Q (symbols are Q-linearly independent together with
1), so every lattice question here reduces to integer matrices.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import NotSaturated
from . import poly
from .field import (
    ONE,
    basis_of,
    clear_denominators,
    coerce,
    flatten_rows,
    identity,
    zeros,
)
from .normal_forms import hnf_row, integer_rank, snf


def _flat_int(a: np.ndarray) -> tuple[np.ndarray, int, int]:
    rows = clear_denominators(flatten_rows(a))
    m = a.shape[0]
    n = len(rows[0]) if rows else a.shape[1] * len(basis_of(a))
    out = np.empty((m, n), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out, m, n


def flatten_rank_q(a: np.ndarray) -> int:
    """Dimension over Q of the span of the rows, symbols read as independent.

    This is the free rank of the subgroup of K^cols generated by the rows.
    """
    a = np.asarray(a, dtype=object)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    flat, _, _ = _flat_int(a)
    return integer_rank(flat)


def function_field_rank(a: np.ndarray) -> int:
    """Rank over Q(x1, ..., xd), reading each entry as a linear polynomial.

    With the symbols algebraically independent this is the dimension of
    the real span of the rows.
    """
    a = np.asarray(a, dtype=object)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    basis = basis_of(a)
    d = len(basis) - 1
    units = [tuple(1 if k == i else 0 for k in range(d)) for i in range(d)]
    const = (0,) * d

    def lift(x):
        x = coerce(x)
        out = {}
        for name, c in x.coeffs.items():
            out[const if name == ONE else units[basis.index(name) - 1]] = c
        return out

    rows = [[lift(a[i, j]) for j in range(a.shape[1])] for i in range(a.shape[0])]
    return poly.bareiss_rank(rows)


def saturated_left_kernel(a: np.ndarray) -> np.ndarray:
    """Z-basis (as rows) of ``{u in Z^rows : u @ a == 0}``, in Hermite form.

    The kernel of an integer map is automatically saturated; the basis is
    read off the zero rows of the row-HNF transform of the flattening.
    """
    a = np.asarray(a, dtype=object)
    m = a.shape[0]
    if m == 0:
        return zeros(0, 0)
    if a.shape[1] == 0:
        return identity(m)
    flat, _, _ = _flat_int(a)
    h, u = hnf_row(flat)
    rank = sum(1 for i in range(m) if any(x != 0 for x in h[i]))
    kernel = u[rank:, :]
    if kernel.shape[0] == 0:
        return zeros(0, m)
    # canonical basis: Hermite form of the kernel rows
    hk, _ = hnf_row(kernel)
    return hk


def extend_to_unimodular(k: np.ndarray, n: int | None = None) -> np.ndarray:
    """Complete the rows of ``k`` to a matrix in GL_n(Z), ``k`` placed last.

    Raises NotSaturated when the rows of ``k`` do not span a saturated
    sublattice (some invariant factor exceeds 1).
    """
    k = np.asarray(k, dtype=object)
    if n is None:
        n = k.shape[1]
    s = k.shape[0]
    if s == 0:
        return identity(n)
    if k.shape[1] != n:
        raise ValueError(f"expected {n} columns, got {k.shape[1]}")
    u, d, v = snf(k)
    diag = [d[i, i] for i in range(min(s, n))]
    if any(x == 0 for x in diag) or s > n:
        raise ValueError("rows are linearly dependent")
    if any(x != 1 for x in diag):
        raise NotSaturated(f"invariant factors {diag} are not all 1")
    # k = u^-1 [I | 0] v^-1, so rows of k span the first s rows of v^-1
    w = inverse_unimodular(v)
    out = np.empty((n, n), dtype=object)
    out[: n - s, :] = w[s:, :]
    out[n - s :, :] = k
    return out


# small exact helpers ------------------------------------------------------


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = [[Fraction(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][j]
        a[r] = [x / p for x in a[r]]
        for i in range(m):
            if i != r and a[i][j]:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return a, pivots


def rational_rank(rows) -> int:
    return len(rref(rows)[1])


def solve_rational(m: list[list[Fraction]], b: list[list[Fraction]]):
    """One solution X of ``m @ X == b`` (free variables 0), or None."""
    p = len(m)
    q = len(m[0]) if p else 0
    s = len(b[0]) if b else 0
    aug = [list(m[i]) + list(b[i]) for i in range(p)]
    red, pivots = rref(aug)
    if any(c >= q for c in pivots):
        return None
    x = [[Fraction(0)] * s for _ in range(q)]
    for row, c in zip(red, pivots):
        x[c] = row[q:]
    return x


def determinant(a: np.ndarray):
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    m = [[Fraction(a[i, j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if m[i][j]), None)
        if piv is None:
            return 0
        if piv != j:
            m[j], m[piv] = m[piv], m[j]
            det = -det
        det *= m[j][j]
        for i in range(j + 1, n):
            if m[i][j]:
                f = m[i][j] / m[j][j]
                m[i] = [x - f * y for x, y in zip(m[i], m[j])]
    return int(det) if det.denominator == 1 else det


def inverse_rational(a: np.ndarray) -> list[list[Fraction]]:
    n = a.shape[0]
    aug = [[Fraction(a[i, j]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
           for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def inverse_unimodular(a: np.ndarray) -> np.ndarray:
    inv = inverse_rational(np.asarray(a, dtype=object))
    n = len(inv)
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            x = inv[i][j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out[i, j] = int(x)
    return out
