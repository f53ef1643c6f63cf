"""Exact numbers in K, the Q-span of formal irrational symbols.

A ``KNumber`` is a finite Q-linear combination ``a0 + a1*x1 + ... + ad*xd``
where the ``xi`` are symbol names standing for algebraically independent
transcendental reals.  The constant part is stored under the reserved
name ``"1"``.

Only Q-linear operations are closed in K.  Multiplying two elements is
allowed as long as one of them is rational; anything else raises
:class:`~intlift.errors.NonLinearProduct`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

import numpy as np

from ..errors import NonLinearProduct, ParseError

Rational = Fraction

ONE = "1"


class SymbolBasis:
    """Ordered symbol names with the constant ``"1"`` at index 0."""

    __slots__ = ("names",)

    def __init__(self, symbols: Iterable[str] = ()):
        names = [ONE]
        for s in symbols:
            if s == ONE:
                continue
            if not isinstance(s, str) or not s.isidentifier():
                raise ParseError(f"invalid symbol name {s!r}")
            if s in names:
                raise ParseError(f"duplicate symbol {s!r}")
            names.append(s)
        self.names = tuple(names)

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.names[1:]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.names

    def __eq__(self, other):
        return isinstance(other, SymbolBasis) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"SymbolBasis({list(self.symbols)!r})"

    def union(self, other: "SymbolBasis") -> "SymbolBasis":
        extra = [s for s in other.symbols if s not in self.names]
        return SymbolBasis(list(self.symbols) + extra)

    @classmethod
    def of(cls, values: Iterable["KNumber"]) -> "SymbolBasis":
        """Smallest basis covering ``values``, symbols sorted by name."""
        seen = set()
        for v in values:
            seen.update(k for k in coerce(v).coeffs if k != ONE)
        return cls(sorted(seen))


class KNumber:
    """Immutable element of K; ``coeffs`` maps symbol name to Fraction."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[str, object] | None = None):
        clean = {}
        if coeffs:
            for name, c in coeffs.items():
                c = Fraction(c)
                if c:
                    clean[name] = c
        self._coeffs = clean
        self._hash = None

    @classmethod
    def rational(cls, value) -> "KNumber":
        return cls({ONE: value})

    @classmethod
    def symbol(cls, name: str, coeff=1) -> "KNumber":
        return cls({name: coeff})

    @property
    def coeffs(self) -> Mapping[str, Fraction]:
        return self._coeffs

    def coefficient(self, name: str) -> Fraction:
        return self._coeffs.get(name, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_rational(self) -> bool:
        return all(k == ONE for k in self._coeffs)

    def symbols(self) -> set[str]:
        return {k for k in self._coeffs if k != ONE}

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coefficient(ONE)

    def flatten(self, basis: SymbolBasis) -> list[Fraction]:
        missing = self.symbols().difference(basis.names)
        if missing:
            raise ValueError(f"symbols {sorted(missing)} not in basis")
        return [self.coefficient(n) for n in basis.names]

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _maybe_coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return KNumber(out)

    __radd__ = __add__

    def __neg__(self):
        return KNumber({k: -c for k, c in self._coeffs.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _maybe_coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _maybe_coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _maybe_coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            s = other.coefficient(ONE)
            return KNumber({k: c * s for k, c in self._coeffs.items()})
        if self.is_rational():
            return other * self
        raise NonLinearProduct(f"product of {self} and {other} leaves K")

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe_coerce(other)
        if other is NotImplemented:
            return other
        if not other.is_rational() or other.is_zero():
            raise NonLinearProduct(f"cannot divide by {other}")
        s = other.coefficient(ONE)
        return KNumber({k: c / s for k, c in self._coeffs.items()})

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        other = _maybe_coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coefficient(ONE))
            else:
                self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __str__(self):
        return format_knumber(self)

    def __repr__(self):
        return f"KNumber({format_knumber(self)!r})"


def _maybe_coerce(x):
    if isinstance(x, KNumber):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return KNumber.rational(x)
    if isinstance(x, np.integer):
        return KNumber.rational(int(x))
    return NotImplemented


def coerce(x) -> KNumber:
    """Turn an int, Fraction, string or KNumber into a KNumber."""
    if isinstance(x, str):
        return parse_knumber(x)
    k = _maybe_coerce(x)
    if k is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an element of K")
    return k


# text form --------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<sym1>[^\W\d]\w*))?
        | (?P<sym2>[^\W\d]\w*)(?:\s*\*\s*(?P<coef2>\d+(?:/\d+)?))?
        )\s*""",
    re.VERBOSE | re.UNICODE,
)


def parse_knumber(text: str, allowed: Iterable[str] | None = None) -> KNumber:
    """Parse ``"a0 + a1*x1 + ..."``; rationals are written ``p/q``.

    >>> str(parse_knumber("1/2 - 3*lam + lam"))
    '1/2 - 2*lam'
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    allowed = None if allowed is None else set(allowed)
    pos, out, first = 0, {}, True
    s = text.strip()
    if not s:
        raise ParseError("empty number")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        if not first and m.group("sign") is None:
            raise ParseError(f"missing operator in {text!r}")
        first = False
        coef = m.group("coef") or m.group("coef2") or "1"
        name = m.group("sym1") or m.group("sym2") or ONE
        try:
            c = Fraction(coef)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}") from None
        if m.group("sign") == "-":
            c = -c
        if name != ONE and allowed is not None and name not in allowed:
            raise ParseError(f"unknown symbol {name!r} in {text!r}")
        out[name] = out.get(name, 0) + c
        pos = m.end()
    return KNumber(out)


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_knumber(x: KNumber) -> str:
    items = sorted(x.coeffs.items(), key=lambda kv: (kv[0] != ONE, kv[0]))
    if not items:
        return "0"
    parts = []
    for i, (name, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        if name == ONE:
            body = _fmt_frac(a)
        elif a == 1:
            body = name
        else:
            body = f"{_fmt_frac(a)}*{name}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# matrices ---------------------------------------------------------------
#
# ZMatrix, QMatrix and KMatrix are 2-d numpy arrays of dtype=object holding
# Python ints, Fractions and KNumbers respectively.  Object dtype keeps
# arbitrary precision and preserves shapes such as (0, n).


def zmatrix(rows, shape=None) -> np.ndarray:
    return _build(rows, int, shape)


def qmatrix(rows, shape=None) -> np.ndarray:
    return _build(rows, Fraction, shape)


def kmatrix(rows, shape=None) -> np.ndarray:
    return _build(rows, coerce, shape)


def _build(rows, conv, shape):
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        src = rows
    else:
        rows = [list(r) for r in rows]
        if shape is None:
            if not rows:
                raise ValueError("shape required for an empty matrix")
            width = len(rows[0])
            shape = (len(rows), width)
        if any(len(r) != shape[1] for r in rows) or len(rows) != shape[0]:
            raise ValueError("ragged or mis-shaped matrix")
        src = rows
    if isinstance(src, np.ndarray):
        shape = src.shape
    out = np.empty(shape, dtype=object)
    for i in range(shape[0]):
        for j in range(shape[1]):
            v = src[i][j]
            if conv is int:
                if isinstance(v, np.integer):
                    v = int(v)
                if not isinstance(v, int) or isinstance(v, bool):
                    if isinstance(v, Fraction) and v.denominator == 1:
                        v = int(v)
                    else:
                        raise ValueError(f"non-integer entry {v!r}")
            else:
                v = conv(v)
            out[i, j] = v
    return out


def zeros(rows: int, cols: int, kind=int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    zero = KNumber() if kind is KNumber else kind(0)
    out.fill(zero)
    return out


def identity(n: int, kind=int) -> np.ndarray:
    out = zeros(n, n, kind)
    one = KNumber.rational(1) if kind is KNumber else kind(1)
    for i in range(n):
        out[i, i] = one
    return out


def as_kmatrix(a) -> np.ndarray:
    """Coerce any integer/rational/K matrix to a KMatrix (copying)."""
    a = np.asarray(a, dtype=object)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return kmatrix(a)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product that keeps object dtype for every shape."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    out = np.empty((a.shape[0], b.shape[1]), dtype=object)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = 0
            for k in range(a.shape[1]):
                x, y = a[i, k], b[k, j]
                if x == 0 or y == 0:
                    continue
                acc = acc + x * y
            out[i, j] = acc
    return out


def is_zero_matrix(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(x == y for x, y in zip(a.flat, b.flat))


def basis_of(a: np.ndarray) -> SymbolBasis:
    return SymbolBasis.of(a.flat)


def flatten_rows(a: np.ndarray, basis: SymbolBasis | None = None) -> list[list[Fraction]]:
    """Each row of K^cols becomes a row of Q^(cols * |basis|)."""
    if basis is None:
        basis = basis_of(a)
    out = []
    for i in range(a.shape[0]):
        row = []
        for j in range(a.shape[1]):
            row.extend(coerce(a[i, j]).flatten(basis))
        out.append(row)
    return out


def clear_denominators(rows: list[list[Fraction]]) -> list[list[int]]:
    """Scale the whole matrix by the lcm of all denominators.

    One common factor for every row, so left kernels are unchanged.
    """
    from math import lcm

    m = 1
    for row in rows:
        for c in row:
            m = lcm(m, Fraction(c).denominator)
    return [[int(Fraction(c) * m) for c in row] for row in rows]
