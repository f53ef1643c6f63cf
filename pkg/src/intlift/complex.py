"""Integer chain complexes, homology with explicit cycles, and cochains.

Smooth 2-forms are modelled by cellular cochains and integration over a
sphere by evaluation on an integral cycle.  Boundary matrices follow the
column convention: ``boundaries[k-1]`` is ``d_k`` of shape
``n_{k-1} x n_k`` and a chain is a column vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import DegreeMismatch, DegreeOutOfRange, MalformedInput, NotClosed
from .exact import (
    hnf_row,
    inverse_unimodular,
    is_zero_matrix,
    kmatrix,
    matmul,
    snf,
    solve_rational,
    zeros,
    zmatrix,
)


@dataclass(frozen=True, eq=False)
class ChainComplex:
    dims: tuple[int, ...]
    boundaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if not dims or any(n < 0 for n in dims):
            raise MalformedInput("dims must be a nonempty list of naturals")
        if len(self.boundaries) != len(dims) - 1:
            raise MalformedInput(
                f"expected {len(dims) - 1} boundary matrices, got {len(self.boundaries)}"
            )
        bds = []
        for k, b in enumerate(self.boundaries, start=1):
            b = zmatrix(b, shape=(dims[k - 1], dims[k]))
            if b.shape != (dims[k - 1], dims[k]):
                raise MalformedInput(
                    f"boundary {k} has shape {b.shape}, expected {(dims[k - 1], dims[k])}"
                )
            bds.append(b)
        for k in range(1, len(bds)):
            if not is_zero_matrix(matmul(bds[k - 1], bds[k])):
                raise MalformedInput(f"d_{k} d_{k + 1} != 0")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "boundaries", tuple(bds))

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, k: int) -> np.ndarray:
        """``d_k``; the zero maps at both ends are returned with the right shape."""
        if k <= 0:
            return zeros(0, self.dims[0])
        if k > self.top:
            return zeros(self.dims[self.top], 0)
        return self.boundaries[k - 1]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.dims))

    def __eq__(self, other):
        if not isinstance(other, ChainComplex) or self.dims != other.dims:
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.boundaries, other.boundaries))

    __hash__ = None


@dataclass(frozen=True)
class SimplicialInput:
    vertices: int
    facets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        facets = tuple(tuple(int(v) for v in f) for f in self.facets)
        for f in facets:
            if not f:
                raise MalformedInput("empty facet")
            if any(v < 0 or v >= self.vertices for v in f):
                raise MalformedInput(f"vertex index out of range in {f}")
            if len(set(f)) != len(f):
                raise MalformedInput(f"repeated vertex in {f}")
        object.__setattr__(self, "facets", facets)


def simplices(s: SimplicialInput) -> list[list[tuple[int, ...]]]:
    """All faces, grouped by dimension and sorted lexicographically."""
    faces: set[tuple[int, ...]] = set((v,) for v in range(s.vertices))
    for f in s.facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    top = max(len(f) for f in faces) - 1 if faces else 0
    return [sorted(f for f in faces if len(f) == k + 1) for k in range(top + 1)]


def from_simplicial(s: SimplicialInput) -> ChainComplex:
    """Simplicial chain complex; the face omitting vertex i gets sign (-1)^i."""
    cells = simplices(s)
    if not cells[0]:
        raise MalformedInput("a complex needs at least one vertex")
    index = [{c: i for i, c in enumerate(level)} for level in cells]
    bds = []
    for k in range(1, len(cells)):
        b = zeros(len(cells[k - 1]), len(cells[k]))
        for j, simplex in enumerate(cells[k]):
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                b[index[k - 1][face], j] += (-1) ** i
        bds.append(b)
    return ChainComplex(tuple(len(level) for level in cells), tuple(bds))


@dataclass(frozen=True, eq=False)
class HomologyResult:
    degree: int
    betti: int
    torsion: tuple[int, ...]
    cycle_basis: np.ndarray  # betti x n_degree

    def __eq__(self, other):
        return (
            isinstance(other, HomologyResult)
            and (self.degree, self.betti, self.torsion)
            == (other.degree, other.betti, other.torsion)
            and np.array_equal(self.cycle_basis, other.cycle_basis)
        )

    __hash__ = None


def _primitive_sign(row):
    for x in row:
        if x:
            return row if x > 0 else [-y for y in row]
    return row


def homology(c: ChainComplex, k: int) -> HomologyResult:
    """H_k with Betti number, torsion and a cycle basis of the free part.

    Cycles come from the Hermite basis of ker d_k, rewritten through the
    Smith form of the boundary inclusion so that the returned rows project
    to a basis of H_k / torsion.
    """
    if not 0 <= k <= c.top:
        raise DegreeOutOfRange(f"degree {k} outside 0..{c.top}")
    n = c.dims[k]
    dk = c.boundary(k)
    # cycles: integer kernel of d_k, as rows
    h, u = hnf_row(dk.T.copy()) if n else (zeros(0, 0), zeros(0, 0))
    rank_dk = sum(1 for i in range(n) if any(x != 0 for x in h[i]))
    cycles = u[rank_dk:, :]
    m = cycles.shape[0]
    if m == 0:
        return HomologyResult(k, 0, (), zeros(0, n))
    cycles, _ = hnf_row(cycles)

    # boundaries expressed in cycle coordinates: cycles.T @ coords == d_{k+1}
    dk1 = c.boundary(k + 1)
    nb = dk1.shape[1]
    coords = zeros(m, nb)
    if nb:
        sol = solve_rational(
            [[Fraction(cycles[i, j]) for i in range(m)] for j in range(n)],
            [[Fraction(dk1[j, t]) for t in range(nb)] for j in range(n)],
        )
        if sol is None:
            raise MalformedInput("boundaries are not cycles")
        for i in range(m):
            for t in range(nb):
                x = sol[i][t]
                if x.denominator != 1:
                    raise MalformedInput("non-integral boundary coordinates")
                coords[i, t] = int(x)

    p, d, _ = snf(coords)
    diag = [d[i, i] for i in range(min(d.shape))]
    nonzero = sum(1 for x in diag if x != 0)
    torsion = tuple(x for x in diag if x > 1)
    gens = inverse_unimodular(p)  # columns generate Z^m adapted to the image
    rows = []
    for j in range(nonzero, m):
        z = matmul(gens[:, j : j + 1].T, cycles)[0]
        rows.append(_primitive_sign([int(x) for x in z]))
    basis = zmatrix(rows, shape=(len(rows), n))
    return HomologyResult(k, len(rows), torsion, basis)


def betti_numbers(c: ChainComplex) -> list[int]:
    return [homology(c, k).betti for k in range(c.top + 1)]


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    values: np.ndarray  # n_degree x ell, KNumber entries

    def __post_init__(self):
        v = np.asarray(self.values, dtype=object)
        if v.ndim != 2:
            raise MalformedInput("cochain values must be a matrix")
        object.__setattr__(self, "values", kmatrix(v))

    @property
    def ell(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.values.shape == other.values.shape
            and all(a == b for a, b in zip(self.values.flat, other.values.flat))
        )

    __hash__ = None

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.degree != other.degree or self.values.shape != other.values.shape:
            raise DegreeMismatch("cochains of different shape")
        return Cochain(self.degree, self.values + other.values)

    def scale(self, s) -> "Cochain":
        return Cochain(self.degree, kmatrix(self.values * s))


def _check_shape(c: ChainComplex, f: Cochain):
    if not 0 <= f.degree <= c.top:
        raise DegreeOutOfRange(f"cochain degree {f.degree} outside 0..{c.top}")
    if f.values.shape[0] != c.dims[f.degree]:
        raise MalformedInput(
            f"cochain has {f.values.shape[0]} values, complex has {c.dims[f.degree]} cells"
        )


def coboundary(c: ChainComplex, f: Cochain) -> Cochain:
    _check_shape(c, f)
    if f.degree >= c.top:
        raise DegreeOutOfRange("no coboundary from the top degree")
    d = c.boundary(f.degree + 1)
    return Cochain(f.degree + 1, kmatrix(matmul(d.T.copy(), f.values)))


def is_closed(c: ChainComplex, f: Cochain) -> bool:
    _check_shape(c, f)
    if f.degree == c.top:
        return True
    return is_zero_matrix(coboundary(c, f).values)


def periods(c: ChainComplex, f: Cochain, h: HomologyResult) -> np.ndarray:
    """Evaluate a closed cochain on the cycle basis: an r x ell KMatrix."""
    if f.degree != h.degree:
        raise DegreeMismatch(f"cochain degree {f.degree} vs homology degree {h.degree}")
    if not is_closed(c, f):
        raise NotClosed("periods need a closed cochain")
    return kmatrix(matmul(h.cycle_basis, f.values), shape=(h.betti, f.ell))


def dual_cocycles(c: ChainComplex, h: HomologyResult) -> np.ndarray:
    """Rational cocycles ``X`` (n_k x r) with ``cycle_basis @ X == I``.

    Each column vanishes on every boundary, so it is closed; torsion cycles
    are killed automatically.
    """
    k, r, n = h.degree, h.betti, c.dims[h.degree]
    dk1 = c.boundary(k + 1)
    rows = [[Fraction(h.cycle_basis[i, j]) for j in range(n)] for i in range(r)]
    rows += [[Fraction(dk1[j, t]) for j in range(n)] for t in range(dk1.shape[1])]
    rhs = [[Fraction(int(i == s)) for s in range(r)] for i in range(r)]
    rhs += [[Fraction(0)] * r for _ in range(dk1.shape[1])]
    if not rows:
        return kmatrix(np.empty((n, r), dtype=object), shape=(n, r))
    sol = solve_rational(rows, rhs)
    if sol is None:
        raise MalformedInput("cycle basis is not independent modulo boundaries")
    return kmatrix(sol, shape=(n, r))


def simplicial_fixture(name: str) -> ChainComplex:
    """A few small complexes used by tests and the bundled fixtures."""
    if name == "tetra-boundary":
        return from_simplicial(SimplicialInput(4, ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))))
    if name == "solid-tetra":
        return from_simplicial(SimplicialInput(4, ((0, 1, 2, 3),)))
    if name == "torus":
        facets = []
        for i in range(7):
            facets.append((i, (i + 1) % 7, (i + 3) % 7))
            facets.append((i, (i + 2) % 7, (i + 3) % 7))
        return from_simplicial(SimplicialInput(7, tuple(facets)))
    if name == "s2xs2":
        return ChainComplex((1, 0, 2, 0, 1), (zeros(1, 0), zeros(0, 2), zeros(2, 0), zeros(0, 1)))
    raise KeyError(name)


def cochain(values: Sequence[Sequence[object]], degree: int, ell: Optional[int] = None) -> Cochain:
    rows = [list(r) for r in values]
    shape = (len(rows), ell if ell is not None else (len(rows[0]) if rows else 0))
    return Cochain(degree, kmatrix(rows, shape=shape))
