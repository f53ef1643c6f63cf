"""Finite deck-group actions on the cover and the equivariant de Rham lift.

A group element acts on chains by integer chain maps ``g_k``.  On
cochains it acts by pushforward, ``g . f = f o g^-1``, which in matrix
terms is ``(g_k^-1)^T @ values``; this is a left action.

For a subspace E of closed scalar 2-cochains (columns of ``E``) that is
invariant under the group and surjects onto H^2, the tautological
E*-valued form has values ``E`` itself: its j-th coordinate is the j-th
basis form.  Its periods are ``cycles @ E``, whose rows are independent
over the reals whenever E surjects, so the monodromy group is a lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebroid import MonodromyReport, is_discrete
from .complex import ChainComplex, Cochain, HomologyResult, is_closed, periods
from .errors import (
    AssumptionsFailed,
    CoefficientActionUndefined,
    MalformedInput,
)
from .exact import (
    determinant,
    function_field_rank,
    identity,
    kmatrix,
    matmul,
    matrices_equal,
    solve_rational,
    zeros,
    zmatrix,
)
from .exact.field import basis_of, flatten_rows
from .exact.lattice import rational_rank


@dataclass(frozen=True, eq=False)
class GroupAction:
    complex: ChainComplex
    elements: tuple[tuple[np.ndarray, ...], ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        c = self.complex
        elems = []
        for idx, g in enumerate(self.elements):
            if len(g) != c.top + 1:
                raise MalformedInput(f"element {idx} needs {c.top + 1} matrices")
            mats = tuple(zmatrix(m, shape=(n, n)) for m, n in zip(g, c.dims))
            for k, (m, n) in enumerate(zip(mats, c.dims)):
                if m.shape != (n, n):
                    raise MalformedInput(f"element {idx} degree {k}: shape {m.shape}")
                if n and determinant(m) not in (1, -1):
                    raise MalformedInput(f"element {idx} degree {k} is not invertible over Z")
            for k in range(1, c.top + 1):
                d = c.boundary(k)
                if not matrices_equal(matmul(mats[k - 1], d), matmul(d, mats[k])):
                    raise MalformedInput(f"element {idx} is not a chain map in degree {k}")
            elems.append(mats)
        if not elems:
            raise MalformedInput("a group has at least the identity")
        for k, m in enumerate(elems[0]):
            if not matrices_equal(m, identity(c.dims[k])):
                raise MalformedInput("the first element must be the identity")

        order = len(elems)
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        if len(table) != order or any(len(row) != order for row in table):
            raise MalformedInput("multiplication table must be |G| x |G|")
        if any(not 0 <= x < order for row in table for x in row):
            raise MalformedInput("multiplication table index out of range")
        for i in range(order):
            if table[0][i] != i or table[i][0] != i:
                raise MalformedInput("element 0 is not a two-sided identity")
            if sorted(table[i]) != list(range(order)):
                raise MalformedInput(f"row {i} of the table is not a permutation")
            if 0 not in table[i]:
                raise MalformedInput(f"element {i} has no inverse")
        for i in range(order):
            for j in range(order):
                for k in range(order):
                    if table[table[i][j]][k] != table[i][table[j][k]]:
                        raise MalformedInput("multiplication table is not associative")
        for i in range(order):
            for j in range(order):
                prod = table[i][j]
                for deg in range(c.top + 1):
                    if not matrices_equal(matmul(elems[i][deg], elems[j][deg]), elems[prod][deg]):
                        raise MalformedInput(
                            f"g{i} g{j} does not match table entry g{prod} in degree {deg}"
                        )
        object.__setattr__(self, "elements", tuple(elems))
        object.__setattr__(self, "table", table)

    @property
    def order(self) -> int:
        return len(self.elements)

    def inverse(self, i: int) -> int:
        return self.table[i].index(0)

    def matrix(self, i: int, degree: int) -> np.ndarray:
        return self.elements[i][degree]

    @classmethod
    def trivial(cls, c: ChainComplex) -> "GroupAction":
        return cls(c, (tuple(identity(n) for n in c.dims),), ((0,),))


def act(a: GroupAction, i: int, f: Cochain) -> Cochain:
    """Push the cochain forward along element ``i``."""
    ginv = a.matrix(a.inverse(i), f.degree)
    return Cochain(f.degree, kmatrix(matmul(ginv.T.copy(), f.values), shape=f.values.shape))


def average_cochain(a: GroupAction, f: Cochain) -> Cochain:
    total = kmatrix(zeros(*f.values.shape))
    for i in range(a.order):
        total = total + act(a, i, f).values
    return Cochain(f.degree, kmatrix(total / a.order, shape=f.values.shape))


def is_invariant(a: GroupAction, f: Cochain) -> bool:
    return all(act(a, i, f) == f for i in range(a.order))


@dataclass(frozen=True, eq=False)
class FormSubspace:
    """Finite-dimensional space of closed scalar 2-cochains on the cover."""

    complex: ChainComplex
    basis: tuple[Cochain, ...]

    def __post_init__(self):
        basis = tuple(self.basis)
        n2 = self.complex.dims[2] if self.complex.top >= 2 else 0
        for f in basis:
            if f.degree != 2 or f.ell != 1:
                raise MalformedInput("basis forms must be scalar 2-cochains")
            if f.values.shape[0] != n2:
                raise MalformedInput("basis form does not match the complex")
            if not is_closed(self.complex, f):
                raise MalformedInput("basis forms must be closed")
        object.__setattr__(self, "basis", basis)
        if basis and rational_rank(_flat_columns(self.matrix())) != len(basis):
            raise MalformedInput("basis forms are linearly dependent over Q")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """n_2 x d matrix whose columns are the basis forms."""
        n2 = self.complex.dims[2]
        out = zeros(n2, self.dimension)
        for j, f in enumerate(self.basis):
            out[:, j] = f.values[:, 0]
        return kmatrix(out, shape=(n2, self.dimension))


def _flat_columns(m: np.ndarray, basis=None) -> list[list[Fraction]]:
    """Rows of Q coefficients whose columns correspond to columns of m."""
    if basis is None:
        basis = basis_of(m)
    cols = flatten_rows(m.T.copy(), basis)  # d rows of length n*|basis|
    if not cols:
        return []
    return [list(r) for r in zip(*cols)]


def coefficient_matrices(a: GroupAction, e: FormSubspace) -> list[np.ndarray]:
    """``R_g`` with ``g . E == E @ R_g`` for every element, as QMatrices."""
    E = e.matrix()
    d = e.dimension
    out = []
    for i in range(a.order):
        gE = act(a, i, Cochain(2, E)).values
        both = kmatrix(np.hstack([E, gE]), shape=(E.shape[0], 2 * d))
        bas = basis_of(both)
        sol = solve_rational(_flat_columns(E, bas), _flat_columns(gE, bas)) if d else []
        if sol is None:
            raise CoefficientActionUndefined(f"element {i} moves a basis form out of the span")
        r = np.empty((d, d), dtype=object)
        for s in range(d):
            for t in range(d):
                r[s, t] = sol[s][t]
        out.append(r)
    return out


def check_assumptions(a: GroupAction, e: FormSubspace, h: HomologyResult) -> bool:
    """Group-invariance of E and surjectivity of E onto H^2."""
    if h.degree != 2:
        return False
    if e.complex != a.complex or h.cycle_basis.shape[1] != a.complex.dims[2]:
        return False
    try:
        coefficient_matrices(a, e)
    except CoefficientActionUndefined:
        return False
    if e.dimension == 0:
        return h.betti == 0
    per = periods(a.complex, tautological_form(e), h)
    return function_field_rank(per) == h.betti


def tautological_form(e: FormSubspace) -> Cochain:
    """The E*-valued 2-cochain pairing each cell with every basis form."""
    return Cochain(2, e.matrix())


def equivariant_derham_certificate(
    a: GroupAction, e: FormSubspace, h: HomologyResult
) -> MonodromyReport:
    if not check_assumptions(a, e, h):
        raise AssumptionsFailed("E is not invariant or does not surject onto H^2")
    return is_discrete(periods(a.complex, tautological_form(e), h))


def check_equivariance(a: GroupAction, f: Cochain, e: FormSubspace) -> bool:
    """Is the E*-valued cochain ``f`` fixed by every group element?

    The coefficients transform by the inverse transpose of ``R_g``, written
    here on row vectors as right multiplication by ``R_(g^-1)``.
    """
    rs = coefficient_matrices(a, e)
    if f.ell != e.dimension:
        raise MalformedInput(f"cochain has {f.ell} coefficients, E has dimension {e.dimension}")
    for i in range(a.order):
        moved = act(a, i, f).values
        twisted = kmatrix(matmul(moved, rs[a.inverse(i)]), shape=f.values.shape)
        if not matrices_equal(twisted, f.values):
            return False
    return True


def theta_from_section(c: ChainComplex, h: HomologyResult, section) -> Cochain:
    """Representative of the de Rham class built from a linear section.

    ``section`` is n_2 x r; column i is a closed cochain in the class dual
    to the i-th basis cycle.
    """
    theta = Cochain(h.degree, kmatrix(np.asarray(section, dtype=object)))
    _check_represents(c, h, theta)
    return theta


def section_from_theta(c: ChainComplex, h: HomologyResult, theta: Cochain) -> np.ndarray:
    _check_represents(c, h, theta)
    return theta.values.copy()


def _check_represents(c: ChainComplex, h: HomologyResult, theta: Cochain):
    if theta.ell != h.betti:
        raise MalformedInput("coefficient dimension must equal the Betti number")
    per = periods(c, theta, h)
    if not matrices_equal(per, kmatrix(identity(h.betti), shape=(h.betti, h.betti))):
        raise MalformedInput("cochain does not pair to the identity with the cycle basis")


def cochains_from_columns(m: Sequence[Sequence[object]] | np.ndarray) -> tuple[Cochain, ...]:
    m = kmatrix(np.asarray(m, dtype=object))
    return tuple(Cochain(2, m[:, j : j + 1]) for j in range(m.shape[1]))


__all__ = [
    "FormSubspace",
    "GroupAction",
    "act",
    "average_cochain",
    "check_assumptions",
    "check_equivariance",
    "coefficient_matrices",
    "cochains_from_columns",
    "equivariant_derham_certificate",
    "is_invariant",
    "section_from_theta",
    "tautological_form",
    "theta_from_section",
]
