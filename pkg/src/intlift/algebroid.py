"""Trivially abelian transitive algebroids reduced to their period data.

Over a simply connected base the algebroid ``TM (+)_w (M x R^l)`` is, for
integrability purposes, the r x l matrix of periods of the closed form w on
a basis of H_2.  Its rows generate the monodromy group in R^l, and the
algebroid integrates exactly when that group is discrete.

A finitely generated subgroup of R^l is discrete if and only if its free
rank equals the dimension of its real span; both numbers are computed
exactly in K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .complex import ChainComplex, Cochain, HomologyResult, periods as cochain_periods
from .errors import MalformedInput, NotSimplyConnected, ShapeMismatch
from .exact import (
    SymbolBasis,
    flatten_rank_q,
    function_field_rank,
    kmatrix,
    matmul,
    matrices_equal,
)
from .exact.field import basis_of


@dataclass(frozen=True)
class Source:
    """Cochain provenance of a presentation."""

    complex: ChainComplex
    cochain: Cochain
    homology: HomologyResult


@dataclass(frozen=True, eq=False)
class AlgebroidPresentation:
    symbols: SymbolBasis
    r: int
    ell: int
    periods: np.ndarray
    simply_connected: bool = False
    source: Optional[Source] = field(default=None, repr=False)

    def __post_init__(self):
        p = kmatrix(np.asarray(self.periods, dtype=object), shape=(self.r, self.ell))
        if p.shape != (self.r, self.ell):
            raise ShapeMismatch(f"periods have shape {p.shape}, expected {(self.r, self.ell)}")
        if not isinstance(self.symbols, SymbolBasis):
            object.__setattr__(self, "symbols", SymbolBasis(self.symbols))
        unknown = set(basis_of(p).names).difference(self.symbols.names)
        if unknown:
            raise MalformedInput(f"periods use undeclared symbols {sorted(unknown)}")
        if self.source is not None:
            src = self.source
            computed = cochain_periods(src.complex, src.cochain, src.homology)
            if not matrices_equal(computed, p):
                raise MalformedInput("periods disagree with the cochain source")
        object.__setattr__(self, "periods", p)

    @classmethod
    def from_cochain(
        cls,
        c: ChainComplex,
        omega: Cochain,
        h: HomologyResult,
        *,
        simply_connected: bool,
        symbols: SymbolBasis | None = None,
    ) -> "AlgebroidPresentation":
        per = cochain_periods(c, omega, h)
        if symbols is None:
            symbols = basis_of(omega.values)
        return cls(symbols, h.betti, omega.ell, per, simply_connected, Source(c, omega, h))

    def __eq__(self, other):
        return (
            isinstance(other, AlgebroidPresentation)
            and self.symbols == other.symbols
            and (self.r, self.ell, self.simply_connected)
            == (other.r, other.ell, other.simply_connected)
            and matrices_equal(self.periods, other.periods)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class MonodromyReport:
    generators: np.ndarray
    free_rank: int
    real_span_dim: int
    discrete: bool

    def __eq__(self, other):
        return (
            isinstance(other, MonodromyReport)
            and (self.free_rank, self.real_span_dim, self.discrete)
            == (other.free_rank, other.real_span_dim, other.discrete)
            and matrices_equal(self.generators, other.generators)
        )

    __hash__ = None


def monodromy_generators(p: AlgebroidPresentation) -> np.ndarray:
    if not p.simply_connected:
        raise NotSimplyConnected(
            "monodromy from periods needs a simply connected base; "
            "pass to the universal cover (see intlift.equivariant)"
        )
    return p.periods.copy()


def is_discrete(gens) -> MonodromyReport:
    gens = kmatrix(np.asarray(gens, dtype=object))
    free = flatten_rank_q(gens)
    span = function_field_rank(gens)
    return MonodromyReport(gens, free, span, free == span)


def is_integrable(p: AlgebroidPresentation) -> MonodromyReport:
    return is_discrete(monodromy_generators(p))


def verify_morphism_functoriality(
    p: AlgebroidPresentation, q: AlgebroidPresentation, f
) -> bool:
    """Does the fiber map ``f`` (l_q x l_p) carry p's generators onto q's?

    Checked row by row: ``periods(p) @ f.T == periods(q)``.
    """
    f = kmatrix(np.asarray(f, dtype=object))
    if p.r != q.r:
        raise ShapeMismatch(f"rank mismatch: {p.r} vs {q.r}")
    if f.shape != (q.ell, p.ell):
        raise ShapeMismatch(f"fiber map has shape {f.shape}, expected {(q.ell, p.ell)}")
    image = kmatrix(matmul(p.periods, f.T.copy()), shape=(p.r, q.ell))
    return matrices_equal(image, q.periods)
