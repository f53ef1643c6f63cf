"""Integrable lifts: Almeida-Molino and de Rham.

Both constructions work on the period matrix ``A`` (r x l) of a trivially
abelian algebroid over a simply connected base.

* Almeida-Molino: change the basis of H_2 by a unimodular ``u`` so that
  only the first ``n`` rows of ``u @ A`` are nonzero, then give each of
  those rows its own copy of R^l.  The lift has fiber R^(n*l) and maps
  down by summing the copies.
* de Rham: adjoin the tautological H_2-valued form, whose period matrix is
  the identity.  The lift has fiber R^r (+) R^l, periods ``[I | A]``, and
  maps down by projecting onto R^l.

Minimality of n.  A row of ``u @ A`` vanishes exactly when the matching
row of ``u`` is an integer left-kernel vector of ``A``.  That kernel is a
saturated lattice of rank k, so at most k rows of a unimodular ``u`` can
lie in it, and completing a kernel basis to a unimodular matrix attains k.
Hence the minimum number of nonzero rows is ``r - k``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .algebroid import (
    AlgebroidPresentation,
    MonodromyReport,
    Source,
    is_discrete,
    is_integrable,
    monodromy_generators,
    verify_morphism_functoriality,
)
from .complex import ChainComplex, Cochain, HomologyResult, dual_cocycles
from .errors import DegreeMismatch, IntliftError, TrivialClass
from .exact import (
    KNumber,
    SymbolBasis,
    extend_to_unimodular,
    function_field_rank,
    identity,
    inverse_unimodular,
    is_zero_matrix,
    kmatrix,
    matmul,
    matrices_equal,
    saturated_left_kernel,
    zeros,
)


@dataclass(frozen=True, eq=False)
class NOfBResult:
    n: int
    u: np.ndarray
    transformed_periods: np.ndarray


@dataclass(frozen=True, eq=False)
class LiftResult:
    kind: str
    base: AlgebroidPresentation
    total: AlgebroidPresentation
    fiber_map: np.ndarray  # l x l'
    kernel_basis: np.ndarray  # (l' - l) x l'
    certificate: MonodromyReport
    u: np.ndarray
    n: int
    degenerate: bool = False


def _k(a, shape) -> np.ndarray:
    return kmatrix(a, shape=shape)


def n_of_b(p: AlgebroidPresentation) -> NOfBResult:
    """Fewest nonzero rows of ``u @ periods`` over unimodular ``u``."""
    a = p.periods
    r = p.r
    if r == 0:
        return NOfBResult(0, zeros(0, 0), a.copy())
    kernel = saturated_left_kernel(a)
    u = extend_to_unimodular(kernel, r)
    return NOfBResult(r - kernel.shape[0], u, _k(matmul(u, a), (r, p.ell)))


def _kron_block(col: np.ndarray, row: np.ndarray) -> np.ndarray:
    out = np.empty((col.shape[0], row.shape[0]), dtype=object)
    for i in range(col.shape[0]):
        for j in range(row.shape[0]):
            out[i, j] = col[i] * row[j]
    return out


def almeida_molino_lift(p: AlgebroidPresentation) -> LiftResult:
    gens = monodromy_generators(p)
    if is_zero_matrix(gens):
        raise TrivialClass("the class of the curvature is zero; nothing to lift")
    nb = n_of_b(p)
    n, u, a1 = nb.n, nb.u, nb.transformed_periods
    r, ell = p.r, p.ell
    wide = n * ell

    total_periods = zeros(r, wide, KNumber)
    for i in range(n):
        total_periods[i, i * ell : (i + 1) * ell] = a1[i, :]
    mu = zeros(ell, wide, KNumber)
    for i in range(n):
        for j in range(ell):
            mu[j, i * ell + j] = KNumber.rational(1)
    kernel = zeros((n - 1) * ell, wide, KNumber)
    for i in range(1, n):
        for j in range(ell):
            kernel[(i - 1) * ell + j, j] = KNumber.rational(1)
            kernel[(i - 1) * ell + j, i * ell + j] = KNumber.rational(-1)

    base_src = total_src = None
    if p.source is not None:
        c, h = p.source.complex, p.source.homology
        x = dual_cocycles(c, h)
        h1 = HomologyResult(h.degree, h.betti, h.torsion, matmul(u, h.cycle_basis))
        # the representative sum_i phi_i (x) Theta_i, cohomologous to omega
        base_src = Source(c, Cochain(h.degree, _k(matmul(x, p.periods), (x.shape[0], ell))), h1)
        x1 = _k(matmul(x, inverse_unimodular(u)), x.shape)
        vals = zeros(x.shape[0], wide, KNumber)
        for i in range(n):
            vals[:, i * ell : (i + 1) * ell] = _kron_block(x1[:, i], a1[i, :])
        total_src = Source(c, Cochain(h.degree, vals), h1)

    base = AlgebroidPresentation(p.symbols, r, ell, a1, True, base_src)
    total = AlgebroidPresentation(p.symbols, r, wide, total_periods, True, total_src)
    return LiftResult(
        "almeida-molino", base, total, mu, kernel, is_integrable(total), u, n, n == 1
    )


def derham_presentation(
    c: ChainComplex, h: HomologyResult, *, simply_connected: bool
) -> tuple[AlgebroidPresentation, Cochain]:
    """The de Rham algebroid: fiber H_2(M; R) ~ R^r and identity periods.

    The returned cochain has values in Q^r, is closed and evaluates to the
    i-th unit vector on the i-th basis cycle.
    """
    if h.degree != 2:
        raise DegreeMismatch(f"de Rham algebroid needs H_2, got degree {h.degree}")
    theta = Cochain(2, dual_cocycles(c, h))
    pres = AlgebroidPresentation.from_cochain(
        c, theta, h, simply_connected=simply_connected, symbols=SymbolBasis()
    )
    return pres, theta


def derham_lift(p: AlgebroidPresentation) -> LiftResult:
    a = monodromy_generators(p)
    r, ell = p.r, p.ell
    total_periods = zeros(r, r + ell, KNumber)
    total_periods[:, :r] = identity(r, KNumber)
    total_periods[:, r:] = a
    proj = zeros(ell, r + ell, KNumber)
    proj[:, r:] = identity(ell, KNumber)
    kernel = zeros(r, r + ell, KNumber)
    kernel[:, :r] = identity(r, KNumber)

    total_src = None
    if p.source is not None:
        c, omega, h = p.source.complex, p.source.cochain, p.source.homology
        x = dual_cocycles(c, h)
        vals = zeros(x.shape[0], r + ell, KNumber)
        vals[:, :r] = x
        vals[:, r:] = omega.values
        total_src = Source(c, Cochain(omega.degree, vals), h)

    total = AlgebroidPresentation(p.symbols, r, r + ell, total_periods, True, total_src)
    return LiftResult("de-rham", p, total, proj, kernel, is_integrable(total), identity(r), r)


def verify_lift(lr: LiftResult) -> bool:
    """Check that ``lr`` is an integrable lift of its base.

    Requires a discrete certificate (recomputed), a surjective fiber map,
    generator-level functoriality, and a kernel basis of the right rank
    annihilated by the fiber map.  With cochain sources on both sides the
    fiber map must also carry the total cochain exactly onto the base one.
    """
    try:
        ell, wide = lr.base.ell, lr.total.ell
        fm = kmatrix(np.asarray(lr.fiber_map, dtype=object), shape=(ell, wide))
        kb = kmatrix(np.asarray(lr.kernel_basis, dtype=object), shape=(wide - ell, wide))
        cert = is_discrete(lr.total.periods)
        if not (lr.certificate.discrete and cert.discrete):
            return False
        if function_field_rank(fm) != ell:
            return False
        if not verify_morphism_functoriality(lr.total, lr.base, fm):
            return False
        if kb.shape[0] and not is_zero_matrix(matmul(fm, kb.T.copy())):
            return False
        if function_field_rank(kb) != wide - ell:
            return False
        tsrc, bsrc = lr.total.source, lr.base.source
        if tsrc is not None and bsrc is not None:
            image = kmatrix(matmul(tsrc.cochain.values, fm.T.copy()), shape=bsrc.cochain.values.shape)
            if not matrices_equal(image, bsrc.cochain.values):
                return False
        return True
    except (IntliftError, ValueError):
        return False


def with_fiber_map(lr: LiftResult, fiber_map) -> LiftResult:
    return replace(lr, fiber_map=kmatrix(np.asarray(fiber_map, dtype=object)))
