"""Smith and Hermite normal forms of integer matrices.

The hot loops live in the compiled ``_kernels`` extension when it is
available.  Set ``INTLIFT_PURE_PYTHON=1`` to force the fallback.  Both
backends follow the same pivot rule (smallest absolute value, ties to the
lowest row, then the lowest column), so they return identical results;
inputs or intermediates that leave int64 are routed to the fallback.
"""

from __future__ import annotations

import logging
import os

import numpy as np

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _kernels as _ext
except ImportError:  # pragma: no cover - depends on the build
    _ext = None

if os.environ.get("INTLIFT_PURE_PYTHON"):
    _ext = None

BACKEND = "cython" if _ext is not None else "python"

_INT64_MIN = np.iinfo(np.int64).min


def _rows(a) -> tuple[list[list[int]], int, int]:
    a = np.asarray(a, dtype=object)
    if a.ndim != 2:
        raise ValueError("expected a 2-d integer matrix")
    m, n = a.shape
    rows = [[int(a[i, j]) for j in range(n)] for i in range(m)]
    return rows, m, n


def _obj(x, shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    for i in range(shape[0]):
        for j in range(shape[1]):
            out[i, j] = int(x[i][j])
    return out


def _int64(a, backend):
    """The input as a C-contiguous int64 array, or None to use the fallback."""
    if backend == "python":
        return None
    if backend == "cython" and _ext is None:
        raise RuntimeError("compiled kernels are not available")
    if _ext is None:
        return None
    a = np.asarray(a, dtype=object)
    if a.ndim != 2 or a.size == 0:
        return None
    try:
        out = np.ascontiguousarray(a.astype(np.int64))
    except OverflowError:
        return None
    # -2**63 has no negation in int64
    if (out == _INT64_MIN).any():
        return None
    return out


def snf(a, *, backend: str | None = None):
    """Smith normal form ``u @ a @ v == d``.

    ``u`` and ``v`` are unimodular and ``d`` is diagonal with nonnegative
    entries ``d1 | d2 | ...``.  All three are object-dtype int matrices.
    """
    x = _int64(a, backend)
    if x is not None:
        try:
            return tuple(m.astype(object) for m in _ext.snf(x))
        except OverflowError:
            log.debug("snf: int64 overflow, using bigint fallback")
    rows, m, n = _rows(a)
    u, d, v = _pykernels.snf(rows, m, n)
    return _obj(u, (m, m)), _obj(d, (m, n)), _obj(v, (n, n))


def hnf_row(a, *, backend: str | None = None):
    """Row Hermite normal form ``u @ a == h`` with ``u`` unimodular.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``.  Zero rows of ``h`` come last.
    """
    x = _int64(a, backend)
    if x is not None:
        try:
            return tuple(m.astype(object) for m in _ext.hnf_row(x))
        except OverflowError:
            log.debug("hnf_row: int64 overflow, using bigint fallback")
    rows, m, n = _rows(a)
    h, u = _pykernels.hnf_row(rows, m, n)
    return _obj(h, (m, n)), _obj(u, (m, m))


def integer_rank(a, *, backend: str | None = None) -> int:
    x = _int64(a, backend)
    if x is not None:
        try:
            return int(_ext.bareiss_rank(x))
        except OverflowError:
            log.debug("integer_rank: int64 overflow, using bigint fallback")
    rows, m, n = _rows(a)
    return _pykernels.bareiss_rank(rows, m, n)


def invariant_factors(a) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    _, d, _ = snf(a)
    return [d[i, i] for i in range(min(d.shape)) if d[i, i] != 0]
