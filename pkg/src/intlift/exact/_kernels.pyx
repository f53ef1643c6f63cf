# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 integer kernels, step-for-step twins of ``_pykernels``.

Every multiply/add is overflow-checked; on overflow ``OverflowError`` is
raised and the caller retries with the arbitrary-precision fallback.
"""

import numpy as np

cdef extern from "<limits.h>":
    long long LLONG_MIN

cdef extern from *:
    """
    static int ll_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int ll_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int ll_mul_ovf(long long a, long long b, long long *r) nogil
    int ll_sub_ovf(long long a, long long b, long long *r) nogil


ctypedef long long i64


cdef inline i64 _abs(i64 x) noexcept nogil:
    return -x if x < 0 else x


cdef inline i64 _floordiv(i64 a, i64 b) noexcept nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 _floormod(i64 a, i64 b) noexcept nogil:
    cdef i64 r = a % b
    if r != 0 and ((r < 0) != (b < 0)):
        r += b
    return r


cdef int _row_sub(i64[:, ::1] mat, Py_ssize_t dst, Py_ssize_t src, i64 q) except -1 nogil:
    cdef Py_ssize_t k
    cdef i64 t
    for k in range(mat.shape[1]):
        if mat[src, k] != 0:
            if ll_mul_ovf(q, mat[src, k], &t) or ll_sub_ovf(mat[dst, k], t, &t):
                with gil:
                    raise OverflowError("int64 overflow")
            mat[dst, k] = t
    return 0


cdef int _col_sub(i64[:, ::1] mat, Py_ssize_t dst, Py_ssize_t src, i64 q) except -1 nogil:
    cdef Py_ssize_t k
    cdef i64 t
    for k in range(mat.shape[0]):
        if mat[k, src] != 0:
            if ll_mul_ovf(q, mat[k, src], &t) or ll_sub_ovf(mat[k, dst], t, &t):
                with gil:
                    raise OverflowError("int64 overflow")
            mat[k, dst] = t
    return 0


cdef void _swap_rows(i64[:, ::1] mat, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef Py_ssize_t k
    cdef i64 t
    for k in range(mat.shape[1]):
        t = mat[a, k]
        mat[a, k] = mat[b, k]
        mat[b, k] = t


cdef void _swap_cols(i64[:, ::1] mat, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef Py_ssize_t k
    cdef i64 t
    for k in range(mat.shape[0]):
        t = mat[k, a]
        mat[k, a] = mat[k, b]
        mat[k, b] = t


cdef int _negate_row(i64[:, ::1] mat, Py_ssize_t r) except -1 nogil:
    cdef Py_ssize_t k
    for k in range(mat.shape[1]):
        if mat[r, k] == LLONG_MIN:
            with gil:
                raise OverflowError("int64 overflow")
        mat[r, k] = -mat[r, k]
    return 0


def hnf_row(a):
    """Row HNF on an int64 array; returns (h, u) as new int64 arrays."""
    cdef i64[:, ::1] h = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef Py_ssize_t m = h.shape[0], n = h.shape[1]
    u_arr = np.eye(m, dtype=np.int64)
    cdef i64[:, ::1] u = u_arr
    cdef Py_ssize_t r = 0, i, j, piv
    cdef bint found, clean
    cdef i64 p, q, x
    for j in range(n):
        if r == m:
            break
        found = False
        while True:
            piv = -1
            for i in range(r, m):
                x = h[i, j]
                if x != 0 and (piv < 0 or _abs(x) < _abs(h[piv, j])):
                    piv = i
            if piv < 0:
                break
            found = True
            if piv != r:
                _swap_rows(h, r, piv)
                _swap_rows(u, r, piv)
            clean = True
            p = h[r, j]
            for i in range(r + 1, m):
                if h[i, j] != 0:
                    q = _floordiv(h[i, j], p)
                    _row_sub(h, i, r, q)
                    _row_sub(u, i, r, q)
                    if h[i, j] != 0:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if h[r, j] < 0:
            _negate_row(h, r)
            _negate_row(u, r)
        p = h[r, j]
        for i in range(r):
            if h[i, j] != 0:
                q = _floordiv(h[i, j], p)
                if q != 0:
                    _row_sub(h, i, r, q)
                    _row_sub(u, i, r, q)
        r += 1
    return np.asarray(h), u_arr


def snf(a):
    """Smith normal form on an int64 array; returns (u, d, v)."""
    cdef i64[:, ::1] d = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef Py_ssize_t m = d.shape[0], n = d.shape[1]
    u_arr = np.eye(m, dtype=np.int64)
    v_arr = np.eye(n, dtype=np.int64)
    cdef i64[:, ::1] u = u_arr
    cdef i64[:, ::1] v = v_arr
    cdef Py_ssize_t t, i, j, pi, pj, bi
    cdef i64 best, x, p, q
    cdef bint dirty, have
    for t in range(min(m, n)):
        have = False
        best = 0
        pi = pj = t
        for i in range(t, m):
            for j in range(t, n):
                x = d[i, j]
                if x != 0 and (not have or _abs(x) < best):
                    have = True
                    best = _abs(x)
                    pi = i
                    pj = j
        if not have:
            break
        while True:
            if pi != t:
                _swap_rows(d, t, pi)
                _swap_rows(u, t, pi)
            if pj != t:
                _swap_cols(d, t, pj)
                _swap_cols(v, t, pj)
            p = d[t, t]
            dirty = False
            for i in range(t + 1, m):
                if d[i, t] != 0:
                    q = _floordiv(d[i, t], p)
                    _row_sub(d, i, t, q)
                    _row_sub(u, i, t, q)
                    if d[i, t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if d[t, j] != 0:
                    q = _floordiv(d[t, j], p)
                    _col_sub(d, j, t, q)
                    _col_sub(v, j, t, q)
                    if d[t, j] != 0:
                        dirty = True
            if not dirty:
                bi = -1
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if _floormod(d[i, j], p) != 0:
                            dirty = True
                            break
                    if dirty:
                        bi = i
                        break
                if dirty:
                    _row_sub(d, t, bi, -1)
                    _row_sub(u, t, bi, -1)
                else:
                    break
            have = False
            if d[t, t] != 0:
                have = True
                best = _abs(d[t, t])
                pi = t
                pj = t
            for i in range(t + 1, m):
                x = d[i, t]
                if x != 0 and (not have or _abs(x) < best):
                    have = True
                    best = _abs(x)
                    pi = i
                    pj = t
            for j in range(t + 1, n):
                x = d[t, j]
                if x != 0 and (not have or _abs(x) < best):
                    have = True
                    best = _abs(x)
                    pi = t
                    pj = j
        if d[t, t] < 0:
            _negate_row(d, t)
            _negate_row(u, t)
    return u_arr, np.asarray(d), v_arr


def bareiss_rank(a):
    """Rank of an int64 matrix by fraction-free elimination."""
    cdef i64[:, ::1] A = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, i, j, k, piv
    cdef i64 prev = 1, p, x, s, t
    for j in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            _swap_rows(A, r, piv)
        p = A[r, j]
        for i in range(r + 1, m):
            x = A[i, j]
            for k in range(j + 1, n):
                if ll_mul_ovf(p, A[i, k], &s) or ll_mul_ovf(x, A[r, k], &t) \
                        or ll_sub_ovf(s, t, &s):
                    raise OverflowError("int64 overflow")
                A[i, k] = s / prev
            A[i, j] = 0
        prev = p
        r += 1
    return r
