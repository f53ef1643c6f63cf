"""Pure-Python integer kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors them
step for step on int64 so both backends return identical matrices.
Matrices are lists of lists of Python ints and are modified in place.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _row_sub(rows, dst, src, q):
    # rows[dst] -= q * rows[src]
    a, b = rows[dst], rows[src]
    for k in range(len(a)):
        if b[k]:
            a[k] -= q * b[k]


def hnf_row(h, m, n):
    """Row Hermite normal form.  Returns (h, u) with u @ a == h."""
    u = _identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        found = False
        while True:
            piv = -1
            for i in range(r, m):
                x = h[i][j]
                if x and (piv < 0 or abs(x) < abs(h[piv][j])):
                    piv = i
            if piv < 0:
                break
            found = True
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            clean = True
            p = h[r][j]
            for i in range(r + 1, m):
                if h[i][j]:
                    q = h[i][j] // p
                    _row_sub(h, i, r, q)
                    _row_sub(u, i, r, q)
                    if h[i][j]:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if h[r][j] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        p = h[r][j]
        for i in range(r):
            if h[i][j]:
                q = h[i][j] // p
                if q:
                    _row_sub(h, i, r, q)
                    _row_sub(u, i, r, q)
        r += 1
    return h, u


def _col_sub(mat, dst, src, q):
    for row in mat:
        if row[src]:
            row[dst] -= q * row[src]


def _swap_cols(mat, a, b):
    for row in mat:
        row[a], row[b] = row[b], row[a]


def snf(d, m, n):
    """Smith normal form.  Returns (u, d, v) with u @ a @ v == d."""
    u = _identity(m)
    v = _identity(n)
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        while True:
            if pi != t:
                d[t], d[pi] = d[pi], d[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                _swap_cols(d, t, pj)
                _swap_cols(v, t, pj)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // p
                    _row_sub(d, i, t, q)
                    _row_sub(u, i, t, q)
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // p
                    _col_sub(d, j, t, q)
                    _col_sub(v, j, t, q)
                    if d[t][j]:
                        dirty = True
            if not dirty:
                # row and column cleared; enforce divisibility
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if d[i][j] % p:
                            dirty = True
                            break
                    if dirty:
                        # row_t += row_i
                        _row_sub(d, t, i, -1)
                        _row_sub(u, t, i, -1)
                        break
                if not dirty:
                    break
            # re-pick the smallest nonzero on row t / column t
            best = (abs(d[t][t]), t, t) if d[t][t] else None
            for i in range(t + 1, m):
                x = d[i][t]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, t)
            for j in range(t + 1, n):
                x = d[t][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), t, j)
            _, pi, pj = best
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def bareiss_rank(a, m, n):
    """Rank of an integer matrix by fraction-free elimination."""
    prev = 1
    r = 0
    for j in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i][j]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][j]
        for i in range(r + 1, m):
            x = a[i][j]
            row, prow = a[i], a[r]
            for k in range(j + 1, n):
                row[k] = (p * row[k] - x * prow[k]) // prev
            row[j] = 0
        prev = p
        r += 1
    return r
