"""The compiled kernels and the pure-Python fallback must agree exactly."""

import random

import numpy as np
import pytest

from intlift.exact import normal_forms as nf

needs_ext = pytest.mark.skipif(nf._ext is None, reason="compiled kernels not built")


def random_matrix(rng, m, n, span):
    return np.array([[rng.randint(-span, span) for _ in range(n)] for _ in range(m)], dtype=object)


@needs_ext
@pytest.mark.parametrize("seed", range(40))
def test_backends_identical(seed):
    rng = random.Random(seed)
    a = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7), rng.choice([1, 3, 50]))
    for x, y in zip(nf.snf(a, backend="cython"), nf.snf(a, backend="python")):
        assert np.array_equal(x, y)
    for x, y in zip(nf.hnf_row(a, backend="cython"), nf.hnf_row(a, backend="python")):
        assert np.array_equal(x, y)
    assert nf.integer_rank(a, backend="cython") == nf.integer_rank(a, backend="python")


@needs_ext
def test_overflow_falls_back_to_bigints():
    big = 2**62
    a = np.array([[big, big - 1], [big - 3, big + 7]], dtype=object)
    u, d, v = nf.snf(a)
    from intlift.exact import matmul

    assert np.array_equal(matmul(matmul(u, a), v), d)
    assert nf.integer_rank(a) == nf.integer_rank(a, backend="python") == 2
    h, u = nf.hnf_row(a)
    assert np.array_equal(matmul(u, a), h)


def test_huge_entries_use_fallback():
    a = np.array([[10**30, 1], [1, 0]], dtype=object)
    assert nf.invariant_factors(a) == [1, 1]


def test_forced_backend_without_extension(monkeypatch):
    monkeypatch.setattr(nf, "_ext", None)
    with pytest.raises(RuntimeError):
        nf.snf(np.array([[1]], dtype=object), backend="cython")
    assert nf.integer_rank(np.array([[1, 2], [2, 4]], dtype=object)) == 1


def test_backend_flag():
    assert nf.BACKEND in ("cython", "python")
