from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from intlift.errors import NonLinearProduct, NotSaturated, ParseError
from intlift.exact import (
    KNumber,
    SymbolBasis,
    determinant,
    extend_to_unimodular,
    flatten_rank_q,
    format_knumber,
    function_field_rank,
    hnf_row,
    integer_rank,
    invariant_factors,
    inverse_unimodular,
    kmatrix,
    matmul,
    parse_knumber,
    saturated_left_kernel,
    snf,
    solve_rational,
    zmatrix,
)
from intlift.exact import poly

lam = KNumber.symbol("lam")
mu = KNumber.symbol("mu")

small = st.integers(-6, 6)


def int_matrices(max_rows=5, max_cols=5, elements=small):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(elements, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
knumbers = st.builds(
    lambda c0, c1, c2: KNumber({"1": c0, "lam": c1, "mu": c2}), fractions, fractions, fractions
)


# K arithmetic ------------------------------------------------------------


def test_knumber_arithmetic():
    x = KNumber.rational(Fraction(1, 2)) + 3 * lam
    assert x - 3 * lam == Fraction(1, 2)
    assert (x * 2).coefficient("lam") == 6
    assert (x / 3).coefficient("1") == Fraction(1, 6)
    assert (lam - lam).is_zero()
    assert KNumber.rational(4) == 4 and hash(KNumber.rational(4)) == hash(Fraction(4))


def test_symbol_products_refused():
    with pytest.raises(NonLinearProduct):
        lam * mu
    with pytest.raises(NonLinearProduct):
        lam / (1 + lam)


def test_parse_and_format():
    x = parse_knumber("1/2 - 2*lam + mu*3")
    assert x == Fraction(1, 2) - 2 * lam + 3 * mu
    assert format_knumber(x) == "1/2 - 2*lam + 3*mu"
    assert format_knumber(KNumber()) == "0"
    assert parse_knumber("-lam") == -lam
    with pytest.raises(ParseError):
        parse_knumber("lam*mu")
    with pytest.raises(ParseError):
        parse_knumber("2 + nu", allowed=["1", "lam"])
    with pytest.raises(ParseError):
        parse_knumber("0.5")


@given(knumbers)
def test_format_parse_roundtrip(x):
    assert parse_knumber(format_knumber(x)) == x


@given(knumbers, knumbers, fractions)
def test_field_axioms(x, y, q):
    assert x + y == y + x
    assert (x + y) * q == x * q + y * q
    assert x - x == 0


def test_symbol_basis():
    b = SymbolBasis(["mu", "lam"])
    assert b.names[0] == "1" and b.symbols == ("mu", "lam")
    assert SymbolBasis.of([lam + mu, KNumber.rational(2)]).symbols == ("lam", "mu")


# integer normal forms ----------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_snf_properties(rows):
    a = zmatrix(rows)
    u, d, v = snf(a)
    assert np.array_equal(matmul(matmul(u, a), v), d)
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [d[i, i] for i in range(min(d.shape))]
    off = [d[i, j] for i in range(d.shape[0]) for j in range(d.shape[1]) if i != j]
    assert all(x == 0 for x in off)
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_invariant_factors_match_sympy(rows):
    from sympy.matrices.normalforms import smith_normal_form

    s = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    expected = [abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0]
    assert invariant_factors(zmatrix(rows)) == expected


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_hnf_properties(rows):
    a = zmatrix(rows)
    h, u = hnf_row(a)
    assert np.array_equal(matmul(u, a), h)
    assert abs(determinant(u)) == 1
    rank = integer_rank(a)
    assert rank == sympy.Matrix(rows).rank()
    assert all(x == 0 for row in h[rank:] for x in row)
    last = -1
    for i in range(rank):
        j = next(j for j in range(h.shape[1]) if h[i, j] != 0)
        assert j > last and h[i, j] > 0
        assert all(0 <= h[k, j] < h[i, j] for k in range(i))
        last = j


def test_snf_known_example():
    # diag(2, 6) up to unimodular change
    assert invariant_factors(zmatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])) == [2, 6, 12]
    assert invariant_factors(zmatrix([[2, 0], [0, 3]])) == [1, 6]


def test_empty_shapes():
    u, d, v = snf(zmatrix([], shape=(0, 3)))
    assert u.shape == (0, 0) and d.shape == (0, 3) and v.shape == (3, 3)
    h, u = hnf_row(zmatrix([[], []], shape=(2, 0)))
    assert h.shape == (2, 0) and u.shape == (2, 2)


# lattices ---------------------------------------------------------------


def test_ranks_of_the_motivating_example():
    a = kmatrix([[1], [lam]])
    assert flatten_rank_q(a) == 2
    assert function_field_rank(a) == 1
    b = kmatrix([[1, 0], [0, lam]])
    assert flatten_rank_q(b) == 2 and function_field_rank(b) == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(knumbers, min_size=3, max_size=3), min_size=1, max_size=4))
def test_function_field_rank_matches_sympy(rows):
    a = kmatrix(rows)
    x, y = sympy.symbols("lam mu")

    def conv(k):
        return sympy.Rational(k.coefficient("1")) + sympy.Rational(k.coefficient("lam")) * x + sympy.Rational(k.coefficient("mu")) * y

    expected = sympy.Matrix([[conv(k) for k in row] for row in rows]).rank(simplify=True)
    assert function_field_rank(a) == expected


def test_poly_exact_division():
    p = {(1, 0): Fraction(1), (0, 1): Fraction(1)}  # x + y
    q = poly.mul(p, p)
    assert poly.exact_div(q, p) == p
    with pytest.raises(ArithmeticError):
        poly.exact_div(p, {(1, 0): Fraction(1)})


def test_saturated_kernel_mixed_denominators():
    # a row-wise rescaling of the flattening would change this kernel
    a = kmatrix([[0], [Fraction(-5, 2)], [-5]])
    k = saturated_left_kernel(a)
    assert np.array_equal(k, zmatrix([[1, 0, 0], [0, 2, -1]]))
    assert all(x == 0 for x in matmul(k, a).flat)


def test_saturated_kernel_irrational_direction():
    a = kmatrix([[1, lam], [2, 2 * lam], [0, 1]])
    k = saturated_left_kernel(a)
    assert np.array_equal(k, zmatrix([[2, -1, 0]]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(knumbers, min_size=2, max_size=2), min_size=1, max_size=5))
def test_kernel_is_saturated_and_complete(rows):
    a = kmatrix(rows)
    k = saturated_left_kernel(a)
    assert all(x == 0 for x in matmul(k, a).flat)
    assert k.shape[0] == len(rows) - flatten_rank_q(a)
    if k.shape[0]:
        assert set(invariant_factors(k)) <= {1}
    u = extend_to_unimodular(k, len(rows))
    assert abs(determinant(u)) == 1
    assert np.array_equal(u[len(rows) - k.shape[0]:], k)


def test_extend_rejects_unsaturated():
    with pytest.raises(NotSaturated):
        extend_to_unimodular(zmatrix([[2, 0]]))
    u = extend_to_unimodular(zmatrix([[2, 3]]))
    assert abs(determinant(u)) == 1


def test_solve_and_inverse():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    sol = solve_rational(m, [[Fraction(3)], [Fraction(2)]])
    assert sol == [[1], [1]]
    assert solve_rational([[Fraction(1)], [Fraction(1)]], [[Fraction(1)], [Fraction(2)]]) is None
    u = zmatrix([[2, 1], [1, 1]])
    assert np.array_equal(matmul(u, inverse_unimodular(u)), zmatrix([[1, 0], [0, 1]]))
