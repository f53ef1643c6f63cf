"""Exact arithmetic over Q and K, integer normal forms and lattices."""

from .field import (
    ONE,
    KNumber,
    Rational,
    SymbolBasis,
    as_kmatrix,
    coerce,
    format_knumber,
    identity,
    is_zero_matrix,
    kmatrix,
    matmul,
    matrices_equal,
    parse_knumber,
    qmatrix,
    zeros,
    zmatrix,
)
from .lattice import (
    determinant,
    extend_to_unimodular,
    flatten_rank_q,
    function_field_rank,
    inverse_unimodular,
    saturated_left_kernel,
    solve_rational,
)
from .normal_forms import BACKEND, hnf_row, integer_rank, invariant_factors, snf

__all__ = [
    "BACKEND",
    "ONE",
    "KNumber",
    "Rational",
    "SymbolBasis",
    "as_kmatrix",
    "coerce",
    "determinant",
    "extend_to_unimodular",
    "flatten_rank_q",
    "format_knumber",
    "function_field_rank",
    "hnf_row",
    "identity",
    "integer_rank",
    "invariant_factors",
    "inverse_unimodular",
    "is_zero_matrix",
    "kmatrix",
    "matmul",
    "matrices_equal",
    "parse_knumber",
    "qmatrix",
    "saturated_left_kernel",
    "snf",
    "solve_rational",
    "zeros",
    "zmatrix",
]
