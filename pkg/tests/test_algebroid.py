import random
from fractions import Fraction

import pytest

from intlift.algebroid import (
    AlgebroidPresentation,
    is_discrete,
    is_integrable,
    monodromy_generators,
    verify_morphism_functoriality,
)
from intlift.complex import cochain, homology, simplicial_fixture
from intlift.errors import MalformedInput, NotSimplyConnected, ShapeMismatch
from intlift.exact import KNumber, SymbolBasis, kmatrix

lam = KNumber.symbol("lam")
mu = KNumber.symbol("mu")


def pres(rows, symbols=("lam",), sc=True):
    a = kmatrix(rows)
    return AlgebroidPresentation(SymbolBasis(symbols), a.shape[0], a.shape[1], a, sc)


def test_period_generators_of_the_product_of_spheres():
    c = simplicial_fixture("s2xs2")
    h = homology(c, 2)
    p = AlgebroidPresentation.from_cochain(c, cochain([[1], [lam]], 2), h, simply_connected=True)
    assert list(monodromy_generators(p)[:, 0]) == [1, lam]
    rep = is_integrable(p)
    assert (rep.free_rank, rep.real_span_dim, rep.discrete) == (2, 1, False)


def test_rational_multiple_is_integrable():
    # periods 1 and 3/2 generate (1/2)Z
    rep = is_integrable(pres([[1], [Fraction(3, 2)]], ()))
    assert rep.discrete and rep.free_rank == 1


@pytest.mark.parametrize(
    "rows, discrete",
    [
        ([[1, 0], [0, 1]], True),
        ([[1, lam], [2, 2 * lam]], True),
        ([[1, 0], [0, lam], [0, mu]], False),
        ([[lam, mu]], True),
        ([[0, 0]], True),
        ([[1], [lam], [mu]], False),
        ([[1, lam], [lam, 1]], True),
    ],
)
def test_discreteness_table(rows, discrete):
    assert is_discrete(kmatrix(rows)).discrete is discrete


def test_integer_generators_are_discrete():
    rng = random.Random(7)
    for _ in range(50):
        m, n = rng.randint(1, 6), rng.randint(1, 4)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        assert is_discrete(kmatrix(rows)).discrete


def test_requires_simply_connected():
    with pytest.raises(NotSimplyConnected):
        is_integrable(pres([[1]], (), sc=False))


def test_presentation_validation():
    with pytest.raises(MalformedInput):
        pres([[mu]], ("lam",))
    with pytest.raises(ShapeMismatch):
        AlgebroidPresentation(SymbolBasis(), 2, 1, kmatrix([[1]]), True)


def test_functoriality():
    total = pres([[1, 0], [0, lam]])
    base = pres([[1], [lam]])
    assert verify_morphism_functoriality(total, base, kmatrix([[1, 1]]))
    assert not verify_morphism_functoriality(total, base, kmatrix([[1, 0]]))
    with pytest.raises(ShapeMismatch):
        verify_morphism_functoriality(total, base, kmatrix([[1, 1, 1]]))


def test_presentation_equality():
    assert pres([[1], [lam]]) == pres([[1], [lam]])
    assert pres([[1], [lam]]) != pres([[1], [2 * lam]])
