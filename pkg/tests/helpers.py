"""Random inputs shared by the property and acceptance tests."""

import random
from fractions import Fraction

from intlift.algebroid import AlgebroidPresentation
from intlift.exact import KNumber, SymbolBasis, kmatrix

SYMBOLS = ("a", "b", "c")


def random_knumber(rng: random.Random, symbols=SYMBOLS, span=5, density=0.6) -> KNumber:
    coeffs = {}
    if rng.random() < density:
        coeffs["1"] = Fraction(rng.randint(-span, span), rng.randint(1, 3))
    for s in symbols:
        if rng.random() < density / 2:
            coeffs[s] = Fraction(rng.randint(-span, span), rng.randint(1, 3))
    return KNumber(coeffs)


def random_presentation(rng: random.Random, max_r=5, max_ell=4, nonzero=False):
    while True:
        nsym = rng.randint(0, 3)
        syms = SYMBOLS[:nsym]
        r, ell = rng.randint(1, max_r), rng.randint(1, max_ell)
        rows = [[random_knumber(rng, syms) for _ in range(ell)] for _ in range(r)]
        if nonzero and all(x.is_zero() for row in rows for x in row):
            continue
        return AlgebroidPresentation(SymbolBasis(syms), r, ell, kmatrix(rows, shape=(r, ell)), True)


def corpus(seed: int, size: int = 200, nonzero=False):
    rng = random.Random(seed)
    return [random_presentation(rng, nonzero=nonzero) for _ in range(size)]
