import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from tilted import ring

P = 3
CAP = 6


def series_strategy(p=P, cap=4, max_terms=4, prec=None):
    """Random series with exponents in Z[1/p] of bounded denominator."""

    @st.composite
    def build(draw):
        n = draw(st.integers(0, max_terms))
        acc = ring.zero(p, CAP, prec)
        for _ in range(n):
            coeff = draw(st.integers(1, p - 1))
            eu = Fraction(draw(st.integers(0, 4)), p ** draw(st.integers(0, 2)))
            et = Fraction(draw(st.integers(-3, 5)), p ** draw(st.integers(0, 2)))
            acc = acc + ring.monomial(p, CAP, coeff, eu, et, prec)
        return acc

    return build()


@pytest.fixture
def rng():
    return random.Random(0)
