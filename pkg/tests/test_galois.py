from fractions import Fraction

import pytest
from hypothesis import given, settings

from tilted import galois, ring
from tilted.errors import InsufficientGroupAccuracy, PrecisionRequired

from conftest import series_strategy

P = 3
CAP = 6


def s(text):
    return ring.parse_series(text, P, CAP)


class TestGroupLaw:
    def test_semidirect_product(self):
        g = galois.compose(galois.tau(2), galois.gamma(4))
        h = galois.compose(galois.tau(5), galois.gamma(7))
        gh = galois.compose(g, h)
        assert (gh.c, gh.a) == (2 + 4 * 5, 28)

    def test_identity(self):
        g = galois.GroupElem(3, 4)
        assert galois.compose(g, galois.IDENTITY) == g
        assert galois.compose(galois.IDENTITY, g) == g

    def test_exact_inverse_for_unit_gamma(self):
        g = galois.tau(5)
        inv = galois.inverse(g, P)
        assert inv == galois.GroupElem(-5, 1)
        assert galois.compose(g, inv) == galois.IDENTITY

    def test_modular_inverse(self):
        g = galois.gamma(4)
        inv = galois.inverse(g, P, nacc=10)
        assert inv.nacc == 10
        assert (4 * inv.a) % P**10 == 1

    def test_conjugation_identity(self):
        a = 7
        conj = galois.compose(
            galois.compose(galois.gamma(a), galois.tau(1)),
            galois.inverse(galois.gamma(a), P),
        )
        assert conj.c % P**conj.nacc == a
        assert conj.a % P**conj.nacc == 1


class TestEpsPow:
    def test_integer_exponent(self):
        assert galois.eps_pow(3, P) == s("1+u^{3}")
        assert galois.eps_pow(4, P) == s("1+u+u^{3}+u^{4}")

    def test_fractional_exponent(self):
        assert galois.eps_pow(Fraction(1, 3), P) == s("1+u^{1/3}")

    def test_negative_needs_cap(self):
        with pytest.raises(PrecisionRequired):
            galois.eps_pow(-1, P)
        x = galois.eps_pow(-1, P, prec=4)
        assert ring.eq_to_prec(x * s("1+u"), ring.one(P))

    def test_valuation_formula(self):
        one = ring.one(P)
        for m in (1, 2, 3, 6, 9, 12, 27):
            got = (galois.eps_pow(m, P) - one).val()
            assert got == galois.eps_val_formula(m, P)

    def test_group_hom(self):
        lhs = galois.eps_pow(Fraction(4, 3), P)
        rhs = galois.eps_pow(1, P) * galois.eps_pow(Fraction(1, 3), P)
        assert lhs == rhs


class TestAction:
    def test_gamma_on_u(self):
        got = galois.act(galois.gamma(4), ring.u_var(P))
        assert got == galois.eps_pow(4, P) - ring.one(P)

    def test_gamma_fixes_t(self):
        t = ring.t_var(P)
        assert galois.act(galois.gamma(7), t) == t

    def test_tau_on_t(self):
        got = galois.act(galois.tau(1), ring.t_var(P))
        assert got == galois.eps_pow(1, P) * ring.t_var(P)

    def test_tau_fixes_u(self):
        u = ring.u_var(P)
        assert galois.act(galois.tau(2), u) == u

    def test_tau_orbit_valuation(self):
        t13 = ring.monomial(P, CAP, 1, 0, Fraction(1, 3))
        d = galois.act(galois.tau(9), t13) - t13
        assert d.val() == Fraction(27, 2) / 3 + Fraction(1, 3)

    def test_accuracy_guard(self):
        g = galois.inverse(galois.gamma(4), P, nacc=2)
        x = ring.monomial(P, CAP, 1, Fraction(1, 9), 0, 20)
        with pytest.raises(InsufficientGroupAccuracy):
            galois.act(g, x, 20)

    def test_accurate_enough(self):
        deep = galois.inverse(galois.gamma(4), P, nacc=24)
        x = ring.monomial(P, CAP, 1, Fraction(1, 9), 0, 20)
        y = galois.act(deep, x, 20)
        restored = galois.act(galois.gamma(4), y, 20)
        assert ring.eq_to_prec(restored, x)


@settings(max_examples=30, deadline=None)
@given(series_strategy(prec=Fraction(15)))
def test_action_is_isometric(x):
    for g in (galois.tau(2), galois.gamma(4), galois.GroupElem(1, 7)):
        y = galois.act(g, x, 15)
        assert y.val_floor() == x.val_floor()


@settings(max_examples=25, deadline=None)
@given(series_strategy(prec=Fraction(12)), series_strategy(prec=Fraction(12)))
def test_action_is_ring_hom(x, y):
    g = galois.GroupElem(2, 4)
    lhs = galois.act(g, x * y, 12)
    rhs = (galois.act(g, x, 12) * galois.act(g, y, 12)).truncate(12)
    assert ring.eq_to_prec(lhs, rhs)
