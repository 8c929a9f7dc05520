from fractions import Fraction

import pytest

from tilted import galois, phitau, ring
from tilted.errors import ParseError, PreconditionViolated
from tilted.phitau import MatSeries

P = 3
CAP = 6


def s(text):
    return ring.parse_series(text, P, CAP)


def one_by_one(entry, prec):
    b = MatSeries.from_rows([[entry]])
    binv = MatSeries.from_rows([[ring.invert(entry, prec)]])
    return phitau.basechange_from_matrix(b, binv, prec)


@pytest.fixture(scope="module")
def mod_1pt():
    return one_by_one(s("1+t"), 24)


@pytest.fixture(scope="module")
def mod_d2():
    return phitau.basechange_generate(2, seed=4, complexity=2, p=P, prec=24)


class TestMatSeries:
    def test_inverse(self, mod_d2):
        m = mod_d2.frob
        prod = m * m.inverse(20)
        ident = MatSeries.identity(2, P, CAP, Fraction(20))
        assert (prod - ident).truncate(20).is_zero()

    def test_det_multiplicative(self, mod_d2):
        a, b = mod_d2.frob, mod_d2.mat_tau
        lhs = (a * b).det()
        rhs = a.det() * b.det()
        assert ring.eq_to_prec(lhs, rhs)


class TestModuleConstruction:
    def test_closed_form_frobenius(self, mod_1pt):
        assert ring.eq_to_prec(mod_1pt.frob.rows[0][0], s("1+2*t+t^{2}"))

    def test_closed_form_tau(self, mod_1pt):
        lhs = mod_1pt.mat_tau.rows[0][0] * s("1+t")
        assert ring.eq_to_prec(lhs, s("1+t+u*t"))

    def test_rejects_u_in_frobenius(self):
        frob = MatSeries.from_rows([[s("1+u")]])
        tau_m = MatSeries.identity(1, P, CAP)
        with pytest.raises(PreconditionViolated):
            phitau.make_module(frob, tau_m, 12)

    def test_rejects_wrong_cocycle(self):
        frob = MatSeries.from_rows([[s("1+t")]])
        tau_m = MatSeries.from_rows([[s("1+u*t")]])
        with pytest.raises(PreconditionViolated):
            phitau.make_module(frob, tau_m, 12)


class TestCocycle:
    @pytest.mark.parametrize("c", [1, 2, 3, 5, -1])
    def test_generated_modules(self, mod_d2, c):
        ok, _ = phitau.cocycle_check(mod_d2, galois.tau(c))
        assert ok

    def test_mat_of_additivity(self, mod_d2):
        # Mat(tau^5) = Mat(tau^2) * tau^2(Mat(tau^3))
        m2 = phitau.mat_of(mod_d2, galois.tau(2))
        m3 = phitau.mat_of(mod_d2, galois.tau(3))
        lhs = phitau.mat_of(mod_d2, galois.tau(5))
        rhs = m2 * m3.act(galois.tau(2))
        assert (lhs - rhs).truncate(mod_d2.prec).is_zero()

    def test_gamma_acts_trivially(self, mod_d2):
        g = galois.GroupElem(2, 4)
        assert phitau.mat_of(mod_d2, g) == phitau.mat_of(mod_d2, galois.tau(2))


class TestTwist:
    def test_makes_integral(self):
        mod = one_by_one(s("t^{-1}+1"), 24)
        assert phitau.mat_val(mod.frob) < 0
        tw = phitau.integral_twist(mod)
        assert phitau.mat_val(tw.frob) >= 0
        ok, _ = phitau.cocycle_check(tw, galois.tau(1))
        assert ok

    def test_noop_when_integral(self, mod_1pt):
        assert phitau.integral_twist(mod_1pt) is mod_1pt


class TestDescent:
    def test_closed_form(self, mod_1pt):
        rep = phitau.descend_fixed_point(mod_1pt, galois.tau(1), 1, 12)
        want = ring.u_var(P) * ring.invert(s("1+t"), 12)
        assert ring.eq_to_prec(rep.h.rows[0][0], want.truncate(12))
        assert phitau.descent_matches_direct(mod_1pt, galois.tau(1), rep, 12)

    def test_gain_per_step(self, mod_d2):
        mod = phitau.integral_twist(mod_d2)
        r = phitau.minimal_descent_radius(mod)
        level = phitau.minimal_descent_level(mod, r)
        rep = phitau.descend_fixed_point(mod, galois.tau(P**level), r, 10)
        pairs = zip(rep.residual_history, rep.residual_history[1:])
        assert all(b - a >= rep.q_val for a, b in pairs if a is not None and b is not None)

    def test_rejects_small_radius(self, mod_1pt):
        with pytest.raises(PreconditionViolated):
            phitau.descend_fixed_point(mod_1pt, galois.tau(1), 0, 8)

    def test_rejects_low_level(self):
        mod = one_by_one(s("t^{2}+t^{3}"), 24)
        r = phitau.minimal_descent_radius(mod)
        assert r > 1
        with pytest.raises(PreconditionViolated):
            phitau.descend_fixed_point(mod, galois.tau(1), r, 8)


class TestValuations:
    def test_gap_bound_attained(self):
        mod = one_by_one(s("t^{-2}"), 24)
        best, bound = phitau.equiv_constant(mod)
        assert best == bound == 2

    def test_trivial_lattice_no_gap(self, mod_1pt):
        coords = (s("t+u"),)
        vt = phitau.v_tau(coords)
        vtd = phitau.v_tilde(mod_1pt, coords)
        assert vt == 1
        assert abs(vt - vtd) <= phitau.equiv_constant(mod_1pt)[1]

    def test_lattice_valuation_invariant(self, mod_d2):
        coords = (s("t"), s("u*t^{2}"))
        vtd = phitau.v_tilde(mod_d2, coords)
        moved = phitau.module_act(mod_d2, galois.tau(2), coords)
        assert phitau.v_tilde(mod_d2, moved) == vtd


class TestFileFormat:
    def test_roundtrip(self, mod_d2):
        text = phitau.module_to_text(mod_d2)
        back = phitau.module_from_text(text)
        assert back.frob == mod_d2.frob
        assert back.mat_tau == mod_d2.mat_tau
        assert back.lattice == mod_d2.lattice

    def test_header_required(self):
        with pytest.raises(ParseError):
            phitau.module_from_text("p=3 d=1 prec=12\n[P]\n1\n[tau]\n1\n")

    def test_truncated_matrix(self):
        with pytest.raises(ParseError):
            phitau.module_from_text("p=3 d=2 prec=12 cap=6\n[P]\n1\n")

    def test_sections_in_order(self):
        with pytest.raises(ParseError):
            phitau.module_from_text("p=3 d=1 prec=12 cap=6\n[tau]\n1\n[P]\n1\n")
