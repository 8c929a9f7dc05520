from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilted import holder, ring
from tilted.errors import DegenerateOrbit
from tilted.holder import FamilyKind, PPow, Status, SubgroupFamily

P = 3
CAP = 6


def s(text):
    return ring.parse_series(text, P, CAP)


TAU0 = SubgroupFamily(FamilyKind.TAU, 0)
CP = Fraction(P, P - 1)


class TestPPow:
    def test_rational_compare(self):
        b = PPow.rational(Fraction(3, 2))
        assert b.cmp(1, P) > 0
        assert b.cmp(Fraction(3, 2), P) == 0
        assert b.cmp(2, P) < 0

    def test_irrational_compare(self):
        # 3/2 * 3^(1/2) = sqrt(27)/2 ~ 2.598
        b = PPow(Fraction(3, 2), Fraction(1, 2))
        assert b.cmp(Fraction(5, 2), P) > 0
        assert b.cmp(Fraction(13, 5), P) < 0

    def test_shift(self):
        b = PPow.rational(2).shift(3)
        assert b.cmp(54, P) == 0

    def test_nonpositive_values(self):
        assert PPow.rational(1).cmp(-1, P) > 0
        assert PPow.rational(1).cmp(0, P) > 0


@settings(max_examples=60, deadline=None)
@given(
    st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=30),
    st.fractions(min_value=-2, max_value=2, max_denominator=12),
    st.fractions(min_value=Fraction(1, 50), max_value=100, max_denominator=50),
)
def test_ppow_cmp_matches_float(q, sexp, v):
    b = PPow(q, sexp)
    approx = b.value_float(P) - float(v)
    if abs(approx) > 1e-6:
        assert b.cmp(v, P) == (1 if approx > 0 else -1)


class TestShTest:
    def test_t_passes_with_exact_margins(self):
        verdict = holder.sh_test(s("t"), TAU0, CP, 1, i_max=3)
        assert verdict.status is Status.PASS
        for lm in verdict.margins:
            assert lm.observed == CP * P**lm.i + 1

    def test_fail_produces_witness(self):
        verdict = holder.sh_test(s("t"), TAU0, CP, 2, i_max=3)
        assert verdict.status is Status.FAIL
        i, g = verdict.witness
        assert i == 0 and g.c == 1

    def test_inconclusive_beyond_precision(self):
        verdict = holder.sh_test(s("t+O(3)"), TAU0, CP, 1, i_max=3)
        assert verdict.status is Status.INCONCLUSIVE

    def test_gamma_family(self):
        fam = SubgroupFamily(FamilyKind.GAMMA, 1)
        verdict = holder.sh_test(s("u"), fam, CP * P, 0, 3)
        assert verdict.status is Status.PASS

    def test_gamma_family_needs_unit_levels(self):
        with pytest.raises(ValueError):
            SubgroupFamily(FamilyKind.GAMMA, 0)

    def test_rejects_bad_samples(self):
        with pytest.raises(ValueError):
            holder.sh_test(s("t"), TAU0, CP, 1, 2, m_samples=[3])


class TestShEstimate:
    def test_fits_t(self):
        est = holder.sh_estimate(s("t"), TAU0, i_max=3)
        assert (est.plam_hat, est.mu_hat, est.consistent) == (CP, 1, True)

    def test_deep_root_scales_down(self):
        x = ring.monomial(P, CAP, 1, 0, Fraction(1, 9))
        est = holder.sh_estimate(x, TAU0, i_max=3)
        assert est.plam_hat == CP / 9
        assert est.consistent

    def test_base_level_scales_up(self):
        est = holder.sh_estimate(s("t"), SubgroupFamily(FamilyKind.TAU, 1), i_max=2)
        assert est.plam_hat == CP * P

    def test_degenerate_orbit(self):
        with pytest.raises(DegenerateOrbit):
            holder.sh_estimate(s("u"), TAU0, i_max=2)


class TestNonmembership:
    def test_refutes_above_true_exponent(self):
        plam = PPow(CP, Fraction(1, 2))
        rep = holder.nonmembership_witness(s("t"), TAU0, plam, i_max=5)
        assert rep.refuted
        assert rep.first_decrease == 0

    def test_accepts_true_exponent(self):
        rep = holder.nonmembership_witness(s("t"), TAU0, CP, i_max=5)
        assert not rep.refuted

    def test_fixed_vector_not_refutable(self):
        rep = holder.nonmembership_witness(s("u"), TAU0, PPow(CP, 1), i_max=3)
        assert not rep.refuted


class TestDeperfection:
    @pytest.mark.parametrize(
        "text,level",
        [("t", 0), ("1+2*t^{4}", 0), ("t^{1/3}", 1), ("t^{2}+t^{5/9}", 2)],
    )
    def test_levels(self, text, level):
        assert holder.deperfection_level(s(text)) == level

    def test_u_blocks(self):
        assert holder.deperfection_level(s("u+t")) is None


class TestGammaFixed:
    def test_pure_t_is_fixed(self):
        rep = holder.gamma_fixed_test(s("t^{2}+2*t^{1/3}"), (4, 7), 12)
        assert rep.fixed and rep.structural

    def test_u_moves(self):
        rep = holder.gamma_fixed_test(s("u"), (4, 7), 12)
        assert not rep.fixed
        assert rep.witness == 4
