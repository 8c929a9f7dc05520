"""Certifying and refuting orbit continuity bounds.

A vector x satisfies the bound (p^lambda, mu) for the tau-side level
family when val((g-1)x) >= p^lambda p^i + mu for all g at level i.
Margins are exact rationals, and exponents are carried as exact values
q * p^s so that even irrational targets compare exactly.
"""

from fractions import Fraction

from tilted import (
    FamilyKind,
    PPow,
    SubgroupFamily,
    deperfection_level,
    nonmembership_witness,
    ring,
    sh_estimate,
    sh_test,
)

p = 3
fam = SubgroupFamily(FamilyKind.TAU, 0)
t = ring.t_var(p)
cp = Fraction(p, p - 1)  # p^(c_p): the valuation of u, as an exact rational

# t satisfies the bound (p^(c_p), 1) with margins exactly on a line.
verdict = sh_test(t, fam, cp, 1, i_max=3)
print("t at (p^c_p, 1):", verdict.status.value)
for lm in verdict.margins:
    print(f"  level {lm.i}: observed {lm.observed}")

# Fitting the exponent from measured level minima recovers it.
est = sh_estimate(t, fam, i_max=3)
print("fitted exponent:", est.plam_hat, " offset:", est.mu_hat, " consistent:", est.consistent)

# Dividing the exponent of t by p divides the fitted exponent by p;
# this is how deperfection levels show up quantitatively.
t19 = ring.monomial(p, 6, 1, 0, Fraction(1, 9))
print("fitted exponent of t^(1/9):", sh_estimate(t19, fam, i_max=3).plam_hat)
print("deperfection level of t^(1/9):", deperfection_level(t19))

# Strictness: at the irrational exponent p^(c_p + 1/2) the margins of t
# decrease strictly and at a worsening rate, so no offset mu can exist.
too_big = PPow(cp, Fraction(1, 2))
rep = nonmembership_witness(t, fam, too_big, i_max=5)
print("refuted at p^(c_p + 1/2):", rep.refuted, " level minima:", list(rep.levels))

# The honest exponent is not refuted.
print("refuted at p^(c_p):", nonmembership_witness(t, fam, cp, i_max=5).refuted)
