"""The semidirect group acting on perfected series.

A group element tau^c gamma_a acts through

    gamma_a : u^(1/p^k) |-> (1 + u^(1/p^k))^a - 1,     t fixed,
    tau^c   : t^r       |-> (1+u)^(c*r) * t^r,         u fixed,

with gamma applied first.  The group law is (c1,a1)*(c2,a2) =
(c1 + a1*c2, a1*a2), realizing gamma_a tau gamma_a^{-1} = tau^a.

Elements produced by `inverse` are only known modulo p^N; the action
checks per call that N is large enough for the requested precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ring
from .errors import InsufficientGroupAccuracy, PrecisionRequired
from .ring import Monomial, PerfSeries, PExp, min_prec

# (1 + x)^m has at most m+1 terms; refuse to expand huge exact powers.
_EXACT_POWER_LIMIT = 100_000


@dataclass(frozen=True)
class GroupElem:
    """The operator tau^c o gamma_a (gamma applied first).

    ``nacc`` records that (c, a) are only accurate modulo p^nacc, which
    happens after inverting the gamma component; None means exact.
    """

    c: int
    a: int
    nacc: int | None = None


def tau(c: int = 1) -> GroupElem:
    return GroupElem(c, 1)


def gamma(a: int) -> GroupElem:
    return GroupElem(0, a)


IDENTITY = GroupElem(0, 1)


def compose(g: GroupElem, h: GroupElem) -> GroupElem:
    nacc = g.nacc if h.nacc is None else (h.nacc if g.nacc is None else min(g.nacc, h.nacc))
    return GroupElem(g.c + g.a * h.c, g.a * h.a, nacc)


def inverse(g: GroupElem, p: int, nacc: int = 24) -> GroupElem:
    """(c,a)^{-1} = (-a^{-1} c, a^{-1}) with a^{-1} taken modulo p^nacc."""
    if g.a % p == 0:
        raise ValueError("gamma component must be a unit")
    if g.a in (1, -1) and g.nacc is None:
        return GroupElem(-g.a * g.c, g.a, None)
    mod = p**nacc
    ainv = pow(g.a, -1, mod)
    c = (-ainv * g.c) % mod
    new_nacc = nacc if g.nacc is None else min(nacc, g.nacc)
    return GroupElem(c, ainv, new_nacc)


def _binom_mod(m: int, j: int, p: int) -> int:
    """C(m, j) mod p by Lucas' theorem (m, j >= 0)."""
    result = 1
    while j:
        mi, m = m % p, m // p
        ji, j = j % p, j // p
        if ji > mi:
            return 0
        num = den = 1
        for s in range(ji):
            num = num * (mi - s) % p
            den = den * (s + 1) % p
        result = result * num * pow(den, -1, p) % p
    return result


def eps_pow(r, p: int, cap: int = ring.DEFAULT_DENOM_CAP, prec=None) -> PerfSeries:
    """(1+u)^r for r in Z[1/p], computed as (1 + u^(1/p^k))^m for r = m/p^k.

    Negative m goes through geometric-series inversion and requires a
    finite precision cap.
    """
    r = Fraction(r)
    e = PExp.from_fraction(r, p, cap)
    m, k = e.num, e.kden
    if prec is not None:
        prec = Fraction(prec)
    v_mono = Monomial(PExp(1, k), ring.PEXP_ZERO)
    v_val = Fraction(p, p - 1) / p**k
    if m < 0:
        if prec is None:
            raise PrecisionRequired("eps_pow with negative exponent needs a cap")
        base = eps_pow(Fraction(-m, p**k), p, cap, prec)
        return ring.invert(base, prec)
    if prec is None and m > _EXACT_POWER_LIMIT:
        raise PrecisionRequired(f"exact expansion of (1+u)^{m} is too large")
    acc = {}
    j = 0
    while j <= m and (prec is None or j * v_val < prec):
        c = _binom_mod(m, j, p)
        if c:
            mono = Monomial(PExp.from_fraction(Fraction(j, p**k), p, cap), ring.PEXP_ZERO)
            acc[mono] = c
        j += 1
    return ring.make_series(p, cap, acc, prec)


def eps_val_formula(m: int, p: int) -> Fraction:
    """Valuation of eps^m - 1: p^{v_p(m)} * p/(p-1), for m != 0."""
    if m == 0:
        raise ValueError("m must be nonzero")
    vp = 0
    m = abs(m)
    while m % p == 0:
        m //= p
        vp += 1
    return Fraction(p, p - 1) * p**vp


def required_accuracy(x: PerfSeries, eff) -> int | None:
    """Minimal N so that elements known mod p^N act correctly on x up to
    precision eff.  Perturbing an exponent by p^N changes the action by
    terms of valuation >= p^(N-k) * p/(p-1) with k the deepest
    denominator in x; None means no finite N suffices (exact x)."""
    if eff is None:
        return None
    kmax = 0
    for m, _ in x.terms:
        kmax = max(kmax, m.eu.kden, m.et.kden)
    p = x.p
    need = 0
    while Fraction(p, p - 1) * Fraction(p**need, p**kmax) < eff:
        need += 1
    return need


def _check_accuracy(g: GroupElem, x: PerfSeries, eff):
    if g.nacc is None:
        return
    need = required_accuracy(x, eff)
    if need is None:
        raise InsufficientGroupAccuracy(
            "an approximate group element cannot act on an exact series "
            "without a finite precision cap"
        )
    if g.nacc < need:
        raise InsufficientGroupAccuracy(
            f"element known mod p^{g.nacc}, but p^{need} required for this precision"
        )


def _apply_gamma(a: int, x: PerfSeries, eff) -> PerfSeries:
    p, cap = x.p, x.cap
    out = ring.zero(p, cap, eff)
    for m, c in x.terms:
        if m.eu.is_zero():
            out = out + ring.make_series(p, cap, {m: c}, eff)
            continue
        mm, k = m.eu.num, m.eu.kden
        et_val = m.et.fraction(p)
        target = None if eff is None else eff - et_val
        w = eps_pow(Fraction(a, p**k), p, cap, target) - ring.one(p, cap).truncate(target)
        if mm >= 0:
            f = w**mm
        else:
            f = ring.invert(w ** (-mm), target)
        image = f.mono_shift(Monomial(ring.PEXP_ZERO, m.et), c)
        out = out + image.truncate(eff)
    return out


def _apply_tau(c: int, x: PerfSeries, eff) -> PerfSeries:
    p, cap = x.p, x.cap
    out = ring.zero(p, cap, eff)
    for m, co in x.terms:
        if m.et.is_zero():
            out = out + ring.make_series(p, cap, {m: co}, eff)
            continue
        mm, k = m.et.num, m.et.kden
        target = None if eff is None else eff - ring.mono_val(m, p)
        factor = eps_pow(Fraction(c * mm, p**k), p, cap, target)
        out = out + factor.mono_shift(m, co).truncate(eff)
    return out


def act(g: GroupElem, x: PerfSeries, prec=None) -> PerfSeries:
    """Apply the operator tau^c o gamma_a to a series.

    The result carries precision min(prec(x), prec); an exact input with
    only finite expansions yields an exact output.
    """
    eff = min_prec(x.prec, None if prec is None else Fraction(prec))
    _check_accuracy(g, x, eff)
    y = x.truncate(eff)
    if g.a % x.p == 0:
        raise ValueError("gamma component must be a unit")
    if g.a != 1:
        y = _apply_gamma(g.a, y, eff)
    if g.c != 0:
        y = _apply_tau(g.c, y, eff)
    return y
