"""Super-Hölder membership certification and exponent estimation.

A vector x passes at level family (k) with parameters (p^lambda, mu) when
val((g-1)x) >= p^lambda * p^i + mu for every tested g in the i-th level
subgroup.  Exponents p^lambda are carried as exact values q * p^s with
rational q and s, so that even irrational targets like p^(c_p + 1/2)
compare exactly against rational valuations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import galois, ring
from .errors import DegenerateOrbit, PrecisionRequired
from .galois import GroupElem
from .ring import PerfSeries


@dataclass(frozen=True)
class PPow:
    """The exact positive real q * p^s with q, s rational, q > 0."""

    q: Fraction
    s: Fraction = Fraction(0)

    @staticmethod
    def rational(q) -> "PPow":
        return PPow(Fraction(q), Fraction(0))

    def shift(self, i) -> "PPow":
        """Multiply by p^i."""
        return PPow(self.q, self.s + i)

    def cmp(self, v, p: int) -> int:
        """Sign of (q * p^s) - v for a rational v."""
        v = Fraction(v)
        if v <= 0:
            return 1
        a, b = self.s.numerator, self.s.denominator
        lhs = self.q**b * (Fraction(p) ** a)
        rhs = v**b
        return (lhs > rhs) - (lhs < rhs)

    def value_float(self, p: int) -> float:
        return float(self.q) * p ** float(self.s)


def c_p_power(p: int) -> Fraction:
    """p^{c_p} = p/(p-1)."""
    return Fraction(p, p - 1)


class FamilyKind(enum.Enum):
    TAU = "tau"
    GAMMA = "gamma"


@dataclass(frozen=True)
class SubgroupFamily:
    """Test-element family at base level k: level-i elements are
    tau^(m p^(k+i)) resp. gamma_(1 + m p^(k+i)) with p coprime to m."""

    kind: FamilyKind
    k: int = 0

    def __post_init__(self):
        if self.kind is FamilyKind.GAMMA and self.k < 1:
            # the gamma subgroup is 1 + p Z_p: 1 + m p^0 need not be a unit
            raise ValueError("gamma families start at base level k >= 1")
        if self.k < 0:
            raise ValueError("base level must be >= 0")

    def element(self, i: int, m: int, p: int) -> GroupElem:
        if m % p == 0:
            raise ValueError("sample multiplier must be coprime to p")
        step = m * p ** (self.k + i)
        if self.kind is FamilyKind.TAU:
            return galois.tau(step)
        return galois.gamma(1 + step)


def default_samples(p: int):
    return tuple(range(1, p))


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LevelMargin:
    i: int
    observed: Fraction | None  # None: difference vanished to precision
    observed_floor: Fraction | None  # certified lower bound when observed is None
    bound: PPow  # p^lambda * p^i
    mu: Fraction


@dataclass(frozen=True)
class ShVerdict:
    status: Status
    margins: tuple[LevelMargin, ...]
    witness: tuple[int, GroupElem] | None = None

    def __bool__(self):
        return self.status is Status.PASS


def _orbit_floor(x: PerfSeries, g: GroupElem, prec=None):
    """(exact val, certified floor) of (g-1)x."""
    d = galois.act(g, x, prec) - x.truncate(ring.min_prec(x.prec, prec))
    return d.val(), d.val_floor()


def sh_test(
    x: PerfSeries,
    fam: SubgroupFamily,
    plam: PPow | Fraction,
    mu,
    i_max: int,
    m_samples=None,
) -> ShVerdict:
    """Check val((g-1)x) >= p^lambda p^i + mu on sampled level elements.

    Pass requires every bound to hold with the bound strictly below the
    available precision; a bound at or beyond precision yields
    Inconclusive rather than an unsound Pass.
    """
    if not isinstance(plam, PPow):
        plam = PPow.rational(plam)
    mu = Fraction(mu)
    p = x.p
    if m_samples is None:
        m_samples = default_samples(p)
    if not m_samples:
        raise ValueError("m_samples must be nonempty")
    margins = []
    witness = None
    inconclusive = False
    for i in range(i_max + 1):
        bound_i = plam.shift(i)
        level_min = None
        level_floor = None
        for m in m_samples:
            g = fam.element(i, m, p)
            v, floor = _orbit_floor(x, g)
            if v is None:
                # difference vanished; is the bound inside certified range?
                if floor is not None and bound_i.cmp(floor - mu, p) >= 0:
                    inconclusive = True
                level_floor = floor if level_floor is None else min(level_floor, floor)
                continue
            level_min = v if level_min is None else min(level_min, v)
            prec_d = floor  # exact val; still need headroom vs difference prec
            if bound_i.cmp(v - mu, p) > 0 and witness is None:
                witness = (i, g)
        if level_min is not None:
            margins.append(LevelMargin(i, level_min, level_min, bound_i, mu))
        else:
            margins.append(LevelMargin(i, None, level_floor, bound_i, mu))
    margins = tuple(margins)
    if witness is not None:
        return ShVerdict(Status.FAIL, margins, witness)
    if inconclusive:
        return ShVerdict(Status.INCONCLUSIVE, margins)
    return ShVerdict(Status.PASS, margins)


@dataclass(frozen=True)
class ShEstimate:
    plam_hat: Fraction
    mu_hat: Fraction
    consistent: bool
    levels: tuple[Fraction, ...]


def _level_minima(x, fam, i_max, m_samples=None, prec=None):
    p = x.p
    if m_samples is None:
        m_samples = default_samples(p)
    vs = []
    for i in range(i_max + 1):
        level_min = None
        vanished_floor = None
        for m in m_samples:
            g = fam.element(i, m, p)
            v, floor = _orbit_floor(x, g, prec)
            if v is None:
                vanished_floor = floor
                continue
            level_min = v if level_min is None else min(level_min, v)
        vs.append((level_min, vanished_floor))
    return vs


def sh_estimate(x: PerfSeries, fam: SubgroupFamily, i_max: int, m_samples=None) -> ShEstimate:
    """Fit (p^lambda, mu) from measured margins: consecutive level minima
    satisfy v_{i+1} - v_i = p^lambda p^i (p-1) for a true exponent."""
    if i_max < 2:
        raise ValueError("need i_max >= 2 to fit an exponent")
    p = x.p
    vs = _level_minima(x, fam, i_max, m_samples)
    if all(v is None for v, _ in vs):
        raise DegenerateOrbit("x is fixed to precision by all sampled elements")
    if any(v is None for v, _ in vs):
        raise PrecisionRequired("some level differences vanished to precision")
    levels = tuple(v for v, _ in vs)
    cands = [
        Fraction(levels[i + 1] - levels[i], p**i * (p - 1)) for i in range(i_max)
    ]
    plam_hat = cands[0]
    consistent = all(c == plam_hat for c in cands)
    mu_hat = levels[0] - plam_hat
    return ShEstimate(plam_hat, mu_hat, consistent, levels)


@dataclass(frozen=True)
class WitnessReport:
    refuted: bool
    levels: tuple[Fraction, ...]
    plam: PPow
    first_decrease: int | None

    def __bool__(self):
        return self.refuted


def nonmembership_witness(
    x: PerfSeries, fam: SubgroupFamily, plam: PPow | Fraction, i_max: int, m_samples=None
) -> WitnessReport:
    """Refute membership at exponent p^lambda by exhibiting margins
    m_i = v_i - p^lambda p^i that decrease strictly and at a worsening
    rate over the horizon, so that no mu can exist.

    Margin monotonicity is decided exactly: m_{i+1} < m_i is the rational
    comparison v_{i+1} - v_i < p^lambda p^i (p-1).
    """
    if not isinstance(plam, PPow):
        plam = PPow.rational(plam)
    p = x.p
    vs = _level_minima(x, fam, i_max, m_samples)
    if any(v is None for v, _ in vs):
        # fixed (or beyond precision) points cannot be refuted this way
        levels = tuple(v for v, _ in vs if v is not None)
        return WitnessReport(False, levels, plam, None)
    levels = tuple(v for v, _ in vs)
    first_decrease = None
    strictly_decreasing = True
    for i in range(i_max):
        # m_{i+1} < m_i  <=>  bound growth exceeds margin growth
        growth = levels[i + 1] - levels[i]
        step = PPow(plam.q * (p - 1), plam.s + i)
        if step.cmp(growth, p) > 0:
            if first_decrease is None:
                first_decrease = i
        else:
            strictly_decreasing = False
    worsening = True
    for i in range(i_max - 1):
        # d_{i+1} <= d_i  <=>  second difference of v below bound's second difference
        second = levels[i + 2] - 2 * levels[i + 1] + levels[i]
        step2 = PPow(plam.q * (p - 1) ** 2, plam.s + i)
        if step2.cmp(second, p) < 0:
            worsening = False
    refuted = strictly_decreasing and worsening and first_decrease == 0
    return WitnessReport(refuted, levels, plam, first_decrease)


def deperfection_level(x: PerfSeries) -> int | None:
    """Least n with phi^n(x) in kappa((t)), i.e. x in phi^{-n} of the
    integer-exponent pure-t subring; None when no such n <= cap exists."""
    for m, _ in x.terms:
        if not m.eu.is_zero():
            return None
    level = 0
    for m, _ in x.terms:
        level = max(level, m.et.kden)
    if level > x.cap:
        return None
    return level


@dataclass(frozen=True)
class GammaFixedReport:
    fixed: bool
    structural: bool  # no monomial involves u at all
    witness: int | None = None  # failing sample a

    def __bool__(self):
        return self.fixed


def gamma_fixed_test(x: PerfSeries, a_samples, prec) -> GammaFixedReport:
    """Check (gamma_a - 1)x vanishes below prec for all sampled a."""
    structural = all(m.eu.is_zero() for m, _ in x.terms)
    prec = Fraction(prec)
    for a in a_samples:
        d = galois.act(galois.gamma(a), x, prec) - x.truncate(prec)
        floor = d.val_floor()
        if floor is not None and floor >= prec:
            continue
        if not d.is_zero():
            return GammaFixedReport(False, structural, a)
    return GammaFixedReport(True, structural)
