"""Exact arithmetic for perfected bivariate series in characteristic p,
the semidirect Galois action on them, super-Hölder continuity bounds,
(phi,tau)-module cocycles with fixed-point descent, and Newton polygons
of Kummer tower steps.
"""

from .errors import (
    CapExceeded,
    DegenerateOrbit,
    InsufficientGroupAccuracy,
    NonConvergence,
    NonDominantLeading,
    ParseError,
    PrecisionRequired,
    PreconditionViolated,
    TiltedError,
    ZeroDivisor,
)
from .galois import GroupElem, act, compose, eps_pow, gamma, inverse, tau
from .holder import (
    FamilyKind,
    PPow,
    ShEstimate,
    ShVerdict,
    Status,
    SubgroupFamily,
    deperfection_level,
    nonmembership_witness,
    sh_estimate,
    sh_test,
)
from .newton import (
    NewtonPolygon,
    NPPoint,
    Segment,
    kummer_step_valuations,
    lower_hull,
    ramification_break,
    verify_elementary,
)
from .phitau import (
    DescentReport,
    MatSeries,
    PhiTauModule,
    basechange_from_matrix,
    basechange_generate,
    cocycle_check,
    descend_fixed_point,
    equiv_constant,
    integral_twist,
    mat_of,
    module_from_text,
    module_to_text,
    v_tau,
    v_tilde,
)
from .ring import (
    Monomial,
    PerfSeries,
    PExp,
    format_series,
    frobenius,
    frobenius_inv,
    invert,
    make_series,
    monomial,
    one,
    parse_series,
    t_var,
    u_var,
    zero,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DegenerateOrbit",
    "DescentReport",
    "FamilyKind",
    "GroupElem",
    "InsufficientGroupAccuracy",
    "MatSeries",
    "Monomial",
    "NPPoint",
    "NewtonPolygon",
    "NonConvergence",
    "NonDominantLeading",
    "PExp",
    "PPow",
    "ParseError",
    "PerfSeries",
    "PhiTauModule",
    "PrecisionRequired",
    "PreconditionViolated",
    "Segment",
    "ShEstimate",
    "ShVerdict",
    "Status",
    "SubgroupFamily",
    "TiltedError",
    "ZeroDivisor",
    "act",
    "basechange_from_matrix",
    "basechange_generate",
    "cocycle_check",
    "compose",
    "deperfection_level",
    "descend_fixed_point",
    "eps_pow",
    "equiv_constant",
    "format_series",
    "frobenius",
    "frobenius_inv",
    "gamma",
    "integral_twist",
    "inverse",
    "invert",
    "kummer_step_valuations",
    "lower_hull",
    "make_series",
    "mat_of",
    "module_from_text",
    "module_to_text",
    "monomial",
    "nonmembership_witness",
    "one",
    "parse_series",
    "ramification_break",
    "sh_estimate",
    "sh_test",
    "t_var",
    "tau",
    "u_var",
    "v_tau",
    "v_tilde",
    "verify_elementary",
    "zero",
]
