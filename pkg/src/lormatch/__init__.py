"""Exact arithmetic for matching statistics, induced polynomials,
polymatroids, and Lorentzian certification."""

from .lorentzian import (
    CertFailure,
    Inertia,
    LorentzReport,
    certify_lorentzian,
    is_m_convex,
    quad_inertia,
    symmetric_inertia,
)
from .matchings import (
    MatchWitness,
    SubsetSeq,
    admits_matching,
    admits_restricted,
    caps_from_json,
    compose_seq,
    find_witness,
    matched_degrees,
)
from .matchstats import (
    StatTable,
    basis_match_count,
    basis_match_poly,
    match_count,
    match_poly,
    stat_table,
)
from .operators import (
    FloatOperatorBox,
    OperatorBox,
    apply_inducing,
    apply_substitution,
    augment_with_singletons,
    box_from_symbol,
    inducing_box,
    power_box,
    substitution_box,
    symbol_of,
    tab_family_box,
)
from .polymatroids import (
    AxiomViolation,
    InternalCheckError,
    LinReal,
    Matroid,
    Polymatroid,
    base_egf,
    base_points,
    direct_sum,
    free_polymatroid,
    hall_rado_member,
    in_base_polytope,
    induce_matroid,
    induce_polymatroid,
    linreal_induce,
    linreal_rank,
    matroid_bases,
    support_polymatroid,
    uniform_matroid,
    validate_polymatroid,
)
from .polynomials import ANY_DEGREE, FloatPoly, Poly, elementary_symmetric
from .verification import (
    CHECKS,
    CheckResult,
    TrialConfig,
    replay,
    run_all,
    run_check,
)

__version__ = "0.1.0"

__all__ = [
    "ANY_DEGREE",
    "AxiomViolation",
    "CHECKS",
    "CertFailure",
    "CheckResult",
    "FloatOperatorBox",
    "FloatPoly",
    "Inertia",
    "InternalCheckError",
    "LinReal",
    "LorentzReport",
    "MatchWitness",
    "Matroid",
    "OperatorBox",
    "Poly",
    "Polymatroid",
    "StatTable",
    "SubsetSeq",
    "TrialConfig",
    "admits_matching",
    "admits_restricted",
    "apply_inducing",
    "apply_substitution",
    "augment_with_singletons",
    "base_egf",
    "base_points",
    "basis_match_count",
    "basis_match_poly",
    "box_from_symbol",
    "caps_from_json",
    "certify_lorentzian",
    "compose_seq",
    "direct_sum",
    "elementary_symmetric",
    "find_witness",
    "free_polymatroid",
    "hall_rado_member",
    "in_base_polytope",
    "induce_matroid",
    "induce_polymatroid",
    "inducing_box",
    "is_m_convex",
    "linreal_induce",
    "linreal_rank",
    "match_count",
    "match_poly",
    "matched_degrees",
    "matroid_bases",
    "power_box",
    "quad_inertia",
    "replay",
    "run_all",
    "run_check",
    "stat_table",
    "substitution_box",
    "support_polymatroid",
    "symbol_of",
    "symmetric_inertia",
    "tab_family_box",
    "uniform_matroid",
    "validate_polymatroid",
]
