"""Two-dimensional Lubin-Tate formal groups over Z_p.

Exact construction of the closed-form logarithm, the group law and its
endomorphisms, Newton copolygons of two-variable p-adic series, and the
valuations of torsion points with their ramification consequences.
"""

from .padics import (
    DEFAULT_PRECISION,
    Padic,
    PrecisionError,
    UnramifiedRing,
    int_valuation,
    is_prime,
    minimal_irreducible,
    teichmuller,
)
from .series import (
    Series,
    SeriesPair,
    compose,
    dump_sections,
    grlex,
    invert_pair,
    parse_sections,
)
from .lubintate import (
    HeightPair,
    LubinTateGroup,
    build_group,
    build_logarithm,
    cauchy_gap,
    congruence_report,
    gamma_endomorphism,
    group_axioms_report,
    group_from_text,
    group_to_text,
    height_of,
    is_endomorphism,
    multiplication,
    recursion_defects,
    verify_p_congruences,
)
from .copolygon import (
    Copolygon,
    SvgOptions,
    TieSegment,
    emit_svg,
    evaluate_series,
    fraction_str,
    intersect_tie_loci,
    lower_bound_check,
    parse_fraction,
    parse_support_text,
    support_text,
)
from .torsion import (
    AmbiguousBranchError,
    ValuationProfile,
    count_p_torsion,
    dynamical_system,
    gcd_lemma,
    gcd_lemma_raw,
    hypothesis_status,
    p_torsion_report,
    profile_report,
    ramification_csv,
    ramification_report,
    torsion_valuations,
    torsion_valuations_via_minplus,
)
from .fixtures import (
    FIXTURE_NAMES,
    frobenius_profile,
    load_fixture,
    stored_mult45,
    worked_copolygon_series,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRECISION",
    "Padic",
    "PrecisionError",
    "UnramifiedRing",
    "int_valuation",
    "is_prime",
    "minimal_irreducible",
    "teichmuller",
    "Series",
    "SeriesPair",
    "compose",
    "dump_sections",
    "grlex",
    "invert_pair",
    "parse_sections",
    "HeightPair",
    "LubinTateGroup",
    "build_group",
    "build_logarithm",
    "cauchy_gap",
    "congruence_report",
    "gamma_endomorphism",
    "group_axioms_report",
    "group_from_text",
    "group_to_text",
    "height_of",
    "is_endomorphism",
    "multiplication",
    "recursion_defects",
    "verify_p_congruences",
    "Copolygon",
    "SvgOptions",
    "TieSegment",
    "emit_svg",
    "evaluate_series",
    "fraction_str",
    "intersect_tie_loci",
    "lower_bound_check",
    "parse_fraction",
    "parse_support_text",
    "support_text",
    "AmbiguousBranchError",
    "ValuationProfile",
    "count_p_torsion",
    "dynamical_system",
    "gcd_lemma",
    "gcd_lemma_raw",
    "hypothesis_status",
    "p_torsion_report",
    "profile_report",
    "ramification_csv",
    "ramification_report",
    "torsion_valuations",
    "torsion_valuations_via_minplus",
    "FIXTURE_NAMES",
    "frobenius_profile",
    "load_fixture",
    "stored_mult45",
    "worked_copolygon_series",
    "__version__",
]
