"""Symbolic mod-l Steenrod operation calculus on finitely presented
graded-commutative rings, with twist bookkeeping, characteristic classes,
and algebraicity obstruction tests."""

from .errors import (
    DslSyntaxError,
    DuplicateGenerator,
    InternalNonTermination,
    MissingActionComponent,
    MissingCodim,
    MissingFrobeniusData,
    MixedPrimes,
    NonHomogeneous,
    NonHomogeneousInput,
    NotAdmissible,
    NotProjectiveBundleScenario,
    OmegaUndeclared,
    RuleNonTermination,
    ScenarioIncomplete,
    SteencalcError,
    UnknownGenerator,
)
from .steenrod import (
    SteenrodElement,
    SteenrodMonomial,
    admissible_monomials,
    binom_mod_ell,
    parse_operation,
    render_operation,
)
from .rings import (
    GeneratorSpec,
    RewriteRule,
    RingElement,
    RingPresentation,
    TwistedClass,
)
from .charclasses import (
    TotalClass,
    VirtualBundle,
    normal_bundle_total,
    projective_pushforward,
    total_operation_class,
    twisted_total_on_cycle,
    verify_relative_wu_projective,
    verify_wet_chow,
    w_bro,
    w_et,
)
from .obstructions import (
    FrobeniusContext,
    HsInput,
    ObstructionReport,
    frobenius_eigenvalue,
    hs_scripted_check,
    in_image_F_minus_Id,
    odd_vanishing_check,
    weird_operator,
)
from .corpus import Scenario, get_scenario, model_ring, run_scenario, scenario_names

__version__ = "0.1.0"

__all__ = [
    "DslSyntaxError",
    "DuplicateGenerator",
    "FrobeniusContext",
    "GeneratorSpec",
    "HsInput",
    "InternalNonTermination",
    "MissingActionComponent",
    "MissingCodim",
    "MissingFrobeniusData",
    "MixedPrimes",
    "NonHomogeneous",
    "NonHomogeneousInput",
    "NotAdmissible",
    "NotProjectiveBundleScenario",
    "ObstructionReport",
    "OmegaUndeclared",
    "RewriteRule",
    "RingElement",
    "RingPresentation",
    "RuleNonTermination",
    "Scenario",
    "ScenarioIncomplete",
    "SteencalcError",
    "SteenrodElement",
    "SteenrodMonomial",
    "TotalClass",
    "TwistedClass",
    "UnknownGenerator",
    "VirtualBundle",
    "admissible_monomials",
    "binom_mod_ell",
    "frobenius_eigenvalue",
    "get_scenario",
    "hs_scripted_check",
    "in_image_F_minus_Id",
    "model_ring",
    "normal_bundle_total",
    "odd_vanishing_check",
    "parse_operation",
    "projective_pushforward",
    "render_operation",
    "run_scenario",
    "scenario_names",
    "total_operation_class",
    "twisted_total_on_cycle",
    "verify_relative_wu_projective",
    "verify_wet_chow",
    "w_bro",
    "w_et",
    "weird_operator",
    "__version__",
]
