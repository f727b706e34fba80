"""
Ideal calculus, graded free resolutions, and theorem verification over
polynomial rings.

All classes and functions are available from this top-level import:
    from idealcalc import PolynomialRing, Ideal, minimal_resolution, run_verifier
"""

from .config import (
    DEFAULT_PRIME,
    SECOND_PRIME,
    DEFAULT_SEED,
    DEGREE_GUARD,
    WINDOW_PADDING,
    FieldKind,
    OrderKind,
    PositionPolicy,
    OutputFormat,
    Verdict,
    StabilizationStatus,
)
from .errors import (
    IdealCalcError,
    ParseError,
    RingMismatchError,
    DimensionMismatchError,
    InhomogeneousInputError,
    OrderError,
    DegenerateDrawError,
    UnknownTheoremError,
    DegreeGuardExceeded,
    PreconditionError,
    NotDisjointError,
    UncertifiedWindowError,
    GenericityUncertainError,
    TheoremViolation,
)
from .field import Field, is_prime
from .polynomial import MonomialOrder, Polynomial, PolynomialRing, format_polynomial
from .linear_change import LinearChange, apply_change, random_linear_forms
from .groebner import (
    ModuleOrder,
    SchreyerOrder,
    VectorElement,
    GroebnerBasis,
    buchberger,
    normal_form,
    eliminate,
    syzygies,
    syzygy_module,
    minimal_generators,
)
from .hilbert import HilbertSeries
from .ideal import (
    Ideal,
    ideal_sum,
    ideal_product,
    ideal_intersect,
    ideal_quotient,
    saturate,
    is_saturated,
    hilbert_series,
    krull_dim,
    codim,
    meet_dimension,
    are_disjoint,
)
from .resolution import (
    BettiTable,
    FreeResolution,
    free_resolution,
    minimal_resolution,
    minimize,
    quotient_resolution,
    betti,
    pd,
    depth_of_quotient,
    is_cohen_macaulay,
    nu,
    alpha,
    regularity,
)
from .modules import GradedModulePresentation, FiniteGradedModule, annihilator_submodule, nu_in_degrees, nu_module, to_finite
from .cohomology import (
    present_quotient,
    ext,
    deficiency_module,
    top_cohomology_window,
    is_quasi_buchsbaum,
    tor,
    comparison_module,
)
from .koszul import KoszulComplex, KoszulHomologyResult, koszul_homology
from .report import VerificationReport
from .theorems import (
    VERIFIERS,
    verify_serre,
    verify_tor_comparison,
    dubreil_base,
    extended_dubreil_bound,
    quasi_buchsbaum_codim2_bound,
    quasi_buchsbaum_general_bound,
    migliore_bound,
    check_resolution_structure,
    euler_lower_bound,
    amasaki_bound,
    run_verifier,
    field_stable,
)
from .corpus import Corpus, IdealFile, invariants, resolve_ideal_file
from .fuzz import CampaignSummary, run_campaign


# Convenience free functions

def load_ideal(spec: str, prime: int = DEFAULT_PRIME) -> Ideal:
    """Ideal from a file path or a corpus entry name."""
    return resolve_ideal_file(spec).to_ideal(Field(prime))


def verify(theorem_id: str, *ideals: Ideal, seed=None) -> VerificationReport:
    """Run one theorem verifier by id."""
    return run_verifier(theorem_id, list(ideals), seed=seed)
