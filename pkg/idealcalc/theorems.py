"""
Instance verifiers for the generator-count bounds, the product versus
intersection criterion and the resolution-shape statements.

Each verifier returns a VerificationReport. A failed hypothesis yields
verdict NOT_APPLICABLE with the reason in the notes; only a genuine
counterexample yields VIOLATED, always with a witness.
"""

import logging
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cohomology import (
    comparison_module,
    deficiency_module,
    default_window,
    is_quasi_buchsbaum,
    top_cohomology_window,
    tor,
)
from .config import DEFAULT_SEED, GENERICITY_SEEDS, SECOND_PRIME, STABILIZATION_STEP, Verdict
from .errors import DimensionMismatchError, GenericityUncertainError, RingMismatchError, UnknownTheoremError
from .field import Field
from .ideal import Ideal, codim, ideal_intersect, ideal_product, is_saturated, krull_dim, meet_dimension
from .koszul import koszul_homology
from .linear_change import random_linear_forms
from .modules import FiniteGradedModule, annihilator_submodule, finite_module_presentation, nu_in_degrees, nu_module
from .report import VerificationReport, make_inputs
from .resolution import alpha, is_cohen_macaulay, minimal_resolution, nu

logger = logging.getLogger(__name__)


# =============================================================================
# HELPERS
# =============================================================================

def _report(theorem_id: str, ideals: Sequence[Ideal], quantities: Dict, holds: bool,
            witness: Optional[Dict] = None, seeds: Sequence[int] = (), notes: Sequence[str] = ()) -> VerificationReport:
    verdict = Verdict.HOLDS if holds else Verdict.VIOLATED
    if not holds and witness is None:
        witness = dict(quantities)
    report = VerificationReport(theorem_id, make_inputs(ideals, seeds), quantities, verdict,
                                witness if not holds else None, list(notes))
    if not holds:
        logger.error("%s violated: %s", theorem_id, report.witness)
    return report


def _not_applicable(theorem_id: str, ideals: Sequence[Ideal], reasons: Sequence[str],
                    quantities: Optional[Dict] = None, seeds: Sequence[int] = ()) -> VerificationReport:
    logger.info("%s not applicable: %s", theorem_id, "; ".join(reasons))
    return VerificationReport(theorem_id, make_inputs(ideals, seeds), quantities or {},
                              Verdict.NOT_APPLICABLE, None, list(reasons))


def _seeds(seed: Optional[int]) -> List[int]:
    base = DEFAULT_SEED if seed is None else seed
    return list(range(base, base + GENERICITY_SEEDS))


def across_seeds(compute: Callable[[int], object], seed: Optional[int] = None):
    """
    Evaluate compute(s) for GENERICITY_SEEDS consecutive seeds and return
    the common value.

    Raises:
        GenericityUncertainError: two seeds disagree
    """
    seeds = _seeds(seed)
    values = [compute(s) for s in seeds]
    if any(v != values[0] for v in values[1:]):
        raise GenericityUncertainError(seeds, values)
    return values[0]


def _general_forms(I: Ideal, count: int, seed: int):
    return random_linear_forms(I.ring, count, seed)[0]


def _basic_obstructions(I: Ideal) -> List[str]:
    if I.is_zero():
        return ["zero ideal"]
    if I.is_unit():
        return ["unit ideal"]
    if not is_saturated(I):
        return ["ideal is not saturated"]
    return []


def top_koszul_dims(I: Ideal, forms, index: int, window: Optional[Tuple[int, int]] = None,
                    step: int = STABILIZATION_STEP) -> List[Dict[int, int]]:
    """Degreewise Koszul homology of H^{d+1}_*(V) at `index` on the window widened by 0, step and 2 * step."""
    lo, hi = window or default_window(I)
    return [koszul_homology(forms, top_cohomology_window(I, (lo - k * step, hi + k * step)), index,
                            check_annihilation=False).dims
            for k in range(3)]


def agree_degreewise(runs: Sequence[Dict[int, int]]) -> bool:
    """Same value in every degree all runs cover, and nothing nonzero outside those degrees."""
    common = set.intersection(*(set(r) for r in runs))
    if any(r[t] != runs[0][t] for r in runs for t in common):
        return False
    return not any(v for r in runs for t, v in r.items() if t not in common)


def top_koszul_term(I: Ideal, forms, index: int, window: Optional[Tuple[int, int]] = None,
                    step: int = STABILIZATION_STEP) -> Tuple[int, bool, Tuple[int, int]]:
    """
    Total dimension of the Koszul homology of H^{d+1}_*(V) at `index`,
    computed on a window widened twice by `step`. Returns (value on the
    widest window, whether the three runs agreed degree by degree, widest
    window).
    """
    lo, hi = window or default_window(I)
    runs = top_koszul_dims(I, forms, index, (lo, hi), step)
    stable = agree_degreewise(runs)
    if not stable:
        logger.warning("top Koszul term did not stabilize: %s", runs)
    return sum(runs[-1].values()), stable, (lo - 2 * step, hi + 2 * step)


def top_annihilator_dim(I: Ideal, forms, window: Optional[Tuple[int, int]] = None) -> int:
    """dim (0 :_{H^{d+1}_*} (forms)) over the degrees where the action is known."""
    top = top_cohomology_window(I, window or default_window(I))
    ann = annihilator_submodule(top, forms)
    return sum(v for d, v in ann.dims().items() if top.has_action(d))


# =============================================================================
# PRODUCT VERSUS INTERSECTION
# =============================================================================

def verify_serre(I: Ideal, J: Ideal) -> VerificationReport:
    """
    For disjoint subschemes: IJ = I ∩ J iff dim S/I + dim S/J = dim S and
    both S/I and S/J are Cohen-Macaulay.
    """
    theorem = "serre"
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    reasons = _basic_obstructions(I) + _basic_obstructions(J)
    if reasons:
        return _not_applicable(theorem, [I, J], reasons)
    N = I.ring.num_vars
    product = ideal_product(I, J)
    meet = ideal_intersect(I, J)
    lhs = product == meet
    dim_i, dim_j = krull_dim(I), krull_dim(J)
    cm_i, cm_j = is_cohen_macaulay(I), is_cohen_macaulay(J)
    dimension_condition = dim_i + dim_j == N
    rhs = dimension_condition and cm_i and cm_j
    meet_dim = meet_dimension(I, J)
    quantities = {
        "productEqualsIntersection": lhs,
        "dimI": dim_i,
        "dimJ": dim_j,
        "numVars": N,
        "dimensionCondition": dimension_condition,
        "cohenMacaulayI": cm_i,
        "cohenMacaulayJ": cm_j,
        "criterion": rhs,
        "meetDimension": meet_dim,
    }
    if meet_dim > 0:
        return _not_applicable(theorem, [I, J], [f"subschemes meet: dim S/(I+J) = {meet_dim}"], quantities)
    witness = {"productEqualsIntersection": lhs, "criterion": rhs}
    return _report(theorem, [I, J], quantities, lhs == rhs, witness)


def verify_tor_comparison(I: Ideal, J: Ideal) -> VerificationReport:
    """Degreewise dims of (I ∩ J) / IJ equal those of Tor_1(S/I, S/J)."""
    theorem = "tor_comparison"
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    reasons = _basic_obstructions(I) + _basic_obstructions(J)
    if not reasons and meet_dimension(I, J) > 0:
        reasons = [f"subschemes meet: dim S/(I+J) = {meet_dimension(I, J)}"]
    if reasons:
        return _not_applicable(theorem, [I, J], reasons)
    comparison = {str(d): v for d, v in sorted(comparison_module(I, J).dims().items())}
    tor_one = {str(d): v for d, v in sorted(tor(I, J, 1).dims().items())}
    quantities = {"comparisonDims": comparison, "torDims": tor_one}
    return _report(theorem, [I, J], quantities, comparison == tor_one)


# =============================================================================
# GENERATOR BOUNDS
# =============================================================================

def dubreil_base(I: Ideal) -> VerificationReport:
    """nu(I) <= alpha(I) + 1 in two variables."""
    theorem = "dubreil_base"
    if I.ring.num_vars != 2:
        raise DimensionMismatchError(f"the base bound lives in 2 variables, got {I.ring.num_vars}")
    if I.is_zero():
        return _not_applicable(theorem, [I], ["zero ideal"])
    n_gens, a = nu(I), alpha(I)
    quantities = {"nu": n_gens, "alpha": a, "rhs": a + 1, "slack": a + 1 - n_gens}
    return _report(theorem, [I], quantities, n_gens <= a + 1)


def extended_dubreil_bound(I: Ideal, seed: Optional[int] = None) -> VerificationReport:
    """
    nu(I) <= alpha(I) + 1 + sum_{i=1}^{n-2} dim ℍ_{i+1}((L_1..L_{n-1}); H^i_*(V))
    for n - 1 general linear forms.

    For i <= dim V the modules are the deficiency modules; H^{d+1}_* enters
    through a truncated window with a stabilization check; higher H^i vanish.
    """
    theorem = "extended_dubreil"
    reasons = _basic_obstructions(I)
    n = I.ring.num_vars - 1
    if not reasons and n < 2:
        reasons = ["needs at least P^2"]
    if reasons:
        return _not_applicable(theorem, [I], reasons)
    d = krull_dim(I) - 1
    if d < 0:
        return _not_applicable(theorem, [I], ["empty subscheme"])
    modules = {i: deficiency_module(I, i) for i in range(1, min(d, n - 2) + 1)}
    notes = []
    for i, M in modules.items():
        if not M.certified:
            notes.append(f"H^{i}_* is not of finite length; term is window-limited")
    top_index = d + 1 if d + 1 <= n - 2 else None

    def terms_for(s: int) -> Tuple[Dict[str, int], bool]:
        forms = _general_forms(I, n - 1, s)
        terms = {str(i): koszul_homology(forms, M, i + 1, check_annihilation=False).total_dim
                 for i, M in modules.items()}
        stable = True
        if top_index is not None:
            value, stable, _ = top_koszul_term(I, forms, top_index + 1)
            terms[str(top_index)] = value
        return terms, stable

    seeds = _seeds(seed)
    terms, stable = across_seeds(terms_for, seed)
    if not stable:
        notes.append("top Koszul term changed as the window widened")
    n_gens, a = nu(I), alpha(I)
    rhs = a + 1 + sum(terms.values())
    quantities = {
        "nu": n_gens,
        "alpha": a,
        "koszulTerms": terms,
        "rhs": rhs,
        "slack": rhs - n_gens,
        "dimV": d,
        "topTermStable": stable,
    }
    return _report(theorem, [I], quantities, n_gens <= rhs, seeds=seeds, notes=notes)


def _quasi_buchsbaum_setup(I: Ideal):
    reasons = _basic_obstructions(I)
    if reasons:
        return None, reasons
    if krull_dim(I) - 1 < 0:
        return None, ["empty subscheme"]
    qb = is_quasi_buchsbaum(I)
    uncertified = [i for i, M in qb.modules.items() if not M.certified]
    if uncertified:
        return None, [f"H^{i}_* is not of finite length" for i in uncertified]
    if not qb.holds:
        return None, [f"not quasi-Buchsbaum: m does not annihilate H^{i}_*" for i in qb.failing]
    return qb, []


def quasi_buchsbaum_codim2_bound(I: Ideal) -> VerificationReport:
    """nu(I) <= alpha(I) + 1 + sum_{i=1}^{n-2} C(n-1, i+1) dim H^i_*(V) in codimension 2."""
    theorem = "qb_codim2"
    if not I.is_zero() and not I.is_unit() and codim(I) != 2:
        return _not_applicable(theorem, [I], [f"codimension {codim(I)} is not 2"])
    qb, reasons = _quasi_buchsbaum_setup(I)
    if reasons:
        return _not_applicable(theorem, [I], reasons)
    n = I.ring.num_vars - 1
    dims = {str(i): M.total_dim() for i, M in qb.modules.items()}
    correction = sum(comb(n - 1, i + 1) * M.total_dim() for i, M in qb.modules.items() if i <= n - 2)
    n_gens, a = nu(I), alpha(I)
    rhs = a + 1 + correction
    quantities = {"nu": n_gens, "alpha": a, "deficiencyDims": dims, "rhs": rhs, "slack": rhs - n_gens}
    return _report(theorem, [I], quantities, n_gens <= rhs)


def quasi_buchsbaum_general_bound(I: Ideal, seed: Optional[int] = None) -> VerificationReport:
    """
    nu(I) <= alpha(I) + 1 + sum_{i=1}^{d} C(n-1, i+1) dim H^i_*(V)
             + dim ℍ_{d+2}((L_1..L_{n-1}); H^{d+1}_*(V))
    for a d-dimensional quasi-Buchsbaum subscheme.
    """
    theorem = "qb_general"
    qb, reasons = _quasi_buchsbaum_setup(I)
    if reasons:
        return _not_applicable(theorem, [I], reasons)
    n = I.ring.num_vars - 1
    d = krull_dim(I) - 1
    dims = {str(i): M.total_dim() for i, M in qb.modules.items()}
    correction = sum(comb(n - 1, i + 1) * M.total_dim() for i, M in qb.modules.items())
    seeds: List[int] = []
    notes: List[str] = []
    top_term, annihilator_dim, stable = 0, None, True
    if d + 2 <= n - 1:
        seeds = _seeds(seed)

        def top_for(s: int):
            forms = _general_forms(I, n - 1, s)
            value, ok, _ = top_koszul_term(I, forms, d + 2)
            return value, ok, top_annihilator_dim(I, forms)

        top_term, stable, annihilator_dim = across_seeds(top_for, seed)
        if not stable:
            notes.append("top Koszul term changed as the window widened")
    n_gens, a = nu(I), alpha(I)
    rhs = a + 1 + correction + top_term
    quantities = {
        "nu": n_gens,
        "alpha": a,
        "deficiencyDims": dims,
        "binomialTerm": correction,
        "topKoszulTerm": top_term,
        "rhs": rhs,
        "slack": rhs - n_gens,
        "topTermStable": stable,
    }
    if annihilator_dim is not None:
        quantities["topAnnihilatorDim"] = annihilator_dim
    return _report(theorem, [I], quantities, n_gens <= rhs, seeds=seeds, notes=notes)


def windowed_annihilator(I: Ideal, forms, window: Optional[Tuple[int, int]] = None,
                         step: int = STABILIZATION_STEP) -> Tuple[Dict[int, int], int, bool]:
    """
    K_A = (0 :_{H^1_*} A) for H^1_*(V) of infinite length, computed on a
    window widened twice by `step`. Only degrees whose outgoing action is
    known count. Returns (dims on the widest window, nu(K_A), whether the
    dims agreed on all three windows and stayed off the lower edge).
    """
    lo, hi = window or default_window(I)
    seen = []
    stable = True
    for k in range(3):
        w = (lo - k * step, hi + k * step)
        K = annihilator_submodule(deficiency_module(I, 1, w), forms)
        support = [t for t in K.degrees() if K.has_action(t) and K.dim(t)]
        if support and support[0] == w[0]:
            stable = False
        seen.append(({t: K.dim(t) for t in support}, nu_in_degrees(K, support)))
    stable = stable and seen[0] == seen[1] == seen[2]
    if not stable:
        logger.warning("K_A did not stabilize: %s", [dims for dims, _ in seen])
    dims, value = seen[-1]
    return dims, value, stable


def migliore_bound(I: Ideal, seed: Optional[int] = None) -> VerificationReport:
    """
    For a subscheme of P^3 of codimension at least 2:
    nu(I) <= alpha(I) + 1 + nu(K_A), K_A the part of H^1_*(V) killed by two
    general linear forms. When m kills H^1_*(V) also nu(K_A) = dim H^1_*(V).

    H^1_* of infinite length (points, curves that are not locally
    Cohen-Macaulay) is handled on widening windows; K_A must come out the
    same on each.
    """
    theorem = "migliore"
    if I.ring.num_vars != 4:
        return _not_applicable(theorem, [I], [f"needs P^3, got {I.ring.num_vars} variables"])
    reasons = _basic_obstructions(I)
    if not reasons and codim(I) < 2:
        reasons = [f"codimension {codim(I)} is below 2"]
    if reasons:
        return _not_applicable(theorem, [I], reasons)
    H1 = deficiency_module(I, 1)

    def nu_k(s: int) -> Tuple[int, bool]:
        forms = _general_forms(I, 2, s)
        if H1.certified:
            return nu_module(annihilator_submodule(H1, forms)), True
        _, value, ok = windowed_annihilator(I, forms)
        return value, ok

    seeds = _seeds(seed)
    nu_ka, stable = across_seeds(nu_k, seed)
    if not stable:
        return _not_applicable(theorem, [I], ["K_A changed as the window widened"], seeds=seeds)
    n_gens, a = nu(I), alpha(I)
    rhs = a + 1 + nu_ka
    buchsbaum = H1.certified and H1.is_annihilated_by_maximal_ideal()
    quantities = {
        "nu": n_gens,
        "alpha": a,
        "nuKA": nu_ka,
        "dimH1": H1.total_dim() if H1.certified else None,
        "finiteLengthH1": H1.certified,
        "rhs": rhs,
        "slack": rhs - n_gens,
        "annihilatedByMaximalIdeal": buchsbaum,
    }
    holds = n_gens <= rhs
    witness = None
    if buchsbaum and nu_ka != H1.total_dim():
        holds = False
        witness = {"nuKA": nu_ka, "dimH1": H1.total_dim()}
    elif not holds:
        witness = {"nu": n_gens, "rhs": rhs}
    return _report(theorem, [I], quantities, holds, witness, seeds=seeds)


# =============================================================================
# RESOLUTION SHAPE
# =============================================================================

def _resolution_setup(I: Ideal) -> Tuple[Optional[FiniteGradedModule], List[str]]:
    """Codimension 2, saturated, H^1 of finite length and H^i = 0 for 2 <= i <= dim V."""
    reasons = _basic_obstructions(I)
    if reasons:
        return None, reasons
    if codim(I) != 2:
        return None, [f"codimension {codim(I)} is not 2"]
    n = I.ring.num_vars - 1
    d = krull_dim(I) - 1
    if d < 1:
        return None, ["needs a subscheme of positive dimension"]
    H1 = deficiency_module(I, 1)
    if not H1.certified:
        return None, ["H^1_* is not of finite length"]
    for i in range(2, min(d, n - 1) + 1):
        if not deficiency_module(I, i).is_zero():
            return None, [f"H^{i}_* does not vanish"]
    return H1, []


def _deficiency_resolution(H1: FiniteGradedModule) -> List[List[int]]:
    if H1.is_zero():
        return []
    R = minimal_resolution(finite_module_presentation(H1))
    return [sorted(t) for t in R.twists[: R.length + 1]]


def check_resolution_structure(I: Ideal) -> VerificationReport:
    """
    With L the minimal resolution of H^1_*(V): F_i = L_{i+2} for i >= 2 and
    L_3 is a summand of F_1 in the minimal resolution F of I.
    """
    theorem = "resolution_structure"
    H1, reasons = _resolution_setup(I)
    if reasons:
        return _not_applicable(theorem, [I], reasons)
    L = _deficiency_resolution(H1)
    F = [sorted(t) for t in minimal_resolution(I).twists]
    F = F[: max((j for j, t in enumerate(F) if t), default=-1) + 1]

    def level(seq: List[List[int]], j: int) -> List[int]:
        return seq[j] if 0 <= j < len(seq) else []

    mismatches = {}
    for i in range(2, max(len(F), len(L) - 2)):
        if level(F, i) != level(L, i + 2):
            mismatches[str(i)] = {"resolution": level(F, i), "deficiency": level(L, i + 2)}
    first = list(level(F, 1))
    for twist in level(L, 3):
        if twist in first:
            first.remove(twist)
        else:
            mismatches["1"] = {"resolution": level(F, 1), "deficiency": level(L, 3)}
            break
    quantities = {
        "resolutionTwists": F,
        "deficiencyResolutionTwists": L,
        "r": len(first) if "1" not in mismatches else None,
        "p": len(level(F, 0)),
        "dimH1": H1.total_dim(),
    }
    witness = {"mismatches": mismatches} if mismatches else None
    return _report(theorem, [I], quantities, not mismatches, witness)


def euler_lower_bound(I: Ideal) -> VerificationReport:
    """nu(I) >= 1 + sum_{i=3}^{n+1} (-1)^i rank L_i."""
    theorem = "euler"
    H1, reasons = _resolution_setup(I)
    if reasons:
        return _not_applicable(theorem, [I], reasons)
    n = I.ring.num_vars - 1
    L = _deficiency_resolution(H1)
    ranks = {str(i): len(L[i]) if i < len(L) else 0 for i in range(3, n + 2)}
    rhs = 1 + sum((-1) ** int(i) * r for i, r in ranks.items())
    n_gens = nu(I)
    quantities = {"nu": n_gens, "ranks": ranks, "rhs": rhs, "slack": n_gens - rhs}
    return _report(theorem, [I], quantities, n_gens >= rhs)


def amasaki_bound(I: Ideal) -> VerificationReport:
    """alpha(I) >= (n - 2) dim H^1_*(V) when m annihilates H^1_*(V)."""
    theorem = "amasaki"
    H1, reasons = _resolution_setup(I)
    if not reasons and not H1.is_annihilated_by_maximal_ideal():
        reasons = ["m does not annihilate H^1_*"]
    if reasons:
        return _not_applicable(theorem, [I], reasons)
    n = I.ring.num_vars - 1
    a, dim_h1 = alpha(I), H1.total_dim()
    rhs = (n - 2) * dim_h1
    quantities = {"alpha": a, "dimH1": dim_h1, "rhs": rhs, "slack": a - rhs}
    return _report(theorem, [I], quantities, a >= rhs)


# =============================================================================
# REGISTRY
# =============================================================================

VERIFIERS: Dict[str, Tuple[Callable[..., VerificationReport], int, bool]] = {
    # id: (function, number of ideals, takes a seed)
    "serre": (verify_serre, 2, False),
    "tor_comparison": (verify_tor_comparison, 2, False),
    "dubreil_base": (dubreil_base, 1, False),
    "extended_dubreil": (extended_dubreil_bound, 1, True),
    "qb_codim2": (quasi_buchsbaum_codim2_bound, 1, False),
    "qb_general": (quasi_buchsbaum_general_bound, 1, True),
    "migliore": (migliore_bound, 1, True),
    "resolution_structure": (check_resolution_structure, 1, False),
    "euler": (euler_lower_bound, 1, False),
    "amasaki": (amasaki_bound, 1, False),
}

ALIASES = {fn.__name__: key for key, (fn, _, _) in VERIFIERS.items()}


def get_verifier(theorem_id: str) -> Tuple[str, Callable[..., VerificationReport], int, bool]:
    key = ALIASES.get(theorem_id, theorem_id)
    if key not in VERIFIERS:
        raise UnknownTheoremError(f"unknown theorem '{theorem_id}'; known: {', '.join(sorted(VERIFIERS))}")
    fn, arity, seeded = VERIFIERS[key]
    return key, fn, arity, seeded


def run_verifier(theorem_id: str, ideals: Sequence[Ideal], seed: Optional[int] = None) -> VerificationReport:
    key, fn, arity, seeded = get_verifier(theorem_id)
    if len(ideals) != arity:
        raise DimensionMismatchError(f"{key} takes {arity} ideal(s), got {len(ideals)}")
    return fn(*ideals, seed=seed) if seeded else fn(*ideals)


def field_stable(theorem_id: str, ideals: Sequence[Ideal], seed: Optional[int] = None,
                 prime: int = SECOND_PRIME) -> Dict[str, object]:
    """
    Rerun a verifier over a second prime field and compare verdicts and
    quantities.
    """
    first = run_verifier(theorem_id, ideals, seed)
    field = Field(prime)
    second = run_verifier(theorem_id, [I.over_field(field) for I in ideals], seed)
    differences = {k: [first.quantities.get(k), second.quantities.get(k)]
                   for k in sorted(set(first.quantities) | set(second.quantities))
                   if first.quantities.get(k) != second.quantities.get(k)}
    stable = not differences and first.verdict is second.verdict
    if not stable:
        logger.warning("%s differs at p=%d: %s", theorem_id, prime, differences)
    return {"stable": stable, "primes": [first.inputs["prime"], prime], "differences": differences,
            "verdicts": [first.verdict.value, second.verdict.value]}
