"""
Randomized instance families and the fuzz campaign runner.

Instance k of a campaign with seed s draws from numpy's default_rng seeded
with s * 100003 + k, so every instance can be replayed on its own.
"""

import json
import logging
import multiprocessing as mp
import os
from dataclasses import dataclass, field
from itertools import starmap
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_PRIME, Verdict
from .corpus import Corpus
from .errors import IdealCalcError, TheoremViolation
from .field import Field
from .groebner import VectorElement
from .ideal import Ideal, ideal_intersect
from .koszul import koszul_homology
from .linear_change import random_linear_forms
from .modules import FiniteGradedModule, GradedModulePresentation, to_finite
from .polynomial import Polynomial, PolynomialRing, monomials_of_degree
from .report import VerificationReport, make_inputs
from .theorems import VERIFIERS, get_verifier, run_verifier

logger = logging.getLogger(__name__)

INSTANCE_STRIDE = 100003
KOSZUL_TARGET = "koszul"


def instance_seed(seed: int, index: int) -> int:
    return seed * INSTANCE_STRIDE + index


# =============================================================================
# RANDOM OBJECTS
# =============================================================================

def random_form(ring: PolynomialRing, degree: int, rng: np.random.Generator, density: float = 1.0) -> Polynomial:
    """Homogeneous form with random coefficients on a random share of the monomials."""
    monomials = monomials_of_degree(ring.num_vars, degree)
    while True:
        keep = [m for m in monomials if rng.random() < density] or [monomials[int(rng.integers(len(monomials)))]]
        coeffs = ring.field.random_elements(rng, len(keep))
        f = Polynomial(ring, dict(zip(keep, coeffs)))
        if not f.is_zero():
            return f


def _change_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**31 - 1))


def random_linear_space(ring: PolynomialRing, codimension: int, rng: np.random.Generator) -> Ideal:
    """Ideal of a general linear subspace of the given codimension."""
    forms, _ = random_linear_forms(ring, codimension, _change_seed(rng))
    return Ideal(ring, forms)


def random_point(ring: PolynomialRing, rng: np.random.Generator) -> Ideal:
    return random_linear_space(ring, ring.num_vars - 1, rng)


def random_lines_union(ring: PolynomialRing, count: int, rng: np.random.Generator) -> Ideal:
    union = random_linear_space(ring, ring.num_vars - 2, rng)
    for _ in range(count - 1):
        union = ideal_intersect(union, random_linear_space(ring, ring.num_vars - 2, rng))
    return union


def random_complete_intersection(ring: PolynomialRing, degrees: Sequence[int], rng: np.random.Generator) -> Ideal:
    return Ideal(ring, [random_form(ring, d, rng) for d in degrees])


def under_random_change(I: Ideal, rng: np.random.Generator) -> Ideal:
    _, change = random_linear_forms(I.ring, I.ring.num_vars, _change_seed(rng))
    return I.apply_change(change)


def random_ideal(ring: PolynomialRing, rng: np.random.Generator, max_gens: int = 4, max_degree: int = 5) -> Ideal:
    degrees = rng.integers(1, max_degree + 1, size=int(rng.integers(1, max_gens + 1)))
    return Ideal(ring, [random_form(ring, int(d), rng, density=float(rng.uniform(0.3, 1.0))) for d in degrees])


def random_finite_module(ring: PolynomialRing, rng: np.random.Generator) -> FiniteGradedModule:
    """S / (J + m^k) for a random ideal J and a small power k."""
    k = int(rng.integers(2, 5))
    extra = [random_form(ring, int(d), rng, density=0.5)
             for d in rng.integers(1, k, size=int(rng.integers(0, 3)))]
    power = [Polynomial(ring, {m: 1}) for m in monomials_of_degree(ring.num_vars, k)]
    relations = [VectorElement.from_polynomial(g) for g in extra + power]
    return to_finite(GradedModulePresentation(ring, [0], relations))


# =============================================================================
# FAMILIES
# =============================================================================

def dubreil_family(index: int, rng: np.random.Generator, field_: Field) -> Tuple[str, List[Ideal]]:
    ring = PolynomialRing.standard(2, field_)
    if index % 10 == 0:
        d = 1 + (index // 10) % 5
        return f"maximal_power_{d}", [Ideal.power(Ideal.maximal(ring), d)]
    return "random", [random_ideal(ring, rng)]


PAIR_FAMILIES = ("skew_lines", "hypersurface_point", "linear_point",
                 "ci_curve_point", "lines_union_point", "point_point")


def pair_family(index: int, rng: np.random.Generator, field_: Field) -> Tuple[str, List[Ideal]]:
    """Disjoint pairs in P^3; the first three families satisfy the criterion, the rest do not."""
    ring = PolynomialRing.standard(4, field_)
    family = PAIR_FAMILIES[index % len(PAIR_FAMILIES)]
    if family == "skew_lines":
        pair = [random_linear_space(ring, 2, rng), random_linear_space(ring, 2, rng)]
    elif family == "hypersurface_point":
        pair = [Ideal(ring, [random_form(ring, int(rng.integers(2, 4)), rng)]), random_point(ring, rng)]
    elif family == "linear_point":
        pair = [random_linear_space(ring, 1, rng), random_point(ring, rng)]
    elif family == "ci_curve_point":
        degrees = [2, int(rng.integers(2, 4))]
        pair = [random_complete_intersection(ring, degrees, rng), random_point(ring, rng)]
    elif family == "lines_union_point":
        pair = [random_lines_union(ring, 2, rng), random_point(ring, rng)]
    else:
        pair = [random_point(ring, rng), random_point(ring, rng)]
    return family, pair


TOR_FAMILIES = PAIR_FAMILIES + ("plane_curve_point",)


def tor_family(index: int, rng: np.random.Generator, field_: Field) -> Tuple[str, List[Ideal]]:
    """Disjoint pairs in at most 4 variables with generators of degree at most 3."""
    if index % len(TOR_FAMILIES) == len(TOR_FAMILIES) - 1:
        ring = PolynomialRing.standard(3, field_)
        curve = Ideal(ring, [random_form(ring, int(rng.integers(1, 4)), rng)])
        return "plane_curve_point", [curve, random_point(ring, rng)]
    return pair_family(index, rng, field_)


CURVE_FAMILIES = ("two_lines", "three_lines", "ci_curve", "twisted_cubic", "rational_quartic", "skew_lines",
                  "two_lines_p4", "conic_line_p4")
MOVED_CURVES = {
    "twisted_cubic": "twisted_cubic_p3",
    "rational_quartic": "rational_quartic_p3",
    "skew_lines": "skew_lines_p3",
    "conic_line_p4": "conic_line_p4",
}


def curve_family(index: int, rng: np.random.Generator, field_: Field) -> Tuple[str, List[Ideal]]:
    """Curves in P^3 and P^4: unions of general lines, complete intersections, moved corpus curves."""
    ring = PolynomialRing.standard(4, field_)
    family = CURVE_FAMILIES[index % len(CURVE_FAMILIES)]
    if family == "two_lines":
        return family, [random_lines_union(ring, 2, rng)]
    if family == "three_lines":
        return family, [random_lines_union(ring, 3, rng)]
    if family == "ci_curve":
        return family, [random_complete_intersection(ring, [2, int(rng.integers(2, 4))], rng)]
    if family == "two_lines_p4":
        return family, [random_lines_union(PolynomialRing.standard(5, field_), 2, rng)]
    base = Corpus().ideal(MOVED_CURVES[family], field_)
    ring = PolynomialRing.standard(base.ring.num_vars, field_)
    return family, [under_random_change(Ideal(ring, [g.lift(ring) for g in base.generators]), rng)]


def family_for(theorem_id: str):
    if theorem_id == "dubreil_base":
        return dubreil_family
    if theorem_id == "tor_comparison":
        return tor_family
    _, _, arity, _ = get_verifier(theorem_id)
    return pair_family if arity == 2 else curve_family


# =============================================================================
# KOSZUL PROPERTIES
# =============================================================================

def _alternating_defect(dims: Sequence[Dict[int, Dict[int, int]]], s: int) -> Dict[int, int]:
    """Per degree, sum_i (-1)^i (h_i(N) - h_i(M) + h_i(Q)) for the triple (N, M, Q)."""
    out: Dict[int, int] = {}
    for sign, table in zip((1, -1, 1), dims):
        for i in range(s + 1):
            for t, v in table.get(i, {}).items():
                out[t] = out.get(t, 0) + sign * (-1) ** i * v
    return {t: v for t, v in out.items() if v}


def _all_dims(forms, M: FiniteGradedModule) -> Dict[int, Dict[int, int]]:
    return {i: koszul_homology(forms, M, i, check_annihilation=False).dims for i in range(len(forms) + 1)}


def koszul_properties(M: FiniteGradedModule, forms: Sequence[Polynomial], rng: np.random.Generator) -> Dict[str, Any]:
    """
    Check on one module: homology is killed by the forms; the long exact
    sequence of a random cyclic submodule has zero Euler characteristic per
    degree; a zero form splits homology as H_i + H_{i-1}(-1); general forms
    are regular on S; and an m-annihilated module has C(s,i) copies of M.
    """
    s = len(forms)
    ring = M.ring
    failures: Dict[str, Any] = {}

    not_killed = [i for i in range(s + 1) if koszul_homology(forms, M, i).annihilated is False]
    if not_killed:
        failures["annihilation"] = not_killed

    nonzero = [d for d in M.degrees() if M.dim(d)]
    if nonzero:
        d = nonzero[int(rng.integers(len(nonzero)))]
        vector = M.field.random_elements(rng, M.dim(d))
        if np.any(vector != 0):
            bases = M.cyclic_submodule_bases(d, vector)
            triple = [_all_dims(forms, X) for X in (M.submodule(bases), M, M.quotient(bases))]
            defect = _alternating_defect(triple, s)
            if defect:
                failures["longExactSequence"] = {str(t): v for t, v in sorted(defect.items())}

    base = _all_dims(forms, M)
    padded = _all_dims([ring.zero()] + list(forms), M)
    for i in range(s + 2):
        expected: Dict[int, int] = {}
        for t, v in base.get(i, {}).items():
            expected[t] = expected.get(t, 0) + v
        for t, v in base.get(i - 1, {}).items():
            expected[t + 1] = expected.get(t + 1, 0) + v
        got = {t: v for t, v in padded.get(i, {}).items() if v}
        if got != {t: v for t, v in expected.items() if v}:
            failures.setdefault("zeroForm", []).append(i)

    S = to_finite(GradedModulePresentation(ring, [0], []), (0, 4))
    regular = [i for i in range(1, s + 1) if koszul_homology(forms, S, i, check_annihilation=False).total_dim]
    if regular:
        failures["regularSequence"] = regular

    if M.is_annihilated_by_maximal_ideal():
        wrong = [i for i in range(s + 1) if sum(base[i].values()) != comb(s, i) * M.total_dim()]
        if wrong:
            failures["trivialAction"] = wrong

    return {
        "moduleDims": {str(d): v for d, v in sorted(M.dims().items())},
        "numForms": s,
        "failures": failures,
    }


def koszul_instance(index: int, rng: np.random.Generator, field_: Field) -> Tuple[str, VerificationReport]:
    n = 2 + index % 3
    ring = PolynomialRing.standard(n, field_)
    M = random_finite_module(ring, rng)
    s = int(rng.integers(1, n + 1))
    forms, _ = random_linear_forms(ring, s, _change_seed(rng))
    quantities = koszul_properties(M, forms, rng)
    holds = not quantities["failures"]
    report = VerificationReport(KOSZUL_TARGET, make_inputs([], [index], field_.characteristic), quantities,
                                Verdict.HOLDS if holds else Verdict.VIOLATED,
                                None if holds else quantities["failures"])
    return f"finite_module_{n}vars", report


# =============================================================================
# CAMPAIGN
# =============================================================================

def run_instance(theorem_id: str, index: int, seed: int, prime: int) -> Dict[str, Any]:
    """One instance; errors are captured so a campaign always completes."""
    rng = np.random.default_rng(instance_seed(seed, index))
    field_ = Field(prime)
    family = "unknown"
    try:
        if theorem_id == KOSZUL_TARGET:
            family, report = koszul_instance(index, rng, field_)
        else:
            family, ideals = family_for(theorem_id)(index, rng, field_)
            report = run_verifier(theorem_id, ideals, seed=instance_seed(seed, index))
    except IdealCalcError as exc:
        logger.warning("instance %d (%s) failed: %s", index, family, exc)
        return {"id": index, "family": family, "verdict": "error", "error": str(exc),
                "errorType": type(exc).__name__, "exitCode": exc.exit_code}
    return {"id": index, "family": family, "verdict": report.verdict.value, "report": report.to_dict()}


@dataclass
class CampaignSummary:
    theorem_id: str
    count: int
    seed: int
    prime: int
    instances: List[Dict[str, Any]] = field(default_factory=list)
    witness_files: List[str] = field(default_factory=list)

    def verdict_counts(self) -> Dict[str, int]:
        counts = {v.value: 0 for v in Verdict}
        counts["error"] = 0
        for inst in self.instances:
            counts[inst["verdict"]] = counts.get(inst["verdict"], 0) + 1
        return counts

    def family_counts(self) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {}
        for inst in self.instances:
            per = out.setdefault(inst["family"], {})
            per[inst["verdict"]] = per.get(inst["verdict"], 0) + 1
        return out

    @property
    def violations(self) -> List[Dict[str, Any]]:
        return [inst for inst in self.instances if inst["verdict"] == Verdict.VIOLATED.value]

    def exit_code(self) -> int:
        """Highest exit code among errored instances and violations; 0 when everything held."""
        codes = [inst.get("exitCode", IdealCalcError.exit_code)
                 for inst in self.instances if inst["verdict"] == "error"]
        if self.violations:
            codes.append(TheoremViolation.exit_code)
        return max(codes, default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theoremId": self.theorem_id,
            "count": self.count,
            "seed": self.seed,
            "prime": self.prime,
            "verdicts": self.verdict_counts(),
            "families": self.family_counts(),
            "violations": self.violations,
            "errors": [inst for inst in self.instances if inst["verdict"] == "error"],
            "witnessFiles": self.witness_files,
        }


def run_campaign(theorem_id: str, count: int, seed: int = 1, prime: int = DEFAULT_PRIME,
                 workers: int = 1, witness_dir: Optional[str] = None) -> CampaignSummary:
    """
    Run `count` instances, in a spawn-context process pool when workers > 1.
    Results are ordered by instance id; a witness file is written for every
    violation when witness_dir is given.
    """
    theorem_id = resolve_target(theorem_id)
    tasks = [(theorem_id, index, seed, prime) for index in range(count)]
    if workers <= 1:
        results = list(starmap(run_instance, tasks))
    else:
        context = mp.get_context("spawn")
        with context.Pool(processes=workers) as pool:
            results = pool.starmap_async(run_instance, tasks).get()
    results.sort(key=lambda inst: inst["id"])
    summary = CampaignSummary(theorem_id, count, seed, prime, results)
    logger.info("fuzz %s: %s", theorem_id, summary.verdict_counts())
    if witness_dir and summary.violations:
        os.makedirs(witness_dir, exist_ok=True)
        for inst in summary.violations:
            path = os.path.join(witness_dir, f"{theorem_id}_{seed}_{inst['id']}.json")
            with open(path, "w", encoding="utf-8") as handle:
                json.dump(inst, handle, indent=2, sort_keys=True)
            summary.witness_files.append(path)
    return summary


def fuzz_targets() -> List[str]:
    return sorted(VERIFIERS) + [KOSZUL_TARGET]


def resolve_target(theorem_id: str) -> str:
    """Canonical fuzz target id; raises UnknownTheoremError for anything else."""
    if theorem_id == KOSZUL_TARGET:
        return theorem_id
    return get_verifier(theorem_id)[0]
