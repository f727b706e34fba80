import json
import os

import pytest

from idealcalc.config import SECOND_PRIME, Verdict
from idealcalc.errors import DimensionMismatchError, GenericityUncertainError, UnknownTheoremError
from idealcalc.ideal import Ideal, krull_dim
from idealcalc.linear_change import random_linear_forms
from idealcalc.report import VerificationReport
from idealcalc.theorems import (
    VERIFIERS,
    agree_degreewise,
    across_seeds,
    amasaki_bound,
    check_resolution_structure,
    dubreil_base,
    euler_lower_bound,
    extended_dubreil_bound,
    field_stable,
    get_verifier,
    migliore_bound,
    quasi_buchsbaum_codim2_bound,
    quasi_buchsbaum_general_bound,
    run_verifier,
    top_koszul_dims,
    top_koszul_term,
    verify_serre,
    verify_tor_comparison,
    windowed_annihilator,
)

SCHEMA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "docs", "schema.json")


# ====== product versus intersection ======

@pytest.mark.parametrize("pair,lhs", [
    (("line_x0x1_p3", "line_x2x3_p3"), True),
    (("skew_lines_p3", "point_p3_generic"), False),
    (("point_p3_generic", "point_p3_origin"), False),
    (("ci_22_p3", "point_p3_generic"), False),
])
def test_serre_pairs(load, pair, lhs):
    report = verify_serre(*(load(n) for n in pair))
    assert report.verdict is Verdict.HOLDS
    assert report.quantities["productEqualsIntersection"] is lhs
    assert report.quantities["criterion"] is lhs


def test_serre_on_meeting_lines(load):
    report = verify_serre(load("line_x0x1_p3"), load("line_x0x2_p3"))
    assert report.verdict is Verdict.NOT_APPLICABLE
    assert report.quantities["meetDimension"] == 1
    assert "productEqualsIntersection" in report.quantities
    assert report.notes


def test_tor_comparison(load):
    report = verify_tor_comparison(load("skew_lines_p3"), load("point_p3_generic"))
    assert report.holds
    assert report.quantities["comparisonDims"] == report.quantities["torDims"]
    assert report.quantities["torDims"]


# ====== generator bounds ======

@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_dubreil_base_sharp_on_powers(S2, d):
    report = dubreil_base(Ideal.power(Ideal.maximal(S2), d))
    assert report.holds
    assert report.quantities["slack"] == 0


def test_dubreil_base_needs_two_variables(S2, S3):
    with pytest.raises(DimensionMismatchError):
        dubreil_base(Ideal.maximal(S3))
    assert dubreil_base(Ideal.zero(S2)).verdict is Verdict.NOT_APPLICABLE


def test_extended_dubreil_on_skew_lines(load):
    report = extended_dubreil_bound(load("skew_lines_p3"))
    assert report.holds
    assert report.quantities["koszulTerms"] == {"1": 1}
    assert report.quantities["rhs"] == 4
    assert report.inputs["seeds"] == [1, 2, 3]


def test_extended_dubreil_on_conic_and_line(load):
    report = extended_dubreil_bound(load("conic_line_p4"))
    assert report.holds
    assert report.quantities["nu"] == 7
    assert report.quantities["alpha"] == 2
    assert report.quantities["koszulTerms"]["1"] == 3


def test_quasi_buchsbaum_general_on_conic_and_line(load):
    report = quasi_buchsbaum_general_bound(load("conic_line_p4"))
    q = report.quantities
    assert report.holds
    assert q["binomialTerm"] == 3
    assert q["topKoszulTerm"] >= 2
    assert q["rhs"] >= 8
    assert q["topTermStable"]
    assert "topAnnihilatorDim" in q


STABILIZATION_CASES = [
    pytest.param("conic_line_p4", marks=pytest.mark.slow),
    "skew_lines_p4",
    "line_p4",
    "rational_normal_p4",
    "twisted_cubic_p4",
    "point_p4",
    "point_p3_generic",
    "point_p3_origin",
    "two_points_p3",
    "three_points_p3",
]


def test_top_koszul_term_stabilizes(load):
    I = load("conic_line_p4")
    forms, _ = random_linear_forms(I.ring, 3, seed=1)
    _, stable, window = top_koszul_term(I, forms, 3)
    assert stable
    assert window[1] - window[0] > 16


@pytest.mark.parametrize("name", STABILIZATION_CASES)
def test_top_koszul_homology_unchanged_by_wider_windows(load, name):
    I = load(name)
    n = I.ring.num_vars - 1
    d = krull_dim(I) - 1
    assert 0 <= d and d + 2 <= n - 1
    forms, _ = random_linear_forms(I.ring, n - 1, seed=1)
    for i in range(d + 2, n):
        runs = top_koszul_dims(I, forms, i)
        common = set(runs[0]) & set(runs[1]) & set(runs[2])
        assert common
        for t in common:
            assert runs[0][t] == runs[1][t] == runs[2][t]
        assert agree_degreewise(runs)


def test_agree_degreewise():
    assert agree_degreewise([{0: 1, 1: 0}, {-1: 0, 0: 1, 1: 0, 2: 0}, {0: 1}])
    assert not agree_degreewise([{0: 1}, {0: 2}, {0: 1}])
    assert not agree_degreewise([{0: 1}, {0: 1, 5: 1}, {0: 1, 5: 1}])


def test_quasi_buchsbaum_codim2(load):
    report = quasi_buchsbaum_codim2_bound(load("skew_lines_p3"))
    assert report.holds
    assert report.quantities["rhs"] == 4
    assert report.quantities["slack"] == 0
    assert quasi_buchsbaum_codim2_bound(load("conic_line_p4")).verdict is Verdict.NOT_APPLICABLE
    assert quasi_buchsbaum_codim2_bound(load("three_skew_lines_p3")).verdict is Verdict.NOT_APPLICABLE


def test_migliore(load):
    report = migliore_bound(load("skew_lines_p3"))
    assert report.holds
    assert report.quantities["nuKA"] == report.quantities["dimH1"] == 1
    assert migliore_bound(load("three_skew_lines_p3")).holds
    assert migliore_bound(load("conic_line_p4")).verdict is Verdict.NOT_APPLICABLE


@pytest.mark.parametrize("name", ["point_p3_generic", "point_p3_origin"])
def test_migliore_on_points(load, name):
    report = migliore_bound(load(name))
    q = report.quantities
    assert report.holds
    assert q["finiteLengthH1"] is False
    assert q["nuKA"] == 1
    assert q["rhs"] == 3
    assert q["slack"] == 0


def test_windowed_annihilator_of_a_point(load):
    I = load("point_p3_origin")
    forms, _ = random_linear_forms(I.ring, 2, seed=1)
    dims, value, stable = windowed_annihilator(I, forms)
    assert stable
    assert dims == {-1: 1}
    assert value == 1


def test_migliore_rejects_surfaces(S4):
    report = migliore_bound(Ideal(S4, [S4.parse("x0*x1 - x2*x3")]))
    assert report.verdict is Verdict.NOT_APPLICABLE
    assert report.notes == ["codimension 1 is below 2"]


# ====== resolution shape ======

@pytest.mark.parametrize("name", ["skew_lines_p3", "rational_quartic_p3"])
def test_resolution_structure(load, name):
    report = check_resolution_structure(load(name))
    assert report.holds
    assert report.quantities["r"] == 0
    assert report.quantities["p"] == 4


def test_resolution_structure_on_cohen_macaulay_curve(load):
    report = check_resolution_structure(load("twisted_cubic_p3"))
    assert report.holds
    assert report.quantities["deficiencyResolutionTwists"] == []


def test_euler_lower_bound(load):
    report = euler_lower_bound(load("skew_lines_p3"))
    assert report.holds
    assert report.quantities["ranks"] == {"3": 4, "4": 1}
    assert report.quantities["rhs"] == -2


def test_amasaki(load):
    report = amasaki_bound(load("skew_lines_p3"))
    assert report.holds
    assert report.quantities["rhs"] == 1
    assert report.quantities["alpha"] == 2
    assert amasaki_bound(load("three_skew_lines_p3")).verdict is Verdict.NOT_APPLICABLE


@pytest.mark.parametrize("fn", [quasi_buchsbaum_codim2_bound, extended_dubreil_bound, euler_lower_bound, amasaki_bound])
def test_failed_hypotheses_are_not_applicable(S4, fn):
    assert fn(Ideal.zero(S4)).verdict is Verdict.NOT_APPLICABLE
    assert fn(Ideal.unit(S4)).verdict is Verdict.NOT_APPLICABLE


# ====== registry ======

def test_registry(load):
    assert set(VERIFIERS) == {
        "serre", "tor_comparison", "dubreil_base", "extended_dubreil", "qb_codim2",
        "qb_general", "migliore", "resolution_structure", "euler", "amasaki",
    }
    assert get_verifier("amasaki_bound")[0] == "amasaki"
    with pytest.raises(UnknownTheoremError):
        run_verifier("fermat", [load("skew_lines_p3")])
    with pytest.raises(DimensionMismatchError):
        run_verifier("serre", [load("skew_lines_p3")])


def test_genericity_check():
    assert across_seeds(lambda s: 7, seed=3) == 7
    with pytest.raises(GenericityUncertainError) as info:
        across_seeds(lambda s: s, seed=3)
    assert info.value.seeds == [3, 4, 5]


@pytest.mark.parametrize("theorem_id,names", [
    ("amasaki", ["skew_lines_p3"]),
    ("euler", ["skew_lines_p3"]),
    ("resolution_structure", ["skew_lines_p3"]),
    ("migliore", ["point_p3_origin"]),
    ("serre", ["skew_lines_p3", "point_p3_generic"]),
    ("tor_comparison", ["skew_lines_p3", "point_p3_generic"]),
    pytest.param("qb_general", ["conic_line_p4"], marks=pytest.mark.slow),
    pytest.param("extended_dubreil", ["conic_line_p4"], marks=pytest.mark.slow),
])
def test_field_stability(load, theorem_id, names):
    result = field_stable(theorem_id, [load(name) for name in names])
    assert result["stable"], result["differences"]
    assert result["primes"] == [32003, SECOND_PRIME]
    assert result["verdicts"] == ["holds", "holds"]



# ====== reports ======

def test_report_matches_schema(load):
    with open(SCHEMA, encoding="utf-8") as handle:
        schema = json.load(handle)
    report = run_verifier("migliore", [load("skew_lines_p3")]).to_dict()
    assert set(schema["required"]) <= set(report) <= set(schema["properties"])
    inputs = schema["properties"]["inputs"]
    assert set(inputs["required"]) == set(report["inputs"])
    assert report["verdict"] in schema["properties"]["verdict"]["enum"]
    ideal = report["inputs"]["ideals"][0]
    assert set(ideal) <= set(inputs["properties"]["ideals"]["items"]["properties"])
    assert ideal["name"] == "skew_lines_p3"


def test_report_round_trip(load):
    report = run_verifier("euler", [load("skew_lines_p3")])
    again = VerificationReport.from_dict(json.loads(report.to_json()))
    assert again == report
    assert "euler: holds" in report.to_string()
