import json

import numpy as np
import pytest

from idealcalc import fuzz
from idealcalc.errors import UnknownTheoremError
from idealcalc.field import Field
from idealcalc.fuzz import (
    CURVE_FAMILIES,
    PAIR_FAMILIES,
    CampaignSummary,
    curve_family,
    fuzz_targets,
    instance_seed,
    koszul_properties,
    pair_family,
    random_finite_module,
    resolve_target,
    run_campaign,
    run_instance,
)
from idealcalc.ideal import codim, krull_dim, meet_dimension
from idealcalc.linear_change import random_linear_forms
from idealcalc.polynomial import PolynomialRing

F = Field(32003)


def test_instance_seed_is_injective_per_campaign():
    seeds = {instance_seed(1, k) for k in range(1000)}
    assert len(seeds) == 1000
    assert instance_seed(2, 0) != instance_seed(1, 0)


def test_run_instance_replays():
    assert run_instance("dubreil_base", 3, 7, 32003) == run_instance("dubreil_base", 3, 7, 32003)


@pytest.mark.parametrize("index", range(len(PAIR_FAMILIES)))
def test_pair_families_are_disjoint(index):
    rng = np.random.default_rng(instance_seed(1, index))
    family, (I, J) = pair_family(index, rng, F)
    assert family == PAIR_FAMILIES[index]
    assert meet_dimension(I, J) == 0


@pytest.mark.parametrize("index,num_vars", [(0, 4), (5, 4), (6, 5), pytest.param(7, 5, marks=pytest.mark.slow)])
def test_curve_families_cover_p3_and_p4(index, num_vars):
    rng = np.random.default_rng(instance_seed(1, index))
    family, (I,) = curve_family(index, rng, F)
    assert family == CURVE_FAMILIES[index]
    assert I.ring.num_vars == num_vars
    assert krull_dim(I) == 2
    assert codim(I) == num_vars - 2


def test_targets():
    assert "koszul" in fuzz_targets()
    assert resolve_target("verify_serre") == "serre"
    with pytest.raises(UnknownTheoremError):
        resolve_target("no_such_theorem")


def test_dubreil_campaign_hits_maximal_powers():
    summary = run_campaign("dubreil_base", 12, seed=1)
    by_id = {inst["id"]: inst for inst in summary.instances}
    assert summary.violations == []
    assert by_id[0]["family"] == "maximal_power_1"
    assert by_id[10]["family"] == "maximal_power_2"
    assert by_id[0]["report"]["quantities"]["slack"] == 0
    assert by_id[10]["report"]["quantities"]["slack"] == 0


def test_serre_campaign():
    summary = run_campaign("serre", 12, seed=3)
    counts = summary.verdict_counts()
    assert counts["violated"] == 0
    assert counts["error"] == 0
    assert set(summary.family_counts()) == set(PAIR_FAMILIES)


def test_tor_comparison_campaign():
    summary = run_campaign("tor_comparison", 7, seed=2)
    assert summary.verdict_counts()["holds"] == 7
    assert summary.instances[-1]["family"] == "plane_curve_point"


def test_koszul_campaign():
    summary = run_campaign("koszul", 6, seed=1)
    assert summary.violations == []
    for inst in summary.instances:
        assert inst["report"]["quantities"]["failures"] == {}


def test_koszul_properties_on_one_module():
    rng = np.random.default_rng(5)
    ring = PolynomialRing.standard(3, F)
    M = random_finite_module(ring, rng)
    forms, _ = random_linear_forms(ring, 2, 11)
    result = koszul_properties(M, forms, rng)
    assert result["numForms"] == 2
    assert result["failures"] == {}


def test_witness_files_written(tmp_path, monkeypatch):
    def fake(theorem_id, index, seed, prime):
        verdict = "violated" if index == 1 else "holds"
        return {"id": index, "family": "fake", "verdict": verdict, "report": {"theoremId": theorem_id}}

    monkeypatch.setattr(fuzz, "run_instance", fake)
    summary = run_campaign("amasaki", 3, seed=4, witness_dir=str(tmp_path))
    assert [inst["id"] for inst in summary.violations] == [1]
    assert len(summary.witness_files) == 1
    with open(summary.witness_files[0], encoding="utf-8") as handle:
        assert json.load(handle)["id"] == 1
    assert summary.witness_files[0].endswith("amasaki_4_1.json")


def test_summary_counts_errors():
    summary = CampaignSummary("serre", 2, 1, 32003, [
        {"id": 0, "family": "a", "verdict": "holds"},
        {"id": 1, "family": "a", "verdict": "error", "error": "boom"},
    ])
    assert summary.verdict_counts()["error"] == 1
    assert summary.family_counts() == {"a": {"holds": 1, "error": 1}}
    assert len(summary.to_dict()["errors"]) == 1


@pytest.mark.parametrize("instances,expected", [
    ([], 0),
    ([{"verdict": "holds"}], 0),
    ([{"verdict": "error", "exitCode": 3}, {"verdict": "error", "exitCode": 4}], 4),
    ([{"verdict": "error", "exitCode": 3}, {"verdict": "violated"}], 5),
    ([{"verdict": "error"}], 2),
])
def test_summary_exit_code(instances, expected):
    summary = CampaignSummary("serre", len(instances), 1, 32003,
                              [dict(inst, id=k, family="a") for k, inst in enumerate(instances)])
    assert summary.exit_code() == expected


@pytest.mark.slow
def test_workers_do_not_change_results():
    serial = run_campaign("dubreil_base", 20, seed=9, workers=1)
    pooled = run_campaign("dubreil_base", 20, seed=9, workers=2)
    assert serial.instances == pooled.instances


@pytest.mark.slow
@pytest.mark.parametrize("target,count", [
    ("serre", 200),
    ("dubreil_base", 500),
    ("koszul", 100),
    ("tor_comparison", 50),
])
def test_full_campaigns(target, count):
    summary = run_campaign(target, count, seed=1, workers=2)
    assert summary.violations == []
    assert summary.verdict_counts()["error"] == 0


@pytest.mark.slow
def test_serre_campaign_covers_both_sides_of_the_criterion():
    summary = run_campaign("serre", 200, seed=1, workers=2)
    equal = [inst["report"]["quantities"]["productEqualsIntersection"] for inst in summary.instances
             if inst["verdict"] != "error"]
    assert summary.violations == []
    assert equal.count(True) >= 50
    assert equal.count(False) >= 50


@pytest.mark.slow
@pytest.mark.parametrize("target", ["extended_dubreil", "migliore", "qb_codim2", "qb_general"])
def test_curve_campaigns(target):
    summary = run_campaign(target, 200, seed=1, workers=2)
    assert summary.violations == []
    assert summary.verdict_counts()["error"] == 0
    assert summary.verdict_counts()["holds"] > 0
    assert set(summary.family_counts()) == set(CURVE_FAMILIES)
    if target == "qb_general":
        assert any("topAnnihilatorDim" in inst["report"]["quantities"]
                   for inst in summary.instances if inst["family"].endswith("_p4"))
