from math import comb

import pytest

from idealcalc.cohomology import present_quotient
from idealcalc.config import StabilizationStatus
from idealcalc.errors import IdealCalcError
from idealcalc.ideal import Ideal
from idealcalc.koszul import KoszulComplex, koszul_homology, koszul_homology_dims
from idealcalc.linear_change import random_linear_forms
from idealcalc.modules import to_finite


@pytest.fixture
def residue_field(S3):
    return to_finite(present_quotient(Ideal.maximal(S3)))


@pytest.mark.parametrize("i", [0, 1, 2, 3])
def test_residue_field_homology_is_exterior_algebra(S3, residue_field, i):
    result = koszul_homology(S3.gens(), residue_field, i)
    assert result.dims == {i: comb(3, i)}
    assert result.status is StabilizationStatus.CERTIFIED
    assert result.annihilated


def test_all_indices(S3, residue_field):
    dims = koszul_homology_dims(S3.gens()[:2], residue_field)
    assert dims == {0: {0: 1}, 1: {1: 2}, 2: {2: 1}}


def test_regular_sequence_on_windowed_ring(S3):
    S = to_finite(present_quotient(Ideal.zero(S3)), (0, 4))
    forms, _ = random_linear_forms(S3, 2, seed=4)
    h1 = koszul_homology(forms, S, 1)
    assert h1.status is StabilizationStatus.WINDOW_LIMITED
    assert h1.degrees == [2, 3, 4]
    assert h1.total_dim == 0
    assert koszul_homology(forms, S, 2).total_dim == 0
    assert koszul_homology(forms, S, 0, check_annihilation=False).dims == {1: 1, 2: 1, 3: 1, 4: 1}


def test_zero_form_shifts_module(S2):
    M = to_finite(present_quotient(Ideal.parse(S2, ["x0^2", "x1"])))
    assert koszul_homology([S2.zero()], M, 1).dims == {1: 1, 2: 1}


def test_differentials_square_to_zero(S3, residue_field):
    M = to_finite(present_quotient(Ideal.parse(S3, ["x0^2", "x1^2", "x2^2"])))
    forms, _ = random_linear_forms(S3, 3, seed=2)
    K = KoszulComplex(forms, M)
    for i in range(2, 4):
        for e in range(0, 3):
            composite = M.field.matmul(K.differential(i - 1, e + 1), K.differential(i, e))
            assert not composite.any()


def test_index_outside_range(S3, residue_field):
    result = koszul_homology(S3.gens(), residue_field, 4)
    assert result.dims == {}
    assert result.total_dim == 0


def test_forms_must_be_linear(S3, residue_field):
    with pytest.raises(IdealCalcError):
        koszul_homology([S3.parse("x0^2")], residue_field, 0)


def test_result_to_dict(S3, residue_field):
    out = koszul_homology(S3.gens(), residue_field, 1).to_dict()
    assert out == {"index": 1, "degrees": {"1": 3}, "total": 3, "certified": True, "annihilated": True}
