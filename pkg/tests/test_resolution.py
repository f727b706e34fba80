import pytest

from idealcalc.groebner import VectorElement
from idealcalc.ideal import Ideal, codim, hilbert_series
from idealcalc.modules import GradedModulePresentation
from idealcalc.resolution import (
    BettiTable,
    alpha,
    betti,
    check_exactness,
    depth_of_quotient,
    free_resolution,
    is_cohen_macaulay,
    minimal_resolution,
    minimize,
    nu,
    pd,
    quotient_resolution,
    regularity,
)

CORPUS_IDEALS = [
    "ci_22_p3", "line_x0x1_p3", "m2_p1", "plane_conic_p2", "point_p1", "point_p3_generic",
    "rational_quartic_p3", "skew_lines_p3", "three_points_p2", "three_skew_lines_p3",
    "twisted_cubic_p3", "plane_p4", "skew_planes_p4_cone",
]


def test_skew_lines_resolution(load):
    I = load("skew_lines_p3")
    R = minimal_resolution(I)
    assert [sorted(t) for t in R.twists[: R.length + 1]] == [[2, 2, 2, 2], [3, 3, 3, 3], [4]]
    assert R.ranks() == [4, 4, 1]
    assert R.is_minimal()
    assert regularity(I) == 2
    assert betti(I) == BettiTable({(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1})
    assert pd(I) == 3
    assert depth_of_quotient(I) == 1
    assert not is_cohen_macaulay(I)


def test_twisted_cubic_is_cohen_macaulay(load):
    I = load("twisted_cubic_p3")
    assert betti(I) == BettiTable({(0, 0): 1, (1, 2): 3, (2, 3): 2})
    assert pd(I) == 2
    assert is_cohen_macaulay(I)
    assert (nu(I), alpha(I)) == (3, 2)


def test_rational_quartic_regularity(load):
    I = load("rational_quartic_p3")
    assert regularity(I) == 3
    assert (nu(I), alpha(I)) == (4, 2)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_powers_of_the_maximal_ideal(S2, d):
    I = Ideal.power(Ideal.maximal(S2), d)
    assert nu(I) == d + 1
    assert alpha(I) == d
    assert betti(I) == BettiTable({(0, 0): 1, (1, d): d + 1, (2, d + 1): d})


@pytest.mark.parametrize("name", CORPUS_IDEALS)
def test_betti_numerator_matches_hilbert_series(load, name):
    I = load(name)
    assert betti(I).numerator() == list(hilbert_series(I).numerator)


@pytest.mark.parametrize("name", CORPUS_IDEALS)
def test_projective_dimension_bounds(load, name):
    I = load(name)
    N = I.ring.num_vars
    assert codim(I) <= pd(I) <= N
    assert is_cohen_macaulay(I) == (pd(I) == codim(I))


def test_schreyer_resolution_is_exact(load):
    I = load("rational_quartic_p3")
    R = free_resolution(I)
    assert R.length <= I.ring.num_vars
    assert check_exactness(R, range(0, 8))
    M = minimize(R)
    assert M.is_minimal()
    assert check_exactness(M, range(0, 8))
    assert M.betti() == minimal_resolution(I).betti()


def test_quotient_resolution_prepends_ring(load):
    I = load("three_points_p2")
    Q = quotient_resolution(I)
    assert Q.twists[0] == [0]
    assert Q.ranks() == [1, 3, 2]


def test_residue_field_resolution(S3):
    relations = [VectorElement.from_polynomial(x) for x in S3.gens()]
    k = GradedModulePresentation(S3, [0], relations)
    R = minimal_resolution(k)
    assert R.ranks() == [1, 3, 3, 1]
    assert pd(k) == 3
    assert R.betti()[(3, 3)] == 1


def test_zero_ideal_has_empty_resolution(S3):
    assert free_resolution(Ideal.zero(S3)).length == -1


def test_betti_table_output():
    table = BettiTable.from_twists([[0], [2, 2, 2], [3, 3]])
    assert table.ranks() == [1, 3, 2]
    assert table.regularity() == 1
    assert table.numerator() == [1, 0, -3, 2]
    assert table.to_dict() == {"0": {"0": 1}, "1": {"2": 3}, "2": {"3": 2}}
    assert table.to_csv().splitlines() == ["index,degree,rank", "0,0,1", "1,2,3", "2,3,2"]
    lines = str(table).splitlines()
    assert lines[1].split() == ["total:", "1", "3", "2"]
    assert lines[2].split() == ["0:", "1", ".", "."]
    assert lines[3].split() == ["1:", ".", "3", "2"]
