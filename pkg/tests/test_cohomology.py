import pytest

from idealcalc.cohomology import (
    comparison_module,
    default_window,
    deficiency_module,
    ext,
    ext_ideal,
    is_quasi_buchsbaum,
    present_quotient,
    top_cohomology_window,
    tor,
)
from idealcalc.errors import IdealCalcError, NotDisjointError, PreconditionError, UncertifiedWindowError
from idealcalc.ideal import Ideal
from idealcalc.modules import to_finite


def test_skew_lines_h1(load):
    H1 = deficiency_module(load("skew_lines_p3"), 1)
    assert H1.dims() == {0: 1}
    assert H1.certified
    assert H1.is_annihilated_by_maximal_ideal()


def test_rational_quartic_h1(load):
    H1 = deficiency_module(load("rational_quartic_p3"), 1)
    assert H1.dims() == {1: 1}
    assert H1.certified


@pytest.mark.parametrize("name", ["twisted_cubic_p3", "ci_22_p3", "line_x0x1_p3"])
def test_arithmetically_cohen_macaulay_curves(load, name):
    H1 = deficiency_module(load(name), 1)
    assert H1.is_zero()
    assert H1.certified


def test_three_skew_lines(load):
    I = load("three_skew_lines_p3")
    H1 = deficiency_module(I, 1)
    assert H1.dims() == {0: 2, 1: 2}
    qb = is_quasi_buchsbaum(I)
    assert not qb
    assert qb.failing == [1]


def test_conic_and_line(load):
    I = load("conic_line_p4")
    H1 = deficiency_module(I, 1)
    assert H1.total_dim() == 1
    qb = is_quasi_buchsbaum(I)
    assert qb.holds
    assert qb.to_dict()["modules"]["1"]["total"] == 1


def test_top_cohomology_of_a_point(load):
    I = load("point_p1")
    assert default_window(I) == (-4, 3)
    top = top_cohomology_window(I)
    assert not top.certified
    assert top.dims() == {-4: 4, -3: 3, -2: 2, -1: 1}
    with pytest.raises(UncertifiedWindowError):
        top.dim(-5)


def test_window_padding(load):
    I = load("point_p1")
    assert default_window(I, padding=2) == (-6, 5)


def test_deficiency_needs_saturated_ideal(S4):
    I = Ideal.parse(S4, ["x0^2", "x0*x1", "x0*x2", "x0*x3"])
    with pytest.raises(PreconditionError):
        deficiency_module(I, 1)


def test_deficiency_index_range(load):
    with pytest.raises(IdealCalcError):
        deficiency_module(load("skew_lines_p3"), 3)
    with pytest.raises(IdealCalcError):
        deficiency_module(load("skew_lines_p3"), 0)


def test_ext_of_cohen_macaulay_quotient(load):
    I = load("twisted_cubic_p3")
    assert ext(I, 0).num_generators == 0
    assert to_finite(ext(I, 1)).is_zero()
    canonical = ext(I, 2)
    assert canonical.num_generators == 2
    assert set(canonical.twists) == {-3}
    assert ext(I, 3).num_generators == 0


def test_hom_of_a_principal_ideal(load):
    E = ext_ideal(load("point_p1"), 0)
    assert E.twists == (-1,)
    assert [E.hilbert_function(d) for d in (-2, -1, 0, 1)] == [0, 1, 2, 3]


def test_present_quotient(S2):
    M = to_finite(present_quotient(Ideal.power(Ideal.maximal(S2), 2)))
    assert M.dims() == {0: 1, 1: 2}


def test_tor_of_complementary_lines(load):
    I, J = load("line_x0x1_p3"), load("line_x2x3_p3")
    assert tor(I, J, 0).dims() == {0: 1}
    assert tor(I, J, 1).is_zero()
    assert comparison_module(I, J).is_zero()


@pytest.mark.parametrize("i", [-1, 5])
def test_tor_outside_range_is_zero(load, i):
    assert tor(load("line_x0x1_p3"), load("line_x2x3_p3"), i).is_zero()


def test_comparison_equals_tor_one(load):
    I, J = load("skew_lines_p3"), load("point_p3_generic")
    comparison = comparison_module(I, J)
    assert not comparison.is_zero()
    assert comparison.dims() == tor(I, J, 1).dims()


def test_comparison_needs_disjoint_subschemes(load):
    with pytest.raises(NotDisjointError) as info:
        comparison_module(load("line_x0x1_p3"), load("line_x0x2_p3"))
    assert info.value.dimension == 1
    assert info.value.exit_code == 4


def test_comparison_needs_saturated_ideals(S4):
    unsaturated = Ideal(S4, [S4.parse(s) for s in ("x0^2", "x0*x1", "x0*x2", "x0*x3")])
    point = Ideal(S4, [S4.parse(s) for s in ("x1", "x2", "x3")])
    with pytest.raises(PreconditionError):
        comparison_module(unsaturated, point)
    with pytest.raises(PreconditionError):
        comparison_module(point, unsaturated)
    assert not tor(unsaturated, point, 0).is_zero()
