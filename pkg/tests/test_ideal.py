import pytest

from idealcalc.errors import InhomogeneousInputError, RingMismatchError
from idealcalc.field import Field
from idealcalc.ideal import (
    Ideal,
    are_disjoint,
    codim,
    ideal_intersect,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    is_saturated,
    krull_dim,
    meet_dimension,
    saturate,
)


def test_intersection_of_skew_lines(load):
    I, J = load("line_x0x1_p3"), load("line_x2x3_p3")
    meet = ideal_intersect(I, J)
    assert meet == load("skew_lines_p3")
    assert ideal_product(I, J) == meet


def test_product_inside_intersection(load):
    I, J = load("skew_lines_p3"), load("point_p3_generic")
    product, meet = I * J, I.intersect(J)
    assert product.is_subset(meet)
    assert product != meet
    assert meet.is_subset(I) and meet.is_subset(J)


def test_sum_and_membership(S3):
    I = Ideal.parse(S3, ["x0"]) + Ideal.parse(S3, ["x1"])
    assert I.contains(S3.parse("x0*x2 + x1^2"))
    assert not I.contains(S3.parse("x2"))
    assert I == Ideal.parse(S3, ["x1", "x0 + x1"])


def test_quotient(S2):
    I = Ideal.parse(S2, ["x0^2", "x0*x1"])
    assert ideal_quotient(I, Ideal.parse(S2, ["x0"])) == Ideal.parse(S2, ["x0", "x1"])
    assert I.quotient(Ideal.zero(S2)).is_unit()


def test_saturation(S3):
    I = Ideal.parse(S3, ["x0^2", "x0*x1", "x0*x2"])
    assert not is_saturated(I)
    assert saturate(I) == Ideal.parse(S3, ["x0"])
    assert saturate(I).is_saturated()
    assert saturate(Ideal.maximal(S3)).is_unit()


def test_dimensions(load):
    cubic = load("twisted_cubic_p3")
    assert krull_dim(cubic) == 2
    assert codim(cubic) == 2
    assert krull_dim(Ideal.unit(cubic.ring)) == -1
    assert krull_dim(Ideal.zero(cubic.ring)) == 4


def test_meet_dimension(load):
    assert meet_dimension(load("line_x0x1_p3"), load("line_x2x3_p3")) == 0
    assert meet_dimension(load("line_x0x1_p3"), load("line_x0x2_p3")) == 1
    assert are_disjoint(load("point_p3_generic"), load("point_p3_origin"))
    assert not are_disjoint(load("line_x0x1_p3"), load("line_x0x2_p3"))


def test_power_of_maximal_ideal(S2):
    m3 = Ideal.power(Ideal.maximal(S2), 3)
    assert len(m3.reduced_generators()) == 4
    assert Ideal.power(Ideal.maximal(S2), 0).is_unit()


def test_inhomogeneous_generator_rejected(S3):
    with pytest.raises(InhomogeneousInputError):
        Ideal.parse(S3, ["x0^2 + x1"])


def test_ring_mismatch(S3, S4):
    with pytest.raises(RingMismatchError):
        ideal_sum(Ideal.maximal(S3), Ideal.maximal(S4))


def test_over_field_keeps_name_and_shape(load):
    I = load("rational_quartic_p3")
    J = I.over_field(Field(31991))
    assert J.name == I.name
    assert J.ring.field.characteristic == 31991
    assert J.hilbert_series() == I.hilbert_series()


def test_equality_ignores_generating_set(S3):
    I = Ideal.parse(S3, ["x0", "x1"])
    J = Ideal.parse(S3, ["x0 + x1", "x0 - x1", "x0*x2"])
    assert I == J
    assert hash(I) == hash(J)
