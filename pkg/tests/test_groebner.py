import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idealcalc.errors import DegreeGuardExceeded, InhomogeneousInputError, OrderError, RingMismatchError
from idealcalc.field import Field
from idealcalc.groebner import (
    VectorElement,
    buchberger,
    eliminate,
    minimal_generators,
    normal_form,
    reduce_with_quotients,
    syzygies,
    syzygy_module,
)
from idealcalc.polynomial import MonomialOrder, PolynomialRing, mono_divides, monomials_of_degree

R3 = PolynomialRing.standard(3, Field(101))


def _form(degree, coefficients):
    mons = monomials_of_degree(3, degree)
    return sum((R3.monomial(m, c) for m, c in zip(mons, coefficients)), R3.zero())


homogeneous_lists = st.lists(
    st.tuples(st.integers(1, 3), st.lists(st.integers(0, 100), min_size=10, max_size=10)),
    min_size=1, max_size=3,
).map(lambda items: [_form(d, cs) for d, cs in items])


def _combination(vector, polys):
    return sum((vector.entry(k) * p for k, p in enumerate(polys)), polys[0].ring.zero())


def test_twisted_cubic_basis(S4):
    gens = [S4.parse(t) for t in ("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")]
    G = buchberger(gens)
    assert len(G) == 3
    assert sorted(e for _, e in G.leads) == sorted([(0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)])
    assert G.contains(S4.parse("x0*x2 - x1^2") * S4.var(3))
    assert not G.contains(S4.parse("x0*x3"))


def test_normal_form_and_quotients(S3):
    G = buchberger([S3.parse("x0^2"), S3.parse("x1^2")])
    f = S3.parse("x0^2*x2 + x1^3 + x0*x1")
    assert normal_form(f, G) == S3.parse("x0*x1")
    r, quotients = reduce_with_quotients(VectorElement.from_polynomial(f), G)
    rebuilt = r.to_polynomial()
    for q, g in zip(quotients, G.polynomials()):
        rebuilt = rebuilt + sum((S3.monomial(m, c) for m, c in q.items()), S3.zero()) * g
    assert rebuilt == f


def test_inhomogeneous_rejected(S3):
    with pytest.raises(InhomogeneousInputError):
        buchberger([S3.parse("x0^2 + x1")])


def test_degree_guard(S3):
    with pytest.raises(DegreeGuardExceeded) as info:
        buchberger([S3.parse("x0^3")], degree_guard=2)
    assert info.value.exit_code == 3


def test_mixed_modules_rejected(S3, S4):
    with pytest.raises(RingMismatchError):
        buchberger([S3.var(0), S4.var(0)])


def test_elimination():
    S = PolynomialRing(["t", "x", "y"], order=MonomialOrder.elimination(1))
    G = buchberger([S.parse("x - t"), S.parse("y - t")], S.order)
    assert eliminate(G).polynomials() == [S.parse("x - y")]
    with pytest.raises(OrderError):
        eliminate(buchberger([S.parse("x")], MonomialOrder.grevlex()))


def test_syzygies_of_two_variables(S2):
    G = buchberger([S2.var(0), S2.var(1)])
    syz = syzygies(G)
    assert len(syz) == 1
    assert _combination(syz[0], G.polynomials()) == S2.zero()
    assert syz[0].degree() == 2


def test_syzygy_module_kernel(S3):
    columns = [VectorElement.from_polynomial(S3.parse(t)) for t in ("x0", "x1", "x2")]
    kernel = syzygy_module(columns)
    assert len(kernel) == 3
    polys = [c.to_polynomial() for c in columns]
    assert all(_combination(k, polys) == S3.zero() for k in kernel)
    assert all(k.degree() == 2 for k in kernel)


def test_minimal_generators(S3):
    gens = [S3.parse("x0"), S3.parse("x0*x1"), S3.parse("x1"), S3.parse("x0 + x1")]
    assert len(minimal_generators(gens)) == 2


def test_vector_arithmetic(S3):
    v = VectorElement.from_entries(S3, [S3.var(0), S3.var(1)])
    w = VectorElement.from_entries(S3, [S3.var(1), S3.zero()])
    assert (v + w).entries() == [S3.parse("x0 + x1"), S3.var(1)]
    assert (v - v).is_zero()
    assert v.mul_polynomial(S3.var(2)).entries() == [S3.parse("x0*x2"), S3.parse("x1*x2")]


@settings(max_examples=30, deadline=None)
@given(homogeneous_lists)
def test_reduced_basis_properties(gens):
    G = buchberger(gens)
    for g in gens:
        assert G.contains(g)
    leads = [e for _, e in G.leads]
    for i, a in enumerate(leads):
        for j, b in enumerate(leads):
            if i != j:
                assert not mono_divides(a, b)
    for g in G.polynomials():
        assert g.leading_coefficient() == 1
    # every S-pair reduces to zero, otherwise this raises
    for s in syzygies(G):
        assert _combination(s, G.polynomials()) == R3.zero()
