import pytest

from idealcalc import linear_change
from idealcalc.errors import DegenerateDrawError, DimensionMismatchError
from idealcalc.linear_change import LinearChange, apply_change, random_linear_forms


def test_same_seed_same_forms(S4):
    first, _ = random_linear_forms(S4, 3, seed=5)
    second, _ = random_linear_forms(S4, 3, seed=5)
    other, _ = random_linear_forms(S4, 3, seed=6)
    assert first == second
    assert first != other
    assert all(f.degree() == 1 and f.is_homogeneous() for f in first)


def test_too_many_forms(S4):
    with pytest.raises(DimensionMismatchError):
        random_linear_forms(S4, 5, seed=1)


def test_degenerate_draws_give_up(S4, monkeypatch):
    monkeypatch.setattr(linear_change, "rank", lambda field, matrix: 0)
    with pytest.raises(DegenerateDrawError):
        random_linear_forms(S4, 2, seed=1)


def test_inverse_undoes_change(S4):
    _, change = random_linear_forms(S4, 4, seed=11)
    f = S4.parse("x0*x2 - x1^2 + x3^2")
    assert apply_change(apply_change(f, change), change.inverse()) == f


def test_permutation(S4):
    swap = LinearChange.permutation(S4, [1, 0, 2, 3])
    assert swap.apply(S4.parse("x0^2*x3")) == S4.parse("x1^2*x3")
    assert LinearChange.identity(S4).apply(S4.var(2)) == S4.var(2)


def test_change_preserves_hilbert_series(load):
    I = load("twisted_cubic_p3")
    _, change = random_linear_forms(I.ring, 4, seed=3)
    moved = I.apply_change(change)
    assert moved != I
    assert moved.hilbert_series().reduced() == I.hilbert_series().reduced()


def test_wrong_ring_size(S3, S4):
    _, change = random_linear_forms(S4, 1, seed=1)
    with pytest.raises(DimensionMismatchError):
        apply_change(S3.var(0), change)
