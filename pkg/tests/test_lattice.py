from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from orbichow.lattice import (
    WeightVector,
    alpha,
    dual_kernel_basis,
    gamma,
    hermite_normal_form,
    in_alpha_image,
    same_cone,
    smith_invariant_factors,
    theta_value,
)


def test_weight_vector_validation():
    w = WeightVector.p((2, 3, 5))
    assert w.n == 2 and w.lcm == 30
    with pytest.raises(ValueError):
        WeightVector.p((2, 4))  # gcd 2
    with pytest.raises(ValueError):
        WeightVector.p((0, 1))
    with pytest.raises(ValueError):
        WeightVector.p(())
    WeightVector.w((2, 4))  # multiplicities carry no gcd constraint


def test_well_formed_reported_not_enforced():
    assert WeightVector.p((2, 3, 5)).well_formed
    assert not WeightVector.p((2, 3, 4)).well_formed  # gcd(2, 4) = 2
    assert WeightVector.p((1,)).well_formed


def test_gamma_examples():
    p = WeightVector.p((2, 3, 5))
    assert gamma((2, 3, 5), p) == 1
    assert gamma((0, 0, 0), p) == 0
    assert gamma((3, 4, 10), p) == Q(4, 3)
    with pytest.raises(ValueError):
        gamma((1, 2), p)


def test_alpha_examples():
    p = WeightVector.p((2, 3, 5))
    assert alpha((2, 3, 5), p) == (0, 0, 0)
    assert alpha((1, 0, 0), p) == (1, 0, 0)
    assert alpha((3, 4, 10), p) == (Q(1, 3), 0, Q(10, 3))


def test_same_cone_examples():
    assert not same_cone((1, 0), (0, 1))
    assert same_cone((1, 0, 0), (2, 0, 0))
    assert same_cone((0, 1, 1), (0, 2, 0))


def test_dual_kernel_basis_examples():
    assert dual_kernel_basis((1, 1)) == [(-1, 1)]

    # all-ones weights: the kernel lattice of consecutive differences
    for n1 in range(2, 6):
        basis = dual_kernel_basis((1,) * n1)
        expected = [
            tuple(1 if j == i else (-1 if j == i + 1 else 0) for j in range(n1))
            for i in range(n1 - 1)
        ]
        assert hermite_normal_form(basis) == hermite_normal_form(expected)

    basis = dual_kernel_basis((2, 3, 5))
    expected = [(3, -2, 0), (1, 1, -1)]
    assert hermite_normal_form(basis) == hermite_normal_form(expected)
    for theta in basis:
        assert theta_value(theta, (2, 3, 5)) == 0
    assert smith_invariant_factors(basis) == [1, 1]


def test_in_alpha_image_examples():
    assert in_alpha_image((Q(1, 2), 0), (1, 2))
    assert not in_alpha_image((Q(1, 2), Q(1, 2)), (1, 2))
    assert in_alpha_image((0, 0), (1, 2))
    # denominator not dividing lcm(p)
    assert not in_alpha_image((Q(1, 7), 0), (1, 2))


small_int_vecs = st.integers(min_value=2, max_value=4).flatmap(
    lambda n1: st.tuples(
        st.lists(st.integers(-9, 9), min_size=n1, max_size=n1),
        st.lists(st.integers(-9, 9), min_size=n1, max_size=n1),
        st.lists(st.integers(1, 6), min_size=n1, max_size=n1),
    )
)


@given(small_int_vecs)
def test_alpha_descends_and_composes(data):
    a, b, praw = data
    from math import gcd

    if gcd(*praw) != 1:
        praw[0] = 1
    p = WeightVector.p(tuple(praw))
    ra = alpha(a, p)
    assert gamma(ra, p) == 0
    assert in_alpha_image(ra, p)
    total = alpha([x + y for x, y in zip(a, b)], p)
    assert total == alpha([x + y for x, y in zip(ra, alpha(b, p))], p)
    # additivity happens exactly on a shared cone
    additive = total == tuple(x + y for x, y in zip(ra, alpha(b, p)))
    assert additive == same_cone(ra, alpha(b, p))


@given(small_int_vecs)
def test_alpha_image_has_zero_support(data):
    a, _, praw = data
    from math import gcd

    if gcd(*praw) != 1:
        praw[0] = 1
    p = WeightVector.p(tuple(praw))
    ra = alpha(a, p)
    assert any(x == 0 for x in ra)
    m = p.lcm
    assert all((x * m).denominator == 1 for x in ra)


def test_smith_invariant_factors_basic():
    assert smith_invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert smith_invariant_factors([[1, 0], [0, 1]]) == [1, 1]
    assert smith_invariant_factors([[2, 4], [4, 8]]) == [2]
    assert smith_invariant_factors([[0, 0]]) == []


def test_hermite_normal_form_canonical():
    a = [(1, 2, 3), (0, 1, 1)]
    b = [(1, 3, 4), (0, 1, 1)]  # row-equivalent over Z
    assert hermite_normal_form(a) == hermite_normal_form(b)
    assert hermite_normal_form([(0, 0)]) == ()
