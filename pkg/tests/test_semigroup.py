from fractions import Fraction as Q

import pytest

from orbichow.lattice import WeightVector, alpha, gamma, in_alpha_image
from orbichow.semigroup import (
    decompose_alpha_witness,
    decompose_in_semigroup,
    realize_gamma,
    s_generators,
    t_generators,
    t_membership,
    verify_lemma31,
)

P235 = WeightVector.p((2, 3, 5))


def test_s_generators_235():
    sg = s_generators(P235)
    assert sg.fractional[2] == (
        (Q(2, 5), Q(3, 5), 0),
        (Q(4, 5), Q(1, 5), 0),
        (Q(1, 5), Q(4, 5), 0),
        (Q(3, 5), Q(2, 5), 0),
    )
    assert sg.fractional[0] == ((0, Q(1, 2), Q(1, 2)),)
    # entry i of every member of the i-th family vanishes, and all are images
    for i, fam in enumerate(sg.fractional):
        assert len(fam) == P235[i] - 1
        for g in fam:
            assert g[i] == 0
            assert in_alpha_image(g, P235)


def test_s_generators_trivial_weights():
    sg = s_generators((1, 1, 1))
    assert all(fam == () for fam in sg.fractional)
    assert sg.all_generators() == list(sg.unit_vectors)


def test_pruned_generators_match_worked_example():
    # the double generator with the same support is removed, leaving the
    # squarefree representative of denominator 3
    pruned = [g for g, _, _ in s_generators(P235).pruned_fractional()]
    assert (Q(2, 3), 0, Q(2, 3)) not in pruned
    assert pruned == [
        (0, Q(1, 2), Q(1, 2)),
        (Q(1, 3), 0, Q(1, 3)),
        (Q(2, 5), Q(3, 5), 0),
        (Q(4, 5), Q(1, 5), 0),
        (Q(1, 5), Q(4, 5), 0),
        (Q(3, 5), Q(2, 5), 0),
    ]


def test_t_generators_examples():
    tg = t_generators(P235)
    assert tg.generators == (Q(1, 6), Q(1, 10), Q(1, 15))
    assert tg.ell == Q(1, 30)
    assert t_generators((1, 1, 1)).generators == (Q(1),)
    assert t_generators((1, 2, 4)).generators == (Q(1, 2), Q(1, 4))
    with pytest.raises(ValueError):
        t_generators((1,))


def test_t_membership_examples():
    assert t_membership(Q(0), P235, 10)
    assert not t_membership(Q(1, 30), P235, 10)
    assert t_membership(Q(4, 15), P235, 10)  # 1/6 + 1/10
    assert not t_membership(Q(4, 15), P235, 1)  # needs two generators


def test_decompose_in_semigroup():
    gens = [(Q(1), Q(0)), (Q(0), Q(1)), (Q(1, 2), Q(1, 2))]
    assert decompose_in_semigroup((Q(3, 2), Q(1, 2)), gens) == [1, 0, 1]
    assert decompose_in_semigroup((Q(1, 3), Q(0)), gens) is None
    assert decompose_in_semigroup((0, 0), gens) == [0, 0, 0]


def test_alpha_witness_construction():
    import itertools

    for p in [(2, 3, 5), (1, 2), (3, 4), (2, 2, 3)]:
        pw = WeightVector.p(p)
        sg = s_generators(pw)
        for a in itertools.product(range(-3, 4), repeat=len(p)):
            witness = decompose_alpha_witness(a, pw)
            assert witness is not None, (p, a)
            total = [Q(0)] * len(p)
            if witness["fractional"] is not None:
                j, k = witness["fractional"]
                total = [x + y for x, y in zip(total, sg.fractional[j][k - 1])]
            total = [x + c for x, c in zip(total, witness["units"])]
            assert tuple(total) == alpha(a, pw)


def test_realize_gamma_hits_pairwise_targets():
    from math import lcm

    for p in [(2, 3, 5), (1, 2), (1, 1), (2, 2, 3), (4, 6, 9), (1, 3, 9)]:
        pw = WeightVector.p(p)
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                b = realize_gamma(pw, i, j)
                assert gamma(b, pw) == Q(1, lcm(p[i], p[j]))


def test_verify_lemma31_examples():
    assert verify_lemma31((1, 1), 3).ok
    assert verify_lemma31((2, 3, 5), 4).ok
    rep = verify_lemma31((2, 3), 5)
    assert rep.ok
    payload = rep.to_json()
    assert payload["pass"] is True and payload["counterexamples"] == []
    # gamma values of generator sums are multiples of 1/6 for weights (2, 3)
    from orbichow.semigroup import decompose_over_t

    sg = s_generators((2, 3))
    import itertools

    for size in range(1, 5):
        for combo in itertools.combinations_with_replacement(sg.all_generators(), size):
            total = tuple(sum(col, Q(0)) for col in zip(*combo))
            g = gamma(total, (2, 3))
            assert (g * 6).denominator == 1
            assert decompose_over_t(g, (2, 3)) is not None
