from fractions import Fraction

import pytest

from f4gkm.lattice import GAMMA, NotARoot, Weight, inner_product, reflect, root_system, t, weight_from_t


def test_root_counts():
    R = root_system()
    assert len(R.roots) == 48
    assert len(R.long) == 24 and len(R.short) == 24
    assert len(R.positive) == 24
    assert all(r.positive for r in R.roots[:24])


def test_t4_and_alpha4_coordinates():
    assert t(4).coeffs == (-1, -1, -1, 2)
    R = root_system()
    assert R.simple[4].weight.coeffs == (1, 0, 0, -1)
    assert R.simple[4].weight == t(1) - GAMMA


def test_gram_matrix():
    assert inner_product(t(1), t(1)) == 1
    assert inner_product(t(1), t(2)) == 0
    assert inner_product(t(1), GAMMA) == Fraction(1, 2)
    assert inner_product(GAMMA, GAMMA) == 1
    assert inner_product(t(4), t(4)) == 1


def test_inner_product_denominators_divide_four():
    R = root_system()
    for a in R.roots:
        for b in R.roots:
            assert 4 % inner_product(a, b).denominator == 0


def test_gamma_is_half_e1():
    assert weight_from_t([Fraction(1, 2)] * 4) == GAMMA


def test_root_lengths():
    R = root_system()
    assert {inner_product(r, r) for r in R.long} == {2}
    assert {inner_product(r, r) for r in R.short} == {1}


def test_reflections_permute_roots():
    R = root_system()
    ws = {r.weight for r in R.roots}
    for a in R.roots:
        assert {reflect(a, b.weight) for b in R.roots} == ws
        assert reflect(a, a.weight) == -a.weight


def test_simple_roots():
    R = root_system()
    assert R.simple[1].weight == t(2) - t(3)
    assert R.simple[2].weight == t(3) - t(4)
    assert R.simple[3].weight == t(4)
    assert R.simple[4].weight.t_coordinates() == tuple(Fraction(x, 2) for x in (1, -1, -1, -1))
    assert [R.simple[i].long for i in (1, 2, 3, 4)] == [True, True, False, False]
    assert R.alpha0.weight == t(1) - t(2) and R.alpha0.long


def test_canonical_sign():
    w = -t(1)
    assert w.canonical_sign() == t(1)
    assert not t(4).is_positive()
    assert (-t(4)).is_positive()


def test_root_of_rejects_non_roots():
    R = root_system()
    with pytest.raises(NotARoot):
        R.root_of(Weight((2, 0, 0, 0)))


def test_weight_str():
    assert str(t(1) - GAMMA) == "t1-g"
