import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f4gkm.lattice import GAMMA, root_system, t
from f4gkm.weyl import (
    COSET_LABELS,
    CosetLabel,
    GroupTooLarge,
    WeylElement,
    generate_group,
    reflection_of,
    root_pair_action,
)

idx = st.integers(min_value=0, max_value=1151)


def test_orders(weyl):
    assert weyl.order == 1152
    assert len(weyl.spin8) == 192


def test_group_is_closed_and_identity_first(weyl):
    assert weyl.group.is_closed()
    assert weyl.group.elements[0] == WeylElement.identity()


@settings(max_examples=10_000, deadline=None)
@given(idx, idx, idx)
def test_associativity(weyl, a, b, c):
    mul = weyl.group.mul
    assert mul[mul[a, b], c] == mul[a, mul[b, c]]


def test_associativity_against_matrices(weyl):
    rng = np.random.default_rng(0)
    g = weyl.group
    for a, b in rng.integers(0, 1152, size=(500, 2)):
        assert np.array_equal(g.matrices[g.mul[a, b]], g.matrices[a] @ g.matrices[b])


def test_inverse_table(weyl):
    g = weyl.group
    assert np.all(g.mul[np.arange(1152), g.inv] == 0)


def test_elements_preserve_inner_product(weyl):
    from f4gkm.lattice import GRAM

    G = np.array(GRAM, dtype=object)
    for m in weyl.group.matrices[::37]:
        M = m.astype(object)
        assert (M.T @ G @ M == G).all()


def test_rho_and_kappa(weyl):
    rho, kappa = weyl.rho, weyl.kappa
    e = WeylElement.identity()
    assert rho**3 == e
    assert kappa @ kappa == e
    assert kappa @ rho == rho**2 @ kappa
    assert rho.apply(t(4)) == GAMMA - t(4)
    assert (rho**2).apply(t(4)) == -GAMMA
    for i in (1, 2, 3):
        assert rho.apply(t(i)) == t(i) - GAMMA


def test_cosets_partition(weyl):
    sizes = [len(weyl.members(lab)) for lab in COSET_LABELS]
    assert sizes == [192] * 6
    assert weyl.coset_of_index(0) == CosetLabel(0, 0)
    assert weyl.coset_of_index(weyl.rho_index) == CosetLabel(1, 0)
    assert weyl.coset_of_index(weyl.kappa_index) == CosetLabel(0, 1)
    assert len(weyl.spin9_coset(1)) == 384


def test_classification_is_right_invariant(weyl):
    g = weyl.group
    codes = weyl.coset_code()
    for h in weyl.spin8_indices[:20]:
        assert np.array_equal(codes[g.mul[:, h]], codes)


def test_root_pair_action(weyl):
    assert root_pair_action(weyl, weyl.rho) == (1, 2, 0)
    assert root_pair_action(weyl, weyl.kappa) == (0, 2, 1)


def test_generate_group_cap():
    R = root_system()
    with pytest.raises(GroupTooLarge):
        generate_group([reflection_of(R.simple[i]) for i in (1, 2, 3, 4)], cap=100)


def test_reflection_is_involution():
    for r in root_system().roots:
        s = reflection_of(r)
        assert s @ s == WeylElement.identity()
        assert s.determinant() == -1


def test_coset_label_str():
    assert str(CosetLabel(1, 1)) == "rhokappaW"
    assert str(CosetLabel(0, 0)) == "W"
