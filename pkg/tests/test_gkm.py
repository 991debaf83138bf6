import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f4gkm.gkm.export import full_graph_dot, quotient_dot
from f4gkm.gkm.functions import GkmFunction, check_gkm
from f4gkm.gkm.identities import (
    verify_e4_sum,
    verify_e_identities,
    verify_omega_values,
    verify_relations,
    verify_symbolic_derivation,
    verify_table1,
)
from f4gkm.gkm.lemma import Filtration, all_index_pairs, check_f_epsilon, check_recursion, expected_subset_size


def test_graph_counts(graph):
    assert graph.n_vertices == 1152
    assert graph.n_edges == 1152 * 24 // 2
    assert set(graph.degrees.tolist()) == {24}
    assert graph.check_edge_consistency() == []
    assert graph.intra_coset_roots_are_long()


def test_constants_and_tau_pass(B, graph):
    for name in ("t1", "g", "tau1", "g4", "omega"):
        assert check_gkm(graph, B[name]).passed, name
    assert check_gkm(graph, B.const(7, 0)).passed


def test_probe_violation(B, graph):
    vals = np.zeros_like(B["t1"].values)
    vals[0] = B["t1"].values[0]
    res = check_gkm(graph, GkmFunction(vals, 2, "probe"))
    s0 = B.weyl.reflection_index[B.weyl.roots.alpha0.weight]
    assert any({v.u, v.v} == {0, s0} for v in res.violations)
    # only edges at the identity can fail
    assert 0 < len(res.violations) <= 24


def test_threads_agree(B, graph):
    f = B["tau1"].with_sign_flipped(B.weyl.rho_index)
    a = check_gkm(graph, f, threads=1)
    b = check_gkm(graph, f, threads=3)
    assert [v.edge for v in a.violations] == [v.edge for v in b.violations]
    assert not a.passed


NAMES = ["t1", "t3", "g", "tau1", "tau2", "tau4", "g1"]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(NAMES), st.sampled_from(NAMES), st.integers(-3, 3)), min_size=1, max_size=3))
def test_closure_under_sums_and_products(B, graph, terms):
    f = B["g2"]
    for a, b, c in terms:
        f = f + (B[a] * B[b]).scale(c)
    assert check_gkm(graph, f).passed


def test_omega_and_g4_values(B):
    W = B.weyl
    r = W.rho_index
    assert B["omega"].at(0).is_zero()
    assert B["omega"].at(r) == -B.e_rho[2][4]
    assert B["g4"].at(r) == -B.e_t[4]
    assert B["omega"].equals(B.omega_expected())


def test_relations_and_identities(B):
    for c in verify_relations(B) + verify_e_identities(B) + verify_symbolic_derivation():
        assert c.passed, c.name
    assert verify_omega_values(B).passed


def test_relations_detect_fault(B):
    assert not all(c.passed for c in verify_relations(B, fault="relations"))


def test_half_difference_table(weyl):
    assert all(c.passed for c in verify_table1(weyl))
    assert verify_e4_sum(weyl).passed
    assert not all(c.passed for c in verify_table1(weyl, fault="table1"))


@pytest.mark.parametrize("n, size", [(0, 384), (1, 48), (2, 8), (3, 2), (4, 1)])
def test_filtration_subset_sizes(weyl, n, size):
    filt = Filtration(weyl)
    assert expected_subset_size(n) == size
    for I, J in all_index_pairs(n)[:6]:
        for eps in range(3):
            assert len(filt.subset(eps, I, J)) == size


def test_f_epsilon_and_recursion_examples(weyl):
    filt = Filtration(weyl)
    assert check_f_epsilon(filt, 1, (1,), (2,), 3).passed
    assert check_f_epsilon(filt, 0, (2, 3), (-1, 4), 2).passed
    rec = check_recursion(filt, 2, (4,), (-3,))
    assert rec.vertices == 48 and rec.comparisons == 48 * 3 and rec.mismatches == 0


def test_dot_export(graph):
    full = full_graph_dot(graph)
    assert full.startswith("graph gkm {")
    assert full.count(" -- ") == graph.n_edges
    q = quotient_dot(graph)
    assert q.count(" -- ") == len(graph.quotient_diagram())
    assert "768 edges" in q
