import pytest

from f4gkm.gkm.rank import Inconclusive, RankResult, degree_rank, degree_rank_result, subgroup_chain
from f4gkm.linalg import ResourceCapExceeded
from f4gkm.suites import rank_suite


def test_subgroup_chain_orders(graph):
    assert [len(h) for h in subgroup_chain(graph)] == [1, 2, 8, 48, 384, 1152]


@pytest.mark.parametrize("d, want", [(0, 1), (1, 8)])
def test_low_degree_ranks(B, d, want):
    res = degree_rank_result(B, d)
    assert res.exact and res.rank == want
    assert degree_rank(B, d) == want


def test_inconclusive_bounds():
    res = RankResult(1, 9, 8, 7)
    assert not res.exact
    with pytest.raises(Inconclusive):
        _ = res.rank


def test_cell_cap(B):
    with pytest.raises(ResourceCapExceeded) as exc:
        degree_rank_result(B, 2, cell_cap=10)
    assert exc.value.cap == "rank_cells"


def test_rank_fault_is_detected():
    checks, res, expected = rank_suite(1, fault="rank")
    assert expected == 8
    assert not all(c.passed for c in checks)
