import numpy as np
import pytest

from f4gkm.linalg import (
    LARGE_PRIME,
    IncrementalEchelon,
    matmul_modp,
    rank_gf2,
    rank_modp_dense,
    rank_modp_sparse,
    rank_tall_modp,
    rref_modp,
    solve_rational,
)


def _rank_flint(A, p):
    import flint

    return flint.nmod_mat([[int(x) % p for x in r] for r in A.tolist()], p).rank()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sparse_rank_matches_flint(p):
    rng = np.random.default_rng(p)
    for _ in range(20):
        r, c = rng.integers(1, 30, size=2)
        A = rng.integers(0, p, size=(r, c)) * (rng.random((r, c)) < 0.3)
        rows = [{j: int(v) for j, v in enumerate(row) if v} for row in A]
        assert rank_modp_sparse(rows, c, p) == _rank_flint(A, p)
        assert rank_modp_dense(A, p) == _rank_flint(A, p)


def test_gf2_rank_known():
    assert rank_gf2([[0, 1], [1, 2], [0, 2]], 3) == 2
    assert rank_gf2([], 5) == 0


def test_rref_and_nullspace():
    rng = np.random.default_rng(1)
    A = rng.integers(0, LARGE_PRIME, size=(7, 12))
    A[6] = (A[0] + A[1]) % LARGE_PRIME
    R, piv = rref_modp(A)
    assert len(piv) == 6
    ech = IncrementalEchelon(12)
    ech.add(A[:3])
    ech.add(A[3:])
    N = ech.nullspace()
    assert N.shape == (12, 6)
    assert not np.any(matmul_modp(A, N))


def test_tall_rank():
    rng = np.random.default_rng(2)
    B = rng.integers(0, 1000, size=(5, 9))
    A = matmul_modp(rng.integers(0, 1000, size=(300, 5)), B)
    assert rank_tall_modp(A, block=64) == 5


def test_matmul_modp_exact():
    rng = np.random.default_rng(3)
    A = rng.integers(0, LARGE_PRIME, size=(4, 50))
    B = rng.integers(0, LARGE_PRIME, size=(50, 3))
    want = (A.astype(object) @ B.astype(object)) % LARGE_PRIME
    assert (matmul_modp(A, B) == want).all()


def test_solve_rational():
    from fractions import Fraction

    assert solve_rational([[2, 0], [0, 3]], [1, 1]) == [Fraction(1, 2), Fraction(1, 3)]
    assert solve_rational([[1, 1], [1, 1]], [1, 2]) is None
