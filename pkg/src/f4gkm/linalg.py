"""Exact linear algebra over prime fields.

* GF(2): bit-packed forward elimination on numpy uint64 words.
* odd p: python-flint's nmod_mat.
* large p (< 2^31) with few columns: dense numpy Gauss-Jordan, used for
  incremental kernels of tall constraint systems.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class ResourceCapExceeded(RuntimeError):
    """A named size limit was hit."""

    def __init__(self, cap: str, needed: int, limit: int):
        super().__init__(f"resource cap '{cap}' exceeded: needs {needed}, limit {limit}")
        self.cap = cap
        self.needed = needed
        self.limit = limit


SparseRow = dict[int, int]  # column -> coefficient


# -- GF(2) -----------------------------------------------------------------------


def pack_rows_gf2(rows: Sequence[Iterable[int]], ncols: int) -> np.ndarray:
    """Rows given as iterables of column indices with odd coefficient."""
    words = (ncols + 63) // 64
    M = np.zeros((len(rows), max(words, 1)), dtype=np.uint64)
    for i, cols in enumerate(rows):
        for c in cols:
            M[i, c >> 6] ^= np.uint64(1) << np.uint64(c & 63)
    return M


def rank_gf2_packed(M: np.ndarray, ncols: int) -> int:
    """Rank of a bit-packed matrix; M is modified in place."""
    nrows = M.shape[0]
    rank = 0
    one = np.uint64(1)
    for c in range(ncols):
        if rank == nrows:
            break
        w = c >> 6
        b = np.uint64(c & 63)
        col = (M[rank:, w] >> b) & one
        hits = np.flatnonzero(col)
        if len(hits) == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            M[[rank, piv], w:] = M[[piv, rank], w:]
        others = rank + hits[1:]
        if len(others):
            M[others, w:] ^= M[rank, w:]
        rank += 1
    return rank


def rank_gf2(rows: Sequence[Iterable[int]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return rank_gf2_packed(pack_rows_gf2(rows, ncols), ncols)


# -- odd primes via flint ------------------------------------------------------------


def rank_modp_sparse(rows: Sequence[SparseRow], ncols: int, p: int) -> int:
    """Rank over GF(p) of sparse rows (coefficients are reduced mod p)."""
    if not rows or ncols == 0:
        return 0
    if p == 2:
        return rank_gf2([[c for c, v in r.items() if v % 2] for r in rows], ncols)
    import flint

    nr = len(rows)
    # flint is fastest on the short side
    if nr <= ncols:
        M = flint.nmod_mat(nr, ncols, p)
        for i, r in enumerate(rows):
            for c, v in r.items():
                v %= p
                if v:
                    M[i, c] = v
    else:
        M = flint.nmod_mat(ncols, nr, p)
        for i, r in enumerate(rows):
            for c, v in r.items():
                v %= p
                if v:
                    M[c, i] = v
    return int(M.rank())


def rank_modp_dense(A: np.ndarray, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    if p == 2:
        rows = [np.flatnonzero(r % 2).tolist() for r in A]
        return rank_gf2(rows, A.shape[1])
    import flint

    M = flint.nmod_mat([[int(x) % p for x in r] for r in A.tolist()], p)
    return int(M.rank())


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]):
    """A particular solution of A x = b over Q (list of Fractions), or None."""
    import flint

    from fractions import Fraction

    rows, cols = len(A), len(A[0]) if A else 0
    aug = flint.fmpq_mat([list(r) + [bi] for r, bi in zip(A, b)])
    R, rank = aug.rref()
    sol = [Fraction(0)] * cols
    for i in range(rank):
        row = [R[i, j] for j in range(cols + 1)]
        piv = next((j for j in range(cols + 1) if row[j] != 0), None)
        if piv == cols:
            return None
        sol[piv] = Fraction(int(row[cols].p), int(row[cols].q))
    return sol


# -- dense numpy arithmetic mod a large prime --------------------------------------

LARGE_PRIME = 2_147_483_647  # 2^31 - 1


def matmul_modp(A: np.ndarray, B: np.ndarray, p: int = LARGE_PRIME) -> np.ndarray:
    """(A @ B) mod p for int64 arrays with entries in [0, p), p < 2^31."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    k = A.shape[-1]
    if k > 1 << 15:
        raise ValueError("inner dimension too large for limb splitting")
    lo = B & 0xFFFF
    hi = B >> 16
    r_lo = (A @ lo) % p
    r_hi = (A @ hi) % p
    return (r_lo + (r_hi * 65536) % p) % p


def rref_modp(A: np.ndarray, p: int = LARGE_PRIME) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p (p < 2^31) and pivot columns; zero rows dropped."""
    M = np.asarray(A, dtype=np.int64) % p
    nrows, ncols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if len(rows):
            M[rows] = (M[rows] - (col[rows, None] * M[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


class IncrementalEchelon:
    """Row space of a tall matrix fed in blocks; keeps at most ncols rows."""

    def __init__(self, ncols: int, p: int = LARGE_PRIME):
        self.ncols = ncols
        self.p = p
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    def add(self, block: np.ndarray) -> None:
        block = np.asarray(block, dtype=np.int64) % self.p
        block = block[np.any(block != 0, axis=1)]
        if len(block) == 0:
            return
        if len(self.pivots) == self.ncols:
            return
        self.rows, self.pivots = rref_modp(np.vstack([self.rows, block]), self.p)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def nullspace(self) -> np.ndarray:
        """Basis of {x : rows @ x = 0} as columns of an (ncols, ncols - rank) array."""
        free = [c for c in range(self.ncols) if c not in set(self.pivots)]
        N = np.zeros((self.ncols, len(free)), dtype=np.int64)
        for k, f in enumerate(free):
            N[f, k] = 1
            for i, pc in enumerate(self.pivots):
                N[pc, k] = (-self.rows[i, f]) % self.p
        return N


def rank_tall_modp(A: np.ndarray, p: int = LARGE_PRIME, block: int = 4096) -> int:
    ech = IncrementalEchelon(A.shape[1], p)
    for s in range(0, A.shape[0], block):
        ech.add(A[s : s + block])
    return ech.rank
