"""Dimension of the space of degree-2d GKM functions, by linear algebra on the graph.

The solution space is built up along the subgroup chain
  {e} < <s3> < <s3,s2> < <s3,s2,s1> < <s3,s2,s1,s0> = W(Spin(9)) < W(F4)
(s_i the reflection in alpha_i).  On a left coset gH the functions satisfying
the GKM condition on edges inside gH are g-translates of those on H, so each
level only has to impose the edges joining different cosets.

Working mod a large prime gives an upper bound for the rank over Q.  The mod-p
rank of the known integral GKM functions (monomials in the generators) gives a
lower bound.  When the two agree the rank over Q is determined.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..linalg import LARGE_PRIME, IncrementalEchelon, ResourceCapExceeded, matmul_modp
from ..lattice import Weight
from ..polyring import BT, Polynomial, RingSpec, linear_reduction_matrix, monomial_basis, substitute_linear
from ..weyl import WeylElement
from .functions import Builtins, GkmFunction, poly_to_vector, weight_poly
from .graph import GkmGraph

DEFAULT_CELL_CAP = 50_000_000


class Inconclusive(RuntimeError):
    """Upper and lower bounds disagree."""


@dataclass
class RankResult:
    degree: int
    upper_bound: int
    lower_bound: int
    prime: int
    level_dims: list[tuple[int, int]] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.upper_bound == self.lower_bound

    @property
    def rank(self) -> int:
        if not self.exact:
            raise Inconclusive(f"bounds differ: {self.lower_bound} <= rank <= {self.upper_bound}")
        return self.upper_bound


def action_matrix(g: WeylElement, degree: int, p: int) -> np.ndarray:
    """Matrix of f -> f(g t1, g t2, g t3, g g) on the degree-``degree`` part; columns are images."""
    basis = monomial_basis(BT, degree)
    mat = g.matrix
    images = {name: weight_poly_from_column(mat[:, j]) for j, name in enumerate(BT.names)}

    cols = []
    for e in basis:
        img = substitute_linear(BT.monomial(e), images, target=BT)
        cols.append(np.asarray(poly_to_vector(img, degree), dtype=object) % p)
    return np.array(cols, dtype=object).T.astype(np.int64)


def weight_poly_from_column(col) -> Polynomial:
    return weight_poly(Weight(tuple(int(c) for c in col)))


def subgroup_closure(mul: np.ndarray, gens: list[int]) -> list[int]:
    seen = {0}
    order = [0]
    q = deque([0])
    while q:
        x = q.popleft()
        for s in gens:
            y = int(mul[x, s])
            if y not in seen:
                seen.add(y)
                order.append(y)
                q.append(y)
    return order


def subgroup_chain(graph: GkmGraph) -> list[list[int]]:
    W = graph.weyl
    R = W.roots
    letters = [R.simple[3], R.simple[2], R.simple[1], R.alpha0, R.simple[4]]
    gens = [W.reflection_index[a.weight] for a in letters]
    chain = [[0]]
    for k in range(1, len(gens) + 1):
        chain.append(subgroup_closure(W.group.mul, gens[:k]))
    return chain


def upper_bound(graph: GkmGraph, d: int, p: int = LARGE_PRIME, cell_cap: int = DEFAULT_CELL_CAP):
    """dim over GF(p) of degree-2d functions on the vertices satisfying the GKM condition."""
    deg = 2 * d
    m = len(monomial_basis(BT, deg))
    W = graph.weyl
    mul = W.group.mul
    pos = graph.roots.positive
    P = {}
    for lab in range(len(pos)):
        M = linear_reduction_matrix(weight_poly(pos[lab].weight), deg)
        P[lab] = (np.asarray(M, dtype=object) % p).astype(np.int64)
    chain = subgroup_chain(graph)
    members = chain[0]
    V = np.eye(m, dtype=np.int64).reshape(1, m, m)  # values at the members of the current subgroup
    dims = [(1, m)]
    u_all, v_all, lab_all = graph.u, graph.v, graph.label
    matrices = W.group.elements
    for nxt in chain[1:]:
        K = V.shape[2]
        reps, coset_of = [], {}
        for x in nxt:
            if x in coset_of:
                continue
            ci = len(reps)
            reps.append(x)
            for h in members:
                y = int(mul[x, h])
                coset_of[y] = ci
        r = len(reps)
        ncols = r * K
        # values of each coset block at every vertex: F[vertex] = A_g V[h] (m x K)
        verts = list(nxt)
        vindex = {x: i for i, x in enumerate(verts)}
        F = np.zeros((len(verts), m, K), dtype=np.int64)
        flatV = V.transpose(1, 0, 2).reshape(m, -1)  # m x (|H| K)
        for ci, g in enumerate(reps):
            A = action_matrix(matrices[g], deg, p)
            block = matmul_modp(A, flatV, p).reshape(m, len(members), K).transpose(1, 0, 2)
            for hpos, h in enumerate(members):
                F[vindex[int(mul[g, h])]] = block[hpos]
        in_next = np.zeros(graph.n_vertices, dtype=bool)
        in_next[verts] = True
        cross = np.flatnonzero(in_next[u_all] & in_next[v_all])
        cu = np.array([coset_of[int(x)] for x in u_all[cross]], dtype=np.int64)
        cv = np.array([coset_of[int(x)] for x in v_all[cross]], dtype=np.int64)
        keep = cu != cv
        cross, cu, cv = cross[keep], cu[keep], cv[keep]
        ech = IncrementalEchelon(ncols, p)
        labs = lab_all[cross]
        for lab in np.unique(labs):
            sel = np.flatnonzero(labs == lab)
            Pl = P[int(lab)]
            mk = Pl.shape[1]
            if len(sel) * mk * ncols > cell_cap:
                chunk = max(1, cell_cap // (mk * ncols))
            else:
                chunk = len(sel)
            for s in range(0, len(sel), chunk):
                part = sel[s : s + chunk]
                e = cross[part]
                Fu = F[[vindex[int(x)] for x in u_all[e]]]  # (E, m, K)
                Fv = F[[vindex[int(x)] for x in v_all[e]]]
                Du = matmul_modp(Pl.T, Fu.transpose(1, 0, 2).reshape(m, -1), p).reshape(mk, len(e), K)
                Dv = matmul_modp(Pl.T, Fv.transpose(1, 0, 2).reshape(m, -1), p).reshape(mk, len(e), K)
                rows = np.zeros((len(e), mk, r, K), dtype=np.int64)
                ar = np.arange(len(e))
                rows[ar, :, cu[part], :] = Du.transpose(1, 0, 2)
                rows[ar, :, cv[part], :] = (rows[ar, :, cv[part], :] - Dv.transpose(1, 0, 2)) % p
                ech.add(rows.reshape(len(e) * mk, ncols))
        N = ech.nullspace()  # (r K) x dim
        dim = N.shape[1]
        if len(verts) * m * dim > cell_cap:
            raise ResourceCapExceeded("rank_cells", len(verts) * m * dim, cell_cap)
        Nb = N.reshape(r, K, dim)
        newV = np.zeros((len(verts), m, dim), dtype=np.int64)
        for x in verts:
            ci = coset_of[x]
            newV[vindex[x]] = matmul_modp(F[vindex[x]], Nb[ci], p)
        V = newV
        members = verts
        dims.append((len(verts), dim))
    return V.shape[2], dims


def generator_monomials(B: Builtins, d: int) -> list[GkmFunction]:
    """All products of the generating functions with total degree 2d."""
    names = list(Builtins.NAMES)
    ring = RingSpec(tuple(names), tuple(B[n].degree for n in names))
    out = []
    for e in monomial_basis(ring, 2 * d):
        f = GkmFunction.constant(1, B.n)
        for name, k in zip(names, e):
            for _ in range(k):
                f = f * B[name]
        out.append(f)
    return out


def lower_bound(B: Builtins, d: int, p: int = LARGE_PRIME) -> int:
    funcs = generator_monomials(B, d)
    if not funcs:
        return 0
    cols = np.stack([np.asarray(f.values, dtype=object).reshape(-1) % p for f in funcs], axis=1).astype(np.int64)
    ech = IncrementalEchelon(cols.shape[1], p)
    for s in range(0, cols.shape[0], 8192):
        ech.add(cols[s : s + 8192])
    return ech.rank


def degree_rank_result(B: Builtins, d: int, p: int = LARGE_PRIME, cell_cap: int = DEFAULT_CELL_CAP) -> RankResult:
    if d < 0:
        raise ValueError("degree must be non-negative")
    ub, dims = upper_bound(B.graph, d, p, cell_cap)
    lb = lower_bound(B, d, p)
    return RankResult(d, ub, lb, p, dims)


def degree_rank(B: Builtins, d: int, p: int = LARGE_PRIME) -> int:
    return degree_rank_result(B, d, p).rank
