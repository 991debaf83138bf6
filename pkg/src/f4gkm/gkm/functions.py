"""GKM functions as dense coefficient arrays, one row per vertex.

A homogeneous function of degree d is stored as an (n_vertices, m_d) integer
array over ``monomial_basis(BT, d)``.  All arithmetic is pointwise and vectorised
across vertices; int64 is used while a coefficient bound proves it safe, object
arrays (Python ints) otherwise.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from ..lattice import GAMMA, Weight, t
from ..polyring import (
    BT,
    NotEven,
    Polynomial,
    basis_index,
    divisible_by_linear,
    linear_reduction_matrix,
    monomial_basis,
    pack,
    NotDivisible,
)
from ..weyl import F4Weyl
from .graph import GkmGraph

_SAFE = 2**62


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _as_object(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


@lru_cache(maxsize=None)
def product_index(a: int, b: int) -> tuple[np.ndarray, ...]:
    """For each monomial j of degree b: positions of (monomial i of degree a) * j in degree a+b."""
    A = monomial_basis(BT, a)
    B = monomial_basis(BT, b)
    idx = basis_index(BT, a + b)
    ka = [pack(e) for e in A]
    return tuple(np.array([idx[x + pack(eb)] for x in ka], dtype=np.int64) for eb in B)


def poly_to_vector(p: Polynomial, degree: int) -> np.ndarray:
    idx = basis_index(BT, degree)
    out = np.zeros(len(idx), dtype=object)
    for exps, c in p.terms.items():
        k = pack(exps)
        if k not in idx:
            raise ValueError(f"{p} is not homogeneous of degree {degree}")
        out[idx[k]] = c
    return _shrink(out)


def vector_to_poly(v: Sequence[int], degree: int) -> Polynomial:
    basis = monomial_basis(BT, degree)
    return Polynomial(BT, {basis[i]: int(c) for i, c in enumerate(v) if c})


def weight_poly(w: Weight) -> Polynomial:
    return Polynomial(BT, {tuple(int(i == j) for j in range(4)): c for i, c in enumerate(w.coeffs) if c})


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < _SAFE:
        return a.astype(np.int64)
    return a


@dataclass(frozen=True, eq=False)
class GkmFunction:
    """Values of a homogeneous function W(F4) -> H*(BT) (or on a vertex subset)."""

    values: np.ndarray
    degree: int
    name: str = ""

    def __post_init__(self):
        m = len(monomial_basis(BT, self.degree))
        if self.values.ndim != 2 or self.values.shape[1] != m:
            raise ValueError(f"values shape {self.values.shape} does not match degree {self.degree} (m={m})")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, p: Polynomial | int, n: int, degree: int | None = None, name: str = "") -> "GkmFunction":
        if isinstance(p, int):
            p = BT.const(p)
        if degree is None:
            degree = max(p.degree, 0)
        vec = poly_to_vector(p, degree)
        return cls(np.tile(vec, (n, 1)), degree, name)

    @classmethod
    def from_polys(cls, polys: Sequence[Polynomial], degree: int, name: str = "") -> "GkmFunction":
        rows = [poly_to_vector(p, degree).astype(object) for p in polys]
        return cls(_shrink(np.array(rows, dtype=object).reshape(len(polys), -1)), degree, name)

    @classmethod
    def zero(cls, n: int, degree: int, name: str = "") -> "GkmFunction":
        return cls(np.zeros((n, len(monomial_basis(BT, degree))), dtype=np.int64), degree, name)

    # -- inspection --------------------------------------------------------

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def at(self, vertex: int) -> Polynomial:
        return vector_to_poly(self.values[vertex], self.degree)

    def is_zero(self) -> bool:
        return not np.any(self.values != 0)

    def nonzero_vertices(self) -> np.ndarray:
        return np.nonzero(np.any(self.values != 0, axis=1))[0]

    def max_abs_coefficient(self) -> int:
        return _maxabs(self.values)

    def restrict(self, vertices: Sequence[int]) -> "GkmFunction":
        return GkmFunction(self.values[np.asarray(vertices, dtype=np.int64)], self.degree, self.name)

    def renamed(self, name: str) -> "GkmFunction":
        return GkmFunction(self.values, self.degree, name)

    def equals(self, other: "GkmFunction") -> bool:
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and bool(np.all(self.values == other.values))

    def with_sign_flipped(self, vertex: int | None = None) -> "GkmFunction":
        """Copy with the value at one vertex negated (first vertex with a nonzero value by default)."""
        if vertex is None:
            nz = self.nonzero_vertices()
            vertex = int(nz[0]) if len(nz) else 0
        vals = self.values.copy()
        if not np.any(vals[vertex] != 0):
            # nothing to negate: perturb by a unit instead so the fault is still visible
            vals[vertex, 0] = vals[vertex, 0] + 1
        else:
            vals[vertex] = -vals[vertex]
        return GkmFunction(vals, self.degree, self.name)

    # -- arithmetic ----------------------------------------------------------

    def _align(self, other: "GkmFunction") -> tuple[np.ndarray, np.ndarray, int]:
        if self.n != other.n:
            raise ValueError("functions live on different vertex sets")
        if self.degree != other.degree:
            if other.is_zero():
                return self.values, np.zeros_like(self.values), self.degree
            if self.is_zero():
                return np.zeros_like(other.values), other.values, other.degree
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")
        return self.values, other.values, self.degree

    def _coerce(self, other) -> "GkmFunction":
        if isinstance(other, GkmFunction):
            return other
        if isinstance(other, (int, Polynomial)):
            return GkmFunction.constant(other, self.n, self.degree if isinstance(other, int) else None)
        raise TypeError(f"cannot combine GkmFunction with {type(other).__name__}")

    def __add__(self, other) -> "GkmFunction":
        other = self._coerce(other)
        a, b, d = self._align(other)
        if max(_maxabs(a), _maxabs(b)) >= _SAFE // 2:
            a, b = _as_object(a), _as_object(b)
        return GkmFunction(_shrink(a + b), d)

    __radd__ = __add__

    def __neg__(self) -> "GkmFunction":
        return GkmFunction(-self.values, self.degree)

    def __sub__(self, other) -> "GkmFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "GkmFunction":
        return self._coerce(other) + (-self)

    def scale(self, c: int) -> "GkmFunction":
        a = self.values
        if _maxabs(a) * abs(c) >= _SAFE:
            a = _as_object(a)
        return GkmFunction(_shrink(a * c), self.degree)

    def __mul__(self, other) -> "GkmFunction":
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if self.n != other.n:
            raise ValueError("functions live on different vertex sets")
        A, B = self.values, other.values
        da, db = self.degree, other.degree
        if A.shape[1] < B.shape[1]:
            A, B, da, db = B, A, db, da
        dc = da + db
        mc = len(monomial_basis(BT, dc))
        bound = _maxabs(A) * _maxabs(B) * B.shape[1]
        if bound >= _SAFE:
            A, B = _as_object(A), _as_object(B)
            out = np.zeros((self.n, mc), dtype=object)
        else:
            out = np.zeros((self.n, mc), dtype=np.int64)
        for j, idx in enumerate(product_index(da, db)):
            col = B[:, j]
            if not np.any(col != 0):
                continue
            out[:, idx] += A * col[:, None]
        return GkmFunction(_shrink(out), dc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GkmFunction":
        if k < 0:
            raise ValueError("negative power")
        out = GkmFunction.constant(1, self.n)
        for _ in range(k):
            out = out * self
        return out

    def halve(self) -> "GkmFunction":
        """Exact division by 2; raise NotEven naming the first vertex with an odd coefficient."""
        a = self.values
        odd = np.nonzero(np.any(a % 2 != 0, axis=1))[0]
        if len(odd):
            v = int(odd[0])
            raise NotEven(f"odd coefficient at vertex {v}: {self.at(v)}")
        return GkmFunction(_shrink(a // 2), self.degree)

    def select(self, mask_or_indices, other: "GkmFunction") -> "GkmFunction":
        """Pointwise: other where the mask holds, self elsewhere."""
        a, b, d = self._align(other)
        out = a.copy() if a.dtype == b.dtype else _as_object(a).copy()
        out[mask_or_indices] = b[mask_or_indices]
        return GkmFunction(_shrink(out), d)


def elem_sym_functions(k: int, xs: Sequence[GkmFunction]) -> GkmFunction:
    n = xs[0].n
    e = [GkmFunction.constant(1, n)] + [None] * k
    for i, x in enumerate(xs):
        for j in range(min(i + 1, k), 0, -1):
            term = e[j - 1] * x
            e[j] = term if e[j] is None else e[j] + term
    if e[k] is None:
        return GkmFunction.zero(n, 2 * k)
    return e[k]


# -- the GKM condition -----------------------------------------------------------


@dataclass
class Violation:
    edge: int
    u: int
    v: int
    label: Polynomial
    difference: Polynomial

    def describe(self) -> str:
        return f"edge {self.edge} ({self.u},{self.v}): {self.label} does not divide {self.difference}"


@dataclass
class GkmCheck:
    name: str
    edges_checked: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


@lru_cache(maxsize=None)
def _reduction_matrix(label_coeffs: tuple[int, ...], degree: int) -> np.ndarray:
    return linear_reduction_matrix(weight_poly(Weight(label_coeffs)), degree)


def check_gkm(
    graph: GkmGraph,
    f: GkmFunction,
    threads: int = 1,
    max_violations: int | None = None,
) -> GkmCheck:
    """Test f(u) - f(v) in (label) on every edge; grouped by label and vectorised."""
    if f.n != graph.n_vertices:
        raise ValueError("function is not defined on every vertex")
    pos = graph.roots.positive
    groups = list(graph.edges_by_label.items())

    def run(item):
        lab, edges = item
        L = pos[lab].weight
        if f.degree == 0:
            diff = f.values[graph.u[edges]] - f.values[graph.v[edges]]
            bad = np.any(diff != 0, axis=1)
            return edges[bad]
        P = _reduction_matrix(L.coeffs, f.degree)
        diff = f.values[graph.u[edges]] - f.values[graph.v[edges]]
        if _maxabs(diff) * _maxabs(P) * P.shape[0] >= _SAFE:
            red = _as_object(diff) @ _as_object(P)
        else:
            red = diff.astype(np.int64) @ P.astype(np.int64)
        bad = np.any(red != 0, axis=1)
        return edges[bad]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            bad_lists = list(ex.map(run, groups))
    else:
        bad_lists = [run(g) for g in groups]
    bad = sorted(int(e) for lst in bad_lists for e in lst)
    if max_violations is not None:
        bad = bad[:max_violations]
    out = GkmCheck(f.name, graph.n_edges)
    for e in bad:
        u, v = int(graph.u[e]), int(graph.v[e])
        L = weight_poly(pos[int(graph.label[e])].weight)
        d = f.at(u) - f.at(v)
        try:
            divisible_by_linear(L, d)
        except NotDivisible:
            out.violations.append(Violation(e, u, v, L, d))
        else:  # pragma: no cover - the two tests disagree
            raise AssertionError(f"vectorised test rejected edge {e} but exact division succeeded")
    return out


# -- built-in functions ------------------------------------------------------


class Builtins:
    """t1..t4, g, tau1..tau4, g1..g4, omega as GKM functions, plus helpers."""

    NAMES = ("t1", "t2", "t3", "t4", "g", "tau1", "tau2", "tau3", "tau4", "g1", "g2", "g3", "g4", "omega")

    def __init__(self, graph: GkmGraph):
        self.graph = graph
        self.weyl: F4Weyl = graph.weyl
        n = graph.n_vertices
        self.n = n
        W = self.weyl
        self.t_weights = [t(i) for i in range(1, 5)]
        self.t_polys = [weight_poly(w) for w in self.t_weights]
        self.gamma_poly = weight_poly(GAMMA)
        # e_j of rho^e t as polynomials
        self.rho_t_polys = {
            eps: [weight_poly((W.rho**eps).apply(w)) for w in self.t_weights] for eps in range(3)
        }
        self.e_rho = {eps: elem_sym_list(self.rho_t_polys[eps]) for eps in range(3)}
        self.e_t = self.e_rho[0]
        f: dict[str, GkmFunction] = {}
        for i, p in enumerate(self.t_polys):
            f[f"t{i + 1}"] = GkmFunction.constant(p, n, 2, f"t{i + 1}")
        f["g"] = GkmFunction.constant(self.gamma_poly, n, 2, "g")
        mats = W.group.matrices
        for i, w in enumerate(self.t_weights):
            vals = mats @ np.array(w.coeffs, dtype=np.int64)
            f[f"tau{i + 1}"] = GkmFunction(vals.astype(np.int64), 2, f"tau{i + 1}")
        tau = [f[f"tau{i}"] for i in range(1, 5)]
        self.e_tau = [GkmFunction.constant(1, n)] + [elem_sym_functions(k, tau) for k in range(1, 5)]
        for j in (1, 2, 3):
            diff = self.e_tau[j] - self.const(self.e_t[j])
            f[f"g{j}"] = diff.halve().renamed(f"g{j}")
        f["g4"] = self.piecewise(
            {
                (0, 0): 0,
                (2, 1): 0,
                (2, 0): self.e_rho[2][4],
                (1, 1): self.e_rho[2][4],
                (1, 0): -self.e_t[4],
                (0, 1): -self.e_t[4],
            },
            8,
        ).renamed("g4")
        f["omega"] = (self.e_tau[4] - self.const(self.e_t[4]) - f["g4"].scale(2)).renamed("omega")
        self.functions = f

    def const(self, p: Polynomial | int, degree: int | None = None) -> GkmFunction:
        return GkmFunction.constant(p, self.n, degree)

    def piecewise(self, values: dict[tuple[int, int], Polynomial | int], degree: int) -> GkmFunction:
        """Function constant on each coset rho^e kappa^d W."""
        codes = self.weyl.coset_array
        vecs = {}
        for lab, p in values.items():
            poly = BT.const(p) if isinstance(p, int) else p
            vecs[lab] = poly_to_vector(poly, degree).astype(object) if not poly.is_zero() else np.zeros(
                len(monomial_basis(BT, degree)), dtype=object
            )
        out = np.zeros((self.n, len(monomial_basis(BT, degree))), dtype=object)
        for lab, vec in vecs.items():
            mask = (codes[:, 0] == lab[0]) & (codes[:, 1] == lab[1])
            out[mask] = vec
        return GkmFunction(_shrink(out), degree)

    def omega_expected(self) -> GkmFunction:
        return self.piecewise(
            {
                (0, 0): 0,
                (0, 1): 0,
                (1, 0): -self.e_rho[2][4],
                (1, 1): -self.e_rho[2][4],
                (2, 0): self.e_rho[1][4],
                (2, 1): self.e_rho[1][4],
            },
            8,
        )

    def __getitem__(self, name: str) -> GkmFunction:
        return self.functions[name]

    def items(self) -> Iterable[tuple[str, GkmFunction]]:
        return ((k, self.functions[k]) for k in self.NAMES)

    @property
    def tau(self) -> list[GkmFunction]:
        return [self.functions[f"tau{i}"] for i in range(1, 5)]

    def gammas(self) -> list[GkmFunction]:
        """[g0 = 0, g1, g2, g3, g4] with g0 the zero function."""
        return [GkmFunction.zero(self.n, 0)] + [self.functions[f"g{j}"] for j in range(1, 5)]


def elem_sym_list(xs: Sequence[Polynomial]) -> list[Polynomial]:
    from ..polyring import elem_sym_all

    return elem_sym_all(list(xs), BT)


@lru_cache(maxsize=1)
def builtins() -> Builtins:
    from .graph import gkm_graph

    return Builtins(gkm_graph())


def map_vertices(fn: Callable[[int], Polynomial], vertices: Iterable[int], threads: int = 1) -> list[Polynomial]:
    vertices = list(vertices)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, vertices))
    return [fn(v) for v in vertices]
