"""W(F4) and its normal subgroup W = W(Spin(8)) as concrete 4x4 integer matrix groups."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .lattice import GAMMA, Root, RootSystem, Weight, inner_product, reflect, root_system, t


class GroupTooLarge(RuntimeError):
    """Closure exceeded the element cap; the generators are probably wrong."""


class NotInGroup(KeyError):
    pass


@dataclass(frozen=True)
class WeylElement:
    """Integral matrix acting on weights; column j is the image of the j-th basis vector."""

    entries: tuple[int, ...]

    @classmethod
    def from_matrix(cls, m) -> "WeylElement":
        a = np.asarray(m, dtype=np.int64)
        if a.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
        return cls(tuple(int(x) for x in a.flat))

    @classmethod
    def identity(cls) -> "WeylElement":
        return cls.from_matrix(np.eye(4, dtype=np.int64))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(4, 4)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement.from_matrix(self.matrix @ other.matrix)

    def __pow__(self, k: int) -> "WeylElement":
        out = np.eye(4, dtype=np.int64)
        for _ in range(k):
            out = out @ self.matrix
        return WeylElement.from_matrix(out)

    def inverse(self) -> "WeylElement":
        inv = np.linalg.inv(self.matrix.astype(float))
        r = np.rint(inv).astype(np.int64)
        if not np.array_equal(r @ self.matrix, np.eye(4, dtype=np.int64)):
            raise ArithmeticError("matrix is not unimodular")
        return WeylElement.from_matrix(r)

    def apply(self, w: Weight) -> Weight:
        return Weight(tuple(int(x) for x in self.matrix @ np.array(w.coeffs, dtype=np.int64)))

    def determinant(self) -> int:
        return int(round(np.linalg.det(self.matrix.astype(float))))

    def validate(self, roots: RootSystem | None = None) -> None:
        roots = roots or root_system()
        if self.determinant() not in (1, -1):
            raise ValueError("determinant is not +-1")
        basis = [Weight(tuple(int(i == j) for j in range(4))) for i in range(4)]
        for a in basis:
            for b in basis:
                if inner_product(self.apply(a), self.apply(b)) != inner_product(a, b):
                    raise ValueError("matrix does not preserve the inner product")
        images = {self.apply(r.weight) for r in roots.roots}
        if images != set(roots.index):
            raise ValueError("matrix does not permute the roots")


def reflection_of(alpha: Root | Weight) -> WeylElement:
    a = alpha.weight if isinstance(alpha, Root) else alpha
    cols = [reflect(a, Weight(tuple(int(i == j) for j in range(4)))).coeffs for i in range(4)]
    return WeylElement.from_matrix(np.array(cols, dtype=np.int64).T)


def evaluate_word(letters: Sequence[WeylElement]) -> WeylElement:
    """Product of the letters as composed maps: the rightmost letter acts first."""
    out = np.eye(4, dtype=np.int64)
    for g in letters:
        out = out @ g.matrix
    return WeylElement.from_matrix(out)


# A vector in the open Weyl chamber: t-coordinates (8, 4, 2, 1) are orthogonal to no root.
REGULAR_VECTOR = np.array([7, 3, 1, 2], dtype=np.int64)


def _keys(vectors: np.ndarray) -> np.ndarray:
    """Injective integer encoding of integer vectors with entries in (-512, 512)."""
    v = vectors.astype(np.int64) + 512
    return ((v[..., 0] * 1024 + v[..., 1]) * 1024 + v[..., 2]) * 1024 + v[..., 3]


class WeylGroup:
    """A finite matrix group with a multiplication table; element 0 is the identity."""

    def __init__(self, elements: Sequence[WeylElement], generators: Sequence[WeylElement] = ()):
        self.elements: tuple[WeylElement, ...] = tuple(elements)
        self.generators = tuple(generators)
        self.matrices = np.array([e.matrix for e in self.elements], dtype=np.int64).reshape(-1, 4, 4)
        self.index: dict[WeylElement, int] = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate group elements")
        img = self.matrices @ REGULAR_VECTOR
        keys = _keys(img)
        if len(np.unique(keys)) != len(keys):
            raise ValueError("regular vector has a nontrivial stabilizer")
        self._order = np.argsort(keys)
        self._sorted_keys = keys[self._order]
        self._orbit = img

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def _lookup(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.clip(pos, 0, len(self._sorted_keys) - 1)
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise NotInGroup("product left the group")
        return self._order[pos]

    @cached_property
    def mul(self) -> np.ndarray:
        """mul[a, b] = index of elements[a] @ elements[b]."""
        img = np.einsum("aij,bj->abi", self.matrices, self._orbit)
        return self._lookup(_keys(img)).astype(np.int32)

    @cached_property
    def inv(self) -> np.ndarray:
        rows, cols = np.nonzero(self.mul == 0)
        out = np.empty(len(self), dtype=np.int32)
        out[rows] = cols
        return out

    def index_of(self, g: WeylElement) -> int:
        try:
            return self.index[g]
        except KeyError:
            raise NotInGroup(f"{g.entries} is not in the group") from None

    def indices_of(self, matrices: np.ndarray) -> np.ndarray:
        """Indices of a batch of matrices (shape (k, 4, 4))."""
        return self._lookup(_keys(np.asarray(matrices) @ REGULAR_VECTOR))

    def is_closed(self) -> bool:
        ok = True
        try:
            self.mul
        except NotInGroup:
            ok = False
        return ok

    def to_json(self, cosets: Sequence[tuple[int, int]] | None = None) -> str:
        out = []
        for i, e in enumerate(self.elements):
            item = {"index": i, "matrix": [list(map(int, r)) for r in e.matrix]}
            if cosets is not None:
                item["coset"] = list(cosets[i])
            out.append(item)
        return json.dumps(out)


def generate_group(generators: Sequence[WeylElement], cap: int = 10_000) -> WeylGroup:
    """Breadth-first closure from the identity, multiplying by generators on the right in the given order."""
    ident = WeylElement.identity()
    seen = {ident: 0}
    elements = [ident]
    queue = deque([ident])
    gens = [g.matrix for g in generators]
    while queue:
        x = queue.popleft().matrix
        for g in gens:
            y = WeylElement.from_matrix(x @ g)
            if y not in seen:
                seen[y] = len(elements)
                elements.append(y)
                if len(elements) > cap:
                    raise GroupTooLarge(f"closure exceeded cap={cap} elements")
                queue.append(y)
    return WeylGroup(elements, generators)


@dataclass(frozen=True)
class CosetLabel:
    epsilon: int
    delta: int

    def __iter__(self):
        return iter((self.epsilon, self.delta))

    def __str__(self) -> str:
        parts = []
        if self.epsilon:
            parts.append("rho" if self.epsilon == 1 else "rho^2")
        if self.delta:
            parts.append("kappa")
        return "".join(parts) + "W" if parts else "W"


COSET_LABELS = tuple(CosetLabel(e, d) for e in range(3) for d in range(2))

RHO_LETTERS = (3, 2, 1, 0, 3, 2, 1, 3, 2, 4)


def rho_word() -> tuple[WeylElement, ...]:
    R = root_system()
    simple = {0: R.alpha0, **R.simple}
    return tuple(reflection_of(simple[i]) for i in RHO_LETTERS)


@lru_cache(maxsize=1)
def rho() -> WeylElement:
    r = evaluate_word(rho_word())
    g = GAMMA
    expected = {1: t(1) - g, 2: t(2) - g, 3: t(3) - g, 4: g - t(4)}
    for i, w in expected.items():
        if r.apply(t(i)) != w:
            raise AssertionError(f"rho(t{i}) = {r.apply(t(i))}, expected {w}: composition convention is wrong")
    return r


@lru_cache(maxsize=1)
def kappa() -> WeylElement:
    return reflection_of(t(4))


class F4Weyl:
    """W(F4) together with W(Spin(8)), rho, kappa and the six cosets rho^e kappa^d W."""

    def __init__(self, cap: int = 10_000):
        self.roots = root_system()
        R = self.roots
        self.group = generate_group([reflection_of(R.simple[i]) for i in (1, 2, 3, 4)], cap=cap)
        self.spin8 = generate_group([reflection_of(r) for r in R.long if r.positive], cap=cap)
        self.spin8_indices = np.array(sorted(self.group.index_of(e) for e in self.spin8.elements), dtype=np.int32)
        self.in_spin8 = np.zeros(len(self.group), dtype=bool)
        self.in_spin8[self.spin8_indices] = True
        self.rho = rho()
        self.kappa = kappa()
        self.rho_index = self.group.index_of(self.rho)
        self.kappa_index = self.group.index_of(self.kappa)
        self.coset_reps = {lab: self.group.index_of(self.rho**lab.epsilon @ self.kappa**lab.delta) for lab in COSET_LABELS}
        self._cosets = self._classify_all()
        self.reflection_index = {
            r.weight: self.group.index_of(reflection_of(r)) for r in R.roots
        }

    @property
    def order(self) -> int:
        return len(self.group)

    def _classify_all(self) -> np.ndarray:
        g = self.group
        out = np.full((len(g), 2), -1, dtype=np.int8)
        for lab, rep in self.coset_reps.items():
            members = g.mul[g.inv[rep]]  # row: rep^-1 * w for all w
            hit = self.in_spin8[members]
            if np.any(out[hit, 0] >= 0):
                raise AssertionError("cosets overlap")
            out[hit] = (lab.epsilon, lab.delta)
        if np.any(out[:, 0] < 0):
            raise AssertionError("cosets do not cover W(F4)")
        return out

    def coset_of_index(self, i: int) -> CosetLabel:
        e, d = self._cosets[i]
        return CosetLabel(int(e), int(d))

    def coset_classify(self, w: WeylElement) -> CosetLabel:
        return self.coset_of_index(self.group.index_of(w))

    @property
    def coset_array(self) -> np.ndarray:
        """(order, 2) array of (epsilon, delta)."""
        return self._cosets

    def coset_code(self) -> np.ndarray:
        """2*epsilon + delta for every element."""
        return (2 * self._cosets[:, 0] + self._cosets[:, 1]).astype(np.int8)

    def members(self, label: CosetLabel | tuple[int, int]) -> np.ndarray:
        e, d = label
        return np.nonzero((self._cosets[:, 0] == e) & (self._cosets[:, 1] == d))[0]

    def spin9_coset(self, epsilon: int) -> np.ndarray:
        """Indices of rho^epsilon W(Spin(9)) = rho^e W u rho^e kappa W."""
        return np.nonzero(self._cosets[:, 0] == epsilon)[0]

    def coset_table(self) -> dict[tuple[CosetLabel, CosetLabel], CosetLabel]:
        g = self.group
        out = {}
        for a in COSET_LABELS:
            for b in COSET_LABELS:
                out[(a, b)] = self.coset_of_index(int(g.mul[self.coset_reps[a], self.coset_reps[b]]))
        return out


@lru_cache(maxsize=1)
def f4_weyl() -> F4Weyl:
    return F4Weyl()


# -- reference model used to check the coset table ----------------------------


def s3_elements() -> list[tuple[int, int, int]]:
    from itertools import permutations

    return list(permutations(range(3)))


def s3_compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(3))


def s3_model(rho_image: Sequence[int], kappa_image: Sequence[int]) -> dict[CosetLabel, tuple[int, ...]]:
    """The homomorphism candidate sending rho^e kappa^d to the corresponding permutation product."""
    ident = (0, 1, 2)
    out = {}
    for lab in COSET_LABELS:
        x = ident
        for _ in range(lab.epsilon):
            x = s3_compose(x, rho_image)
        if lab.delta:
            x = s3_compose(x, kappa_image)
        out[lab] = x
    return out


def root_pair_action(F: F4Weyl, w: WeylElement) -> tuple[int, ...]:
    """Permutation of the three root pairs (+-t4, +-rho t4, +-rho^2 t4) induced by w."""
    pairs = [t(4), F.rho.apply(t(4)), (F.rho @ F.rho).apply(t(4))]
    canon = [p.canonical_sign() for p in pairs]
    return tuple(canon.index(w.apply(p).canonical_sign()) for p in pairs)

