"""The labeled GKM graph of F4/T: vertices W(F4), one edge {w, w*s_a} per positive root a."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from ..lattice import Root, Weight, t
from ..weyl import COSET_LABELS, CosetLabel, F4Weyl, f4_weyl


@dataclass(frozen=True)
class Edge:
    index: int
    u: int
    v: int
    root: Root
    label: Weight


class GkmGraph:
    """Edges stored as parallel arrays; ``root`` and ``label`` are indices into the positive roots."""

    def __init__(self, weyl: F4Weyl):
        self.weyl = weyl
        self.roots = weyl.roots
        g = weyl.group
        pos = self.roots.positive
        pos_w = np.array([r.weight.coeffs for r in pos], dtype=np.int64)
        refl = np.array([weyl.reflection_index[r.weight] for r in pos], dtype=np.int64)
        n = len(g)
        us, vs, rs, ls = [], [], [], []
        images = np.einsum("nij,rj->nri", g.matrices, pos_w)  # images[w, a] = w(a)
        for ridx in range(len(pos)):
            v = g.mul[:, refl[ridx]]
            u = np.arange(n)
            keep = u < v
            us.append(u[keep])
            vs.append(v[keep])
            rs.append(np.full(int(keep.sum()), ridx))
            ls.append(self._label_indices(images[keep, ridx]))
        order = np.lexsort((np.concatenate(rs), np.concatenate(vs), np.concatenate(us)))
        self.u = np.concatenate(us)[order].astype(np.int32)
        self.v = np.concatenate(vs)[order].astype(np.int32)
        self.root = np.concatenate(rs)[order].astype(np.int16)
        self.label = np.concatenate(ls)[order].astype(np.int16)

    def _label_indices(self, weights: np.ndarray) -> np.ndarray:
        idx = self.roots.positive_rep_index
        return np.array([idx(Weight(tuple(w))) for w in weights.tolist()], dtype=np.int16)

    @property
    def n_vertices(self) -> int:
        return len(self.weyl.group)

    @property
    def n_edges(self) -> int:
        return len(self.u)

    def edge(self, i: int) -> Edge:
        return Edge(
            i,
            int(self.u[i]),
            int(self.v[i]),
            self.roots.positive[int(self.root[i])],
            self.roots.positive[int(self.label[i])].weight,
        )

    def find_edge(self, a: int, b: int) -> Edge:
        u, v = min(a, b), max(a, b)
        hits = np.nonzero((self.u == u) & (self.v == v))[0]
        if len(hits) != 1:
            raise KeyError(f"no unique edge between {a} and {b}")
        return self.edge(int(hits[0]))

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.bincount(self.u, minlength=self.n_vertices) + np.bincount(self.v, minlength=self.n_vertices)

    @cached_property
    def edges_by_label(self) -> dict[int, np.ndarray]:
        out = defaultdict(list)
        for i, lab in enumerate(self.label.tolist()):
            out[lab].append(i)
        return {k: np.array(v, dtype=np.int64) for k, v in sorted(out.items())}

    def check_edge_consistency(self) -> list[str]:
        """Recompute v = u*s_root and label = +-u(root) for every edge."""
        g = self.weyl.group
        refl = np.array([self.weyl.reflection_index[r.weight] for r in self.roots.positive])
        problems = []
        if not np.array_equal(g.mul[self.u, refl[self.root]], self.v):
            problems.append("v != u * s_root on some edge")
        pos_w = np.array([r.weight.coeffs for r in self.roots.positive])
        img = np.einsum("eij,ej->ei", g.matrices[self.u], pos_w[self.root])
        lab = pos_w[self.label]
        if not np.all(np.all(img == lab, axis=1) | np.all(img == -lab, axis=1)):
            problems.append("label != +-u(root) on some edge")
        return problems

    # -- coset structure -------------------------------------------------

    @cached_property
    def short_root_family(self) -> dict[Weight, int]:
        """0, 1, 2 for short roots in {+-t_i}, {+-rho t_i}, {+-rho^2 t_i}."""
        out = {}
        r = self.weyl.rho
        for eps in range(3):
            m = r**eps
            for i in range(1, 5):
                w = m.apply(t(i))
                out[w] = eps
                out[-w] = eps
        if len(out) != 24:
            raise AssertionError("short roots do not split into three families of eight")
        return out

    def quotient_diagram(self) -> dict[tuple[CosetLabel, CosetLabel], Counter]:
        """For each unordered pair of distinct cosets: Counter of (label family, reflection family)."""
        cos = self.weyl.coset_array
        fam = self.short_root_family
        pos = self.roots.positive
        out: dict[tuple[CosetLabel, CosetLabel], Counter] = {}
        for i in range(self.n_edges):
            u, v = int(self.u[i]), int(self.v[i])
            a = CosetLabel(int(cos[u, 0]), int(cos[u, 1]))
            b = CosetLabel(int(cos[v, 0]), int(cos[v, 1]))
            if a == b:
                continue
            key = tuple(sorted((a, b), key=lambda c: (c.epsilon, c.delta)))
            root = pos[int(self.root[i])]
            label = pos[int(self.label[i])].weight
            out.setdefault(key, Counter())[(fam.get(label, -1), fam.get(root.weight, -1))] += 1
        return out

    def intra_coset_roots_are_long(self) -> bool:
        cos = self.weyl.coset_array
        same = np.all(cos[self.u] == cos[self.v], axis=1)
        long = np.array([r.long for r in self.roots.positive])
        return bool(np.all(long[self.root[same]]) and not np.any(long[self.root[~same]]))

    def neighbours_in(self, vertex: int, coset: CosetLabel) -> list[Edge]:
        members = set(self.weyl.members(coset).tolist())
        out = []
        for i in np.nonzero((self.u == vertex) | (self.v == vertex))[0]:
            e = self.edge(int(i))
            other = e.v if e.u == vertex else e.u
            if other in members:
                out.append(e)
        return out


# Expected shape of the six-vertex quotient graph: unordered coset pair ->
# (family of the labels rho^e' t_i, family of the reflections s_{rho^e'' t_j}).
EXPECTED_QUOTIENT = {
    ((0, 0), (0, 1)): (0, 0),
    ((1, 0), (1, 1)): (1, 0),
    ((2, 0), (2, 1)): (2, 0),
    ((0, 0), (2, 1)): (1, 1),
    ((0, 1), (1, 0)): (2, 1),
    ((1, 1), (2, 0)): (0, 1),
    ((1, 0), (2, 1)): (0, 2),
    ((0, 1), (2, 0)): (1, 2),
    ((0, 0), (1, 1)): (2, 2),
}


def compare_quotient(graph: GkmGraph) -> list[str]:
    """Differences between the observed quotient graph and EXPECTED_QUOTIENT (empty list = match)."""
    seen = graph.quotient_diagram()
    problems = []
    for a in COSET_LABELS:
        for b in COSET_LABELS:
            if (a.epsilon, a.delta) >= (b.epsilon, b.delta):
                continue
            key = ((a.epsilon, a.delta), (b.epsilon, b.delta))
            got = seen.get((a, b))
            want = EXPECTED_QUOTIENT.get(key)
            if want is None:
                if got:
                    problems.append(f"{a} and {b} should not be adjacent, found {sum(got.values())} edges")
                continue
            if not got or set(got) != {want}:
                problems.append(f"{a}-{b}: expected families {want}, got {dict(got or {})}")
                continue
            if got[want] != 192 * 4:
                problems.append(f"{a}-{b}: expected 768 edges, got {got[want]}")
    return problems


@lru_cache(maxsize=1)
def gkm_graph() -> GkmGraph:
    return GkmGraph(f4_weyl())
