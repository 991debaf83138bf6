"""Hilbert functions of graded quotients over GF(p) via Macaulay matrices.

Before any matrix is built, relations of the form c*v + f (c a unit mod p, v a
variable of the relation's degree not occurring in f) are used to eliminate v.
This does not change the quotient ring and keeps the matrices small.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from ..linalg import ResourceCapExceeded, rank_modp_sparse
from ..polyring import (
    _BITS,
    _MASK,
    Polynomial,
    RingSpec,
    basis_index,
    coefficients_mod,
    count_monomials,
    monomial_basis,
    pack,
    substitute_linear,
)
from .presentation import GradedPresentation
from .series import SeriesTruncation, closed_form_series

DEFAULT_CELL_CAP = 400_000_000


@dataclass
class Reduced:
    """A presentation over GF(p) after eliminating linearly occurring variables."""

    ring: RingSpec
    relations: list[tuple[str, Polynomial]]
    eliminated: list[tuple[str, str]] = field(default_factory=list)  # (variable, relation)
    p: int = 2


def _eliminable(r: Polynomial, p: int) -> tuple[int, int] | None:
    """(variable index, unit coefficient) usable to eliminate a variable, or None."""
    ring = r.ring
    best = None
    for i in range(ring.nvars):
        if ring.degrees[i] != r.degree:
            continue
        shift = _BITS * i
        unit_key = 1 << shift
        c = r._t.get(unit_key, 0) % p
        if not c:
            continue
        if any(k != unit_key and (k >> shift) & _MASK for k in r._t):
            continue
        cand = (ring.degrees[i], i)
        if best is None or cand > best[0]:
            best = (cand, c)
    if best is None:
        return None
    return best[0][1], best[1]


def eliminate_mod_p(pres: GradedPresentation, p: int, N: int | None = None) -> Reduced:
    ring = pres.ring
    rels = []
    for name, r in pres.relations:
        if N is not None and r.degree > N:
            continue
        r = coefficients_mod(r, p)
        if not r.is_zero():
            rels.append((name, r))
    eliminated = []
    while True:
        hit = None
        for pos, (name, r) in enumerate(rels):
            e = _eliminable(r, p)
            if e is not None:
                hit = pos, name, r, e
                break
        if hit is None:
            break
        pos, name, r, (i, c) = hit
        v = ring.names[i]
        new_ring = ring.subring([v])
        rest = r - c * ring.var(v)
        inv = pow(c, p - 2, p) if p > 2 else 1
        image = coefficients_mod(substitute_linear(rest, {v: new_ring.zero}, target=new_ring) * (-inv), p)
        new_rels = []
        for k, (n2, r2) in enumerate(rels):
            if k == pos:
                continue
            s = coefficients_mod(substitute_linear(r2, {v: image}, target=new_ring), p)
            if not s.is_zero():
                new_rels.append((n2, s))
        ring, rels = new_ring, new_rels
        eliminated.append((v, name))
    return Reduced(ring, rels, eliminated, p)


@dataclass
class DegreeRank:
    degree: int
    monomials: int
    rows: int
    rank: int

    @property
    def dimension(self) -> int:
        return self.monomials - self.rank


def _rows_for(r: Polynomial, ring: RingSpec, d: int, idx: dict[int, int]) -> list[dict[int, int]]:
    terms = list(r._t.items())
    out = []
    for m in monomial_basis(ring, d - r.degree):
        mk = pack(m)
        out.append({idx[k + mk]: c for k, c in terms})
    return out


def degree_rank_fp(red: Reduced, d: int, threads: int = 1, cell_cap: int = DEFAULT_CELL_CAP) -> DegreeRank:
    ring = red.ring
    nmon = len(monomial_basis(ring, d))
    active = [r for _, r in red.relations if r.degree <= d]
    if nmon == 0 or not active:
        return DegreeRank(d, nmon, 0, 0)
    idx = basis_index(ring, d)
    if threads > 1 and len(active) > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda r: _rows_for(r, ring, d, idx), active))
    else:
        parts = [_rows_for(r, ring, d, idx) for r in active]
    rows = [row for part in parts for row in part]
    used = sorted({c for row in rows for c in row})
    cells = min(len(rows), len(used)) * max(len(rows), len(used))
    if red.p != 2 and cells > cell_cap:
        raise ResourceCapExceeded("macaulay_cells", cells, cell_cap)
    remap = {c: j for j, c in enumerate(used)}
    rows = [{remap[c]: v for c, v in row.items()} for row in rows]
    rank = rank_modp_sparse(rows, len(used), red.p)
    return DegreeRank(d, nmon, len(rows), rank)


def hilbert_table(
    pres: GradedPresentation, p: int, N: int, threads: int = 1, cell_cap: int = DEFAULT_CELL_CAP
) -> tuple[SeriesTruncation, list[DegreeRank], Reduced]:
    red = eliminate_mod_p(pres, p, N)
    table = [degree_rank_fp(red, d, threads, cell_cap) for d in range(0, N + 1, 2)]
    coeffs = [0] * (N + 1)
    for row in table:
        coeffs[row.degree] = row.dimension
    return SeriesTruncation(coeffs), table, red


def truncated_hilbert_fp(pres: GradedPresentation, p: int, N: int, threads: int = 1, cell_cap: int = DEFAULT_CELL_CAP) -> SeriesTruncation:
    """dim over GF(p) of each graded piece of the quotient, degrees 0..N."""
    return hilbert_table(pres, p, N, threads, cell_cap)[0]


def free_series(ring: RingSpec, N: int) -> SeriesTruncation:
    return SeriesTruncation(count_monomials(ring.degrees, N))


# -- regular sequences -------------------------------------------------------------


@dataclass
class RegularStep:
    relation: str
    degree: int
    ok: bool
    failing_degree: int | None
    expected: list[int]
    got: list[int]


@dataclass
class RegularCheck:
    sequence: list[str]
    p: int
    N: int
    steps: list[RegularStep]
    quotient: SeriesTruncation
    closed_form: SeriesTruncation

    @property
    def regular(self) -> bool:
        return all(s.ok for s in self.steps)

    @property
    def first_failure(self) -> RegularStep | None:
        return next((s for s in self.steps if not s.ok), None)

    @property
    def matches_closed_form(self) -> bool:
        return self.quotient == self.closed_form


def regular_check_fp(
    pres: GradedPresentation,
    sequence: Sequence[str],
    p: int,
    N: int,
    threads: int = 1,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> RegularCheck:
    """Check that each element is a non-zero-divisor modulo its predecessors, degree by degree."""
    prev = free_series(pres.ring, N)
    steps = []
    for k, name in enumerate(sequence):
        a = pres.relation(name).degree
        cur = truncated_hilbert_fp(pres.select(sequence[: k + 1]), p, N, threads, cell_cap)
        expected = [prev[d] - (prev[d - a] if d >= a else 0) for d in range(N + 1)]
        bad = next((d for d in range(N + 1) if expected[d] != cur[d]), None)
        steps.append(RegularStep(name, a, bad is None, bad, expected[::2], cur.even()))
        prev = cur
    closed = closed_form_series(pres.ring.degrees, [pres.relation(n).degree for n in sequence], N)
    return RegularCheck(list(sequence), p, N, steps, prev, closed)
