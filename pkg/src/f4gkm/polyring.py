"""Sparse multivariate polynomials with exact integer coefficients.

Every ring is graded: each variable carries an even positive degree and the
degree of a monomial is the weighted sum of its exponents.  Internally a
monomial is packed into a single Python integer (16 bits per exponent) so that
multiplying monomials is one integer addition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

import numpy as np

_BITS = 16
_MASK = (1 << _BITS) - 1
_MAX_EXP = _MASK


class RingMismatch(TypeError):
    """Operands live in different rings."""


class NotDivisible(ArithmeticError):
    """The polynomial is not a multiple of the given linear form."""


class NotEven(ArithmeticError):
    """Some coefficient is odd, so the polynomial cannot be halved."""


@dataclass(frozen=True)
class RingSpec:
    """Variable names and their (even, positive) degrees."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for name, deg in zip(self.names, self.degrees):
            if deg <= 0 or deg % 2:
                raise ValueError(f"variable {name} has degree {deg}; degrees must be even and positive")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in ring {self.names}") from None

    def var(self, name: str) -> "Polynomial":
        return Polynomial._raw(self, {1 << (_BITS * self.index(name)): 1})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def const(self, c: int) -> "Polynomial":
        return Polynomial._raw(self, {0: c} if c else {})

    @property
    def zero(self) -> "Polynomial":
        return self.const(0)

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def monomial(self, exps: Sequence[int], coef: int = 1) -> "Polynomial":
        return Polynomial._raw(self, {pack(exps): coef} if coef else {})

    def subring(self, drop: Iterable[str]) -> "RingSpec":
        drop = set(drop)
        keep = [i for i, n in enumerate(self.names) if n not in drop]
        return RingSpec(tuple(self.names[i] for i in keep), tuple(self.degrees[i] for i in keep))


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(n))


def _weighted_degree(key: int, degrees: Sequence[int]) -> int:
    d = 0
    i = 0
    while key:
        d += (key & _MASK) * degrees[i]
        key >>= _BITS
        i += 1
    return d


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero ints."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Sequence[int], int] | None = None):
        t: dict[int, int] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != ring.nvars:
                raise ValueError(f"monomial {exps} has wrong length for ring {ring.names}")
            if c:
                k = pack(exps)
                t[k] = t.get(k, 0) + int(c)
        self.ring = ring
        self._t = {k: c for k, c in t.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingSpec, t: dict[int, int]) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p._t = t
        p._hash = None
        return p

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        n = self.ring.nvars
        return {unpack(k, n): c for k, c in self._t.items()}

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._t.get(pack(exps), 0)

    def constant_term(self) -> int:
        return self._t.get(0, 0)

    def degrees_present(self) -> set[int]:
        return {_weighted_degree(k, self.ring.degrees) for k in self._t}

    @property
    def degree(self) -> int:
        """Largest (cohomological) degree of a term; -1 for the zero polynomial."""
        return max(self.degrees_present(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees_present()) <= 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        degs = self.ring.degrees
        return Polynomial._raw(self.ring, {k: c for k, c in self._t.items() if _weighted_degree(k, degs) == d})

    def variables(self) -> set[str]:
        used = 0
        for k in self._t:
            used |= k
        return {n for i, n in enumerate(self.ring.names) if (used >> (_BITS * i)) & _MASK}

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for c in self._t.values()), default=0)

    def _check(self, other: "Polynomial") -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch(f"{self.ring.names} vs {other.ring.names}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return self.ring.zero
            return Polynomial._raw(self.ring, {k: c * other for k, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, int] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return Polynomial._raw(self.ring, {k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self._t == ({0: other} if other else {})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    # -- rendering ------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in graded lexicographic order (highest degree first)."""
        degs = self.ring.degrees
        items = [(e, c) for e, c in self.terms.items()]
        items.sort(key=lambda ec: (-sum(a * d for a, d in zip(ec[0], degs)), tuple(-a for a in ec[0])))
        return items

    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = []
        for exps, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, exps) if e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coef": str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ring: RingSpec, data: list[dict]) -> "Polynomial":
        return cls(ring, {tuple(d["exps"]): int(d["coef"]) for d in data})


# -- module-level operations --------------------------------------------------


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p * q


def neg(p: Polynomial) -> Polynomial:
    return -p


def scalar_mul(c: int, p: Polynomial) -> Polynomial:
    return p * c


def pow(p: Polynomial, k: int) -> Polynomial:  # noqa: A001 - mirrors the arithmetic API
    return p**k


def elem_sym(k: int, xs: Sequence[Polynomial], ring: RingSpec | None = None) -> Polynomial:
    """Coefficient of z^k in prod(1 + x z)."""
    if ring is None:
        if not xs:
            raise ValueError("ring required for an empty list")
        ring = xs[0].ring
    if k < 0 or k > len(xs):
        return ring.zero
    e = [ring.one] + [ring.zero] * k
    for i, x in enumerate(xs):
        for j in range(min(i + 1, k), 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e[k]


def elem_sym_all(xs: Sequence[Polynomial], ring: RingSpec | None = None) -> list[Polynomial]:
    ring = ring or xs[0].ring
    e = [ring.one] + [ring.zero] * len(xs)
    for i, x in enumerate(xs):
        for j in range(i + 1, 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e


def substitute_linear(p: Polynomial, assignments: Mapping[str, Polynomial], target: RingSpec | None = None) -> Polynomial:
    """Apply the ring homomorphism sending each variable to its assigned image.

    Variables missing from ``assignments`` are sent to the variable of the same
    name in ``target`` (which must then contain it).
    """
    src = p.ring
    if target is None:
        imgs = [a for a in assignments.values()]
        target = imgs[0].ring if imgs else src
    images = []
    for name in src.names:
        img = assignments.get(name)
        if img is None:
            img = target.var(name)
        elif img.ring != target:
            raise RingMismatch(f"image of {name} lives in {img.ring.names}, expected {target.names}")
        images.append(img)
    n = src.nvars
    powers: list[dict[int, Polynomial]] = [{0: target.one, 1: images[i]} for i in range(n)]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * images[i]
        return cache[e]

    result: dict[int, int] = {}
    for key, c in p._t.items():
        exps = unpack(key, n)
        term = target.const(c)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        for k, v in term._t.items():
            s = result.get(k, 0) + v
            if s:
                result[k] = s
            else:
                result.pop(k, None)
    return Polynomial._raw(target, result)


def _unit_variable(L: Polynomial) -> tuple[int, int]:
    """Index and coefficient (+1/-1) of the first variable with a unit coefficient in L."""
    if L.is_zero():
        raise ValueError("zero linear form")
    n = L.ring.nvars
    found = None
    for key, c in L._t.items():
        exps = unpack(key, n)
        if sum(exps) != 1:
            raise ValueError(f"{L} is not a linear form")
        i = exps.index(1)
        if abs(c) == 1 and (found is None or i < found[0]):
            found = (i, c)
    if found is None:
        raise ValueError(f"{L} has no coefficient equal to +-1")
    return found


def reduce_mod_linear(L: Polynomial, p: Polynomial) -> Polynomial:
    """Normal form of p modulo (L): eliminate L's first unit-coefficient variable."""
    p._check(L)
    i, c = _unit_variable(L)
    v = L.ring.names[i]
    rest = L - L.ring.var(v) * c
    return substitute_linear(p, {v: rest * (-c)}, target=p.ring)


def divisible_by_linear(L: Polynomial, p: Polynomial) -> Polynomial:
    """Exact quotient q with p = q*L, or raise NotDivisible."""
    p._check(L)
    i, c = _unit_variable(L)
    ring = p.ring
    if reduce_mod_linear(L, p):
        raise NotDivisible(f"{L} does not divide {p}")
    if p.is_zero():
        return ring.zero
    n = ring.nvars
    shift = _BITS * i
    # view p as a polynomial in v with coefficients free of v
    by_power: dict[int, dict[int, int]] = {}
    for key, coef in p._t.items():
        e = (key >> shift) & _MASK
        by_power.setdefault(e, {})[key & ~(_MASK << shift)] = coef
    top = max(by_power)
    coeffs = [Polynomial._raw(ring, by_power.get(e, {})) for e in range(top + 1)]
    root = (L - ring.var(ring.names[i]) * c) * (-c)
    # synthetic division of p(v) by (v - root); L = c*(v - root)
    q = [ring.zero] * top
    carry = ring.zero
    for e in range(top, 0, -1):
        carry = coeffs[e] + carry * root
        q[e - 1] = carry
    v = ring.var(ring.names[i])
    quotient = ring.zero
    for e in range(top - 1, -1, -1):
        quotient = quotient * v + q[e]
    quotient = quotient * c
    if quotient * L != p:
        raise AssertionError("synthetic division produced a wrong quotient")  # pragma: no cover
    return quotient


def is_divisible_by_linear(L: Polynomial, p: Polynomial) -> bool:
    return reduce_mod_linear(L, p).is_zero()


def halve(p: Polynomial) -> Polynomial:
    """p/2, or raise NotEven if some coefficient is odd."""
    for c in p._t.values():
        if c % 2:
            raise NotEven(f"odd coefficient {c} in {p}")
    return Polynomial._raw(p.ring, {k: c // 2 for k, c in p._t.items()})


def exact_div(p: Polynomial, d: int) -> Polynomial:
    for c in p._t.values():
        if c % d:
            raise ArithmeticError(f"{p} is not divisible by {d}")
    return Polynomial._raw(p.ring, {k: c // d for k, c in p._t.items()})


def coefficients_mod(p: Polynomial, m: int) -> Polynomial:
    """Reduce coefficients into (-m/2, m/2]... kept non-negative: range [0, m)."""
    return Polynomial._raw(p.ring, {k: c % m for k, c in p._t.items() if c % m})


# -- monomial bases and linear reduction matrices ------------------------------


@lru_cache(maxsize=None)
def monomial_basis(ring: RingSpec, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given weighted degree, graded-lex descending."""
    out: list[tuple[int, ...]] = []
    degs = ring.degrees
    n = ring.nvars

    def rec(i: int, left: int, acc: list[int]):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        d = degs[i]
        for e in range(left // d, -1, -1):
            acc.append(e)
            rec(i + 1, left - e * d, acc)
            acc.pop()

    if degree >= 0:
        rec(0, degree, [])
    return tuple(out)


def count_monomials(degrees: Sequence[int], N: int) -> list[int]:
    """Number of monomials in each degree 0..N for variables of the given degrees."""
    counts = [1] + [0] * N
    for d in degrees:
        for k in range(d, N + 1):
            counts[k] += counts[k - d]
    return counts


def coefficient_vector(p: Polynomial, basis: Sequence[tuple[int, ...]], index: Mapping[int, int] | None = None) -> list[int]:
    if index is None:
        index = {pack(e): i for i, e in enumerate(basis)}
    v = [0] * len(basis)
    for k, c in p._t.items():
        v[index[k]] = c
    return v


@lru_cache(maxsize=None)
def _basis_index(ring: RingSpec, degree: int) -> dict[int, int]:
    return {pack(e): i for i, e in enumerate(monomial_basis(ring, degree))}


def basis_index(ring: RingSpec, degree: int) -> dict[int, int]:
    return _basis_index(ring, degree)


def linear_reduction_matrix(L: Polynomial, degree: int) -> np.ndarray:
    """Integer matrix of the map p -> p mod (L) on the homogeneous piece of ``degree``.

    Rows are indexed by ``monomial_basis(ring, degree)``; columns by the same basis
    (reduced polynomials only use monomials free of the eliminated variable).  A
    coefficient vector ``x`` is divisible by L iff ``x @ M == 0``.
    """
    ring = L.ring
    basis = monomial_basis(ring, degree)
    idx = basis_index(ring, degree)
    i, _ = _unit_variable(L)
    keep = [j for j, e in enumerate(basis) if e[i] == 0]
    col = {j: c for c, j in enumerate(keep)}
    M = np.zeros((len(basis), len(keep)), dtype=object)
    for r, e in enumerate(basis):
        red = reduce_mod_linear(L, ring.monomial(e))
        for k, c in red._t.items():
            M[r, col[idx[k]]] = c
    if max((abs(int(x)) for x in M.flat), default=0) < 2**40:
        M = M.astype(np.int64)
    return M


# -- built-in rings ----------------------------------------------------------

BT = RingSpec(("t1", "t2", "t3", "g"), (2, 2, 2, 2))

PRES = RingSpec(
    ("t1", "t2", "t3", "t4", "g", "tau1", "tau2", "tau3", "tau4", "g1", "g2", "g3", "g4", "omega"),
    (2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 4, 6, 8, 8),
)


def variables(ring: RingSpec, names: str) -> tuple[Polynomial, ...]:
    """``variables(BT, "t1 t2 g")`` -> the corresponding generators."""
    return tuple(ring.var(n) for n in names.split())


def enumerate_monomials(ring: RingSpec, degree: int) -> Iterable[Polynomial]:
    for e in monomial_basis(ring, degree):
        yield ring.monomial(e)


def all_monomials_upto(n: int, k: int) -> Iterable[tuple[int, ...]]:
    """Exponent vectors of total degree exactly k in n variables (used for random tests)."""
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for j in combo:
            e[j] += 1
        yield tuple(e)
