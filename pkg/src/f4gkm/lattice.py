"""The weight lattice H^2(BT) of F4 and its 48 roots.

Weights are stored in the integral basis (t1, t2, t3, g) where g = (t1+t2+t3+t4)/2,
so that t4 = 2g - t1 - t2 - t3.  The inner product is the Euclidean one in the
t-coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

BASIS_NAMES = ("t1", "t2", "t3", "g")

# Gram matrix of the basis (t1, t2, t3, g)
GRAM = (
    (Fraction(1), Fraction(0), Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(1), Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(0), Fraction(1), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1)),
)


@dataclass(frozen=True, order=True)
class Weight:
    coeffs: tuple[int, int, int, int]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if len(c) != 4:
            raise ValueError(f"a weight has 4 coordinates, got {self.coeffs}")
        object.__setattr__(self, "coeffs", c)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_positive(self) -> bool:
        for a in self.coeffs:
            if a:
                return a > 0
        return False

    def canonical_sign(self) -> "Weight":
        """The representative of {self, -self} whose first nonzero coordinate is positive."""
        return self if self.is_positive() or self.is_zero() else -self

    def t_coordinates(self) -> tuple[Fraction, ...]:
        """Coordinates with respect to t1, t2, t3, t4 (halves appear for short roots)."""
        a1, a2, a3, g = self.coeffs
        h = Fraction(g, 2)
        return (a1 + h, a2 + h, a3 + h, h)

    def __str__(self) -> str:
        parts = []
        for c, n in zip(self.coeffs, BASIS_NAMES):
            if not c:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append(f"{sign}{mag}{n}")
        return "".join(parts) or "0"


def weight_from_t(t: Sequence[Fraction | int]) -> Weight:
    """Convert t-coordinates (a1..a4) into the (t1, t2, t3, g) basis."""
    a1, a2, a3, a4 = (Fraction(x) for x in t)
    out = (a1 - a4, a2 - a4, a3 - a4, 2 * a4)
    if any(x.denominator != 1 for x in out):
        raise ValueError(f"{tuple(t)} is not in the weight lattice")
    return Weight(tuple(int(x) for x in out))


def t(i: int) -> Weight:
    """The weight t_i for i in 1..4."""
    v = [0, 0, 0, 0]
    v[i - 1] = 1
    return weight_from_t(v)


GAMMA = Weight((0, 0, 0, 1))


def inner_product(a: Weight | Root, b: Weight | Root) -> Fraction:
    a = a.weight if isinstance(a, Root) else a
    b = b.weight if isinstance(b, Root) else b
    return sum(
        (GRAM[i][j] * a.coeffs[i] * b.coeffs[j] for i in range(4) for j in range(4) if a.coeffs[i] and b.coeffs[j]),
        Fraction(0),
    )


@dataclass(frozen=True)
class Root:
    weight: Weight
    long: bool

    @property
    def length_class(self) -> str:
        return "long" if self.long else "short"

    @property
    def positive(self) -> bool:
        return self.weight.is_positive()

    def __neg__(self) -> "Root":
        return Root(-self.weight, self.long)


class NotARoot(ValueError):
    pass


def reflect(alpha: Root | Weight, x: Weight) -> Weight:
    a = alpha.weight if isinstance(alpha, Root) else alpha
    if a.is_zero():
        raise NotARoot("cannot reflect in the zero weight")
    if a not in root_system().index:
        raise NotARoot(f"{a} is not a root of F4")
    k = 2 * inner_product(x, a) / inner_product(a, a)
    if k.denominator != 1:
        raise AssertionError(f"non-integral reflection coefficient {k}")  # pragma: no cover
    return x - a * int(k)


class RootSystem:
    """The 48 roots of F4 in canonical order (positive roots first)."""

    def __init__(self, roots: Iterable[Root]):
        self.roots: tuple[Root, ...] = tuple(sorted(roots, key=lambda r: r.weight.coeffs, reverse=True))
        self.index: dict[Weight, int] = {r.weight: i for i, r in enumerate(self.roots)}
        self.positive: tuple[Root, ...] = tuple(r for r in self.roots if r.positive)
        self.positive_index: dict[Weight, int] = {r.weight: i for i, r in enumerate(self.positive)}
        self.long: tuple[Root, ...] = tuple(r for r in self.roots if r.long)
        self.short: tuple[Root, ...] = tuple(r for r in self.roots if not r.long)
        tt = [t(i) for i in range(1, 5)]
        half = weight_from_t([Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)])
        self.simple = {
            1: self.root_of(tt[1] - tt[2]),
            2: self.root_of(tt[2] - tt[3]),
            3: self.root_of(tt[3]),
            4: self.root_of(half),
        }
        self.alpha0 = self.root_of(tt[0] - tt[1])
        self._validate()

    def root_of(self, w: Weight) -> Root:
        try:
            return self.roots[self.index[w]]
        except KeyError:
            raise NotARoot(f"{w} is not a root") from None

    def positive_rep_index(self, w: Weight) -> int:
        """Index into ``positive`` of the root +-w."""
        return self.positive_index[w.canonical_sign()]

    def _validate(self):
        if len(self.roots) != 48 or len(self.long) != 24 or len(self.positive) != 24:
            raise AssertionError("F4 must have 48 roots, 24 long, 24 positive")
        for r in self.roots:
            if -r.weight not in self.index:
                raise AssertionError(f"root set not closed under negation at {r.weight}")
            if not any(abs(c) == 1 for c in r.weight.coeffs):
                raise AssertionError(f"root {r.weight} has no unit coordinate")
            norm = inner_product(r.weight, r.weight)
            if norm != (2 if r.long else 1):
                raise AssertionError(f"root {r.weight} has squared norm {norm}")

    def to_json(self) -> str:
        return json.dumps(
            [{"coords": list(r.weight.coeffs), "long": r.long, "positive": r.positive} for r in self.roots],
            indent=1,
        )


def _build_roots() -> list[Root]:
    roots = []
    for i, j in combinations(range(4), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0, 0, 0, 0]
            v[i], v[j] = si, sj
            roots.append(Root(weight_from_t(v), True))
    for k in range(4):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[k] = s
            roots.append(Root(weight_from_t(v), False))
    for signs in product((1, -1), repeat=4):
        roots.append(Root(weight_from_t([Fraction(s, 2) for s in signs]), False))
    return roots


@lru_cache(maxsize=1)
def root_system() -> RootSystem:
    return RootSystem(_build_roots())


def f4_root_system() -> list[Root]:
    return list(root_system().roots)
