"""Truncated power series with integer coefficients, indexed by cohomological degree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SeriesTruncation:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else 0

    def __len__(self) -> int:
        return len(self.coefficients)

    def even(self) -> list[int]:
        return list(self.coefficients[::2])

    def first_difference(self, other: "SeriesTruncation") -> int | None:
        for d in range(max(len(self), len(other))):
            if self[d] != other[d]:
                return d
        return None

    def __mul__(self, other: "SeriesTruncation") -> "SeriesTruncation":
        N = min(self.N, other.N)
        return SeriesTruncation(mul_truncated(self.coefficients, other.coefficients, N))

    def to_csv(self) -> str:
        return "degree,dimension\n" + "".join(f"{d},{c}\n" for d, c in enumerate(self.coefficients))


def mul_truncated(a: Sequence[int], b: Sequence[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def one_minus(k: int, N: int) -> list[int]:
    """1 - x^k."""
    out = [0] * (N + 1)
    out[0] = 1
    if k <= N:
        out[k] -= 1
    return out


def inverse_one_minus(k: int, N: int) -> list[int]:
    """1 / (1 - x^k) = 1 + x^k + x^2k + ..."""
    return [1 if d % k == 0 else 0 for d in range(N + 1)]


def product_series(numerator_degrees: Sequence[int], denominator_degrees: Sequence[int], N: int) -> list[int]:
    """prod (1 - x^a) / prod (1 - x^b), truncated at degree N."""
    out = [1] + [0] * N
    for a in numerator_degrees:
        out = mul_truncated(out, one_minus(a, N), N)
    for b in denominator_degrees:
        out = mul_truncated(out, inverse_one_minus(b, N), N)
    return out


def closed_form_series(gen_degrees: Sequence[int], rel_degrees: Sequence[int], N: int) -> SeriesTruncation:
    """Hilbert series of a polynomial ring modulo a regular sequence."""
    for d in list(gen_degrees) + list(rel_degrees):
        if d <= 0 or d % 2:
            raise ValueError(f"degree {d} is not positive and even")
    if N < 0:
        raise ValueError("N must be non-negative")
    return SeriesTruncation(product_series(rel_degrees, gen_degrees, N))


def flag_factor_series(N: int) -> SeriesTruncation:
    """(1 + x^8 + x^16) prod_{i=1..4} (1 - x^{4i}) / (1 - x^2)."""
    top = [0] * (N + 1)
    for k in (0, 8, 16):
        if k <= N:
            top[k] = 1
    rest = product_series([4, 8, 12, 16], [2, 2, 2, 2], N)
    return SeriesTruncation(mul_truncated(top, rest, N))


def target_series(N: int) -> SeriesTruncation:
    """The equivariant Poincare series: 1/(1-x^2)^4 times the flag factor."""
    if N < 0:
        raise ValueError("N must be non-negative")
    base = product_series([], [2, 2, 2, 2], N)
    return SeriesTruncation(mul_truncated(base, flag_factor_series(N).coefficients, N))


def simplified_target_series(N: int) -> SeriesTruncation:
    """(1-x^4)(1-x^12)(1-x^16)(1-x^24) / (1-x^2)^8."""
    return SeriesTruncation(product_series([4, 12, 16, 24], [2] * 8, N))
