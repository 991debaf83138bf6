"""The non-equivariant presentation and its comparison with the Toda-Watanabe relations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..linalg import solve_rational
from ..polyring import Polynomial, basis_index, monomial_basis, pack, substitute_linear
from ..report import Check, check
from .macaulay import truncated_hilbert_fp
from .presentation import (
    FLAG_ORDER,
    TW,
    TW_ORDER,
    flag_dependent_images,
    flag_presentation,
    flag_relations,
    tw_presentation,
    tw_relations,
)
from .series import flag_factor_series


@dataclass
class Congruence:
    name: str
    lhs: Polynomial
    rhs: Polynomial
    modulus: list[tuple[str, Polynomial]]
    cofactors: list[Polynomial] | None = None
    integral: bool = False
    verified: bool = False

    def residual(self) -> Polynomial:
        total = self.lhs - self.rhs
        for (_, g), c in zip(self.modulus, self.cofactors or []):
            total = total - c * g
        return total


def solve_cofactors(target: Polynomial, gens: Sequence[Polynomial]) -> list[Polynomial] | None:
    """Homogeneous c_i with target = sum c_i g_i over Q, or None when target is not in the ideal."""
    ring = target.ring
    if target.is_zero():
        return [ring.zero for _ in gens]
    d = target.degree
    row_of = basis_index(ring, d)
    unknowns: list[tuple[int, tuple[int, ...]]] = []
    for i, g in enumerate(gens):
        for m in monomial_basis(ring, d - g.degree) if d >= g.degree else ():
            unknowns.append((i, m))
    if not unknowns:
        return None
    A = [[0] * len(unknowns) for _ in range(len(row_of))]
    for j, (i, m) in enumerate(unknowns):
        mk = pack(m)
        for k, c in gens[i]._t.items():
            A[row_of[k + mk]][j] = c
    b = [0] * len(row_of)
    for k, c in target._t.items():
        b[row_of[k]] = c
    sol = solve_rational(A, b)
    if sol is None:
        return None
    if any(Fraction(x).denominator != 1 for x in sol):
        raise ValueError("cofactor solution is not integral")
    out = [ring.zero for _ in gens]
    for (i, m), x in zip(unknowns, sol):
        if x:
            out[i] = out[i] + ring.monomial(m, int(x))
    return out


def congruences(fault: str | None = None) -> tuple[list[Congruence], dict[str, Polynomial]]:
    images = flag_dependent_images()
    fl = {n: substitute_linear(p, images, target=TW) for n, p in flag_relations().items()}
    tw = tw_relations()
    if fault == "corollary":
        tw["rb8"] = tw["rb8"] + TW.var("omega") ** 2
    cons = [
        Congruence("Q1 = -rb1", fl["Q1"], -tw["rb1"], []),
        Congruence("Q2 = -rb2", fl["Q2"], -tw["rb2"], []),
        Congruence("Q3 = -rb3", fl["Q3"], -tw["rb3"], []),
        Congruence("Q4 = rb4 mod (Q3)", fl["Q4"], tw["rb4"], [("Q3", fl["Q3"])]),
        Congruence("q6 = -rb6 mod (Q4)", fl["q6"], -tw["rb6"], [("Q4", fl["Q4"])]),
        Congruence("q8 = rb8 mod (q6, Q3, Q4)", fl["q8"], tw["rb8"], [("q6", fl["q6"]), ("Q3", fl["Q3"]), ("Q4", fl["Q4"])]),
        Congruence("q12 = rb12", fl["q12"], tw["rb12"], []),
    ]
    for c in cons:
        try:
            cof = solve_cofactors(c.lhs - c.rhs, [g for _, g in c.modulus])
        except ValueError:
            cof = None
        else:
            c.integral = cof is not None
        c.cofactors = cof
        c.verified = cof is not None and c.residual().is_zero()
    return cons, fl


def verify_corollary(N: int = 16, primes: Sequence[int] = (2, 3, 5), threads: int = 1, fault: str | None = None) -> list[Check]:
    cons, fl = congruences(fault)
    out = [
        check(
            "q2 and q4 vanish after erasing g2 and g4",
            "dependent generators of the flag presentation",
            fl["q2"].is_zero() and fl["q4"].is_zero(),
        )
    ]
    first_three = cons[:3]
    out.append(
        check(
            "Q_i = -rb_i for i = 1, 2, 3",
            "congruence of the linear relations",
            all(c.verified for c in first_three),
            residuals=[str(c.residual()) if c.cofactors is not None else "unsolved" for c in first_three],
        )
    )
    for c in cons[3:]:
        out.append(
            check(
                c.name,
                "congruence with explicit cofactors",
                c.verified,
                modulus=[n for n, _ in c.modulus],
                cofactors={n: str(p) for (n, _), p in zip(c.modulus, c.cofactors)} if c.cofactors else None,
                integral=c.integral,
            )
        )
    target = flag_factor_series(N)
    for label, pres in (("flag", flag_presentation()), ("toda-watanabe", tw_presentation())):
        for p in primes:
            s = truncated_hilbert_fp(pres, p, N, threads)
            out.append(
                check(
                    f"Hilbert series of the {label} presentation over GF({p})",
                    "Poincare series of the flag variety",
                    s == target,
                    computed=s.even(),
                    expected=target.even(),
                    first_difference=s.first_difference(target),
                )
            )
    return out
