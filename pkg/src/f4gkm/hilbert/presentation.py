"""Graded presentations: a polynomial ring with named homogeneous relations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ..lattice import t
from ..polyring import PRES, Polynomial, RingSpec, elem_sym, substitute_linear
from ..weyl import f4_weyl


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class GradedPresentation:
    ring: RingSpec
    relations: tuple[tuple[str, Polynomial], ...]
    name: str = ""

    def __post_init__(self):
        names = [n for n, _ in self.relations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate relation names in {names}")
        for n, r in self.relations:
            if r.ring != self.ring:
                raise ValueError(f"relation {n} lives in another ring")
            if r.is_zero():
                continue
            if not r.is_homogeneous():
                raise NotHomogeneous(f"relation {n} is not homogeneous: degrees {sorted(r.degrees_present())}")
            d = r.degree
            if d <= 0 or d % 2:
                raise NotHomogeneous(f"relation {n} has degree {d}")

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.relations]

    def relation(self, name: str) -> Polynomial:
        for n, r in self.relations:
            if n == name:
                return r
        raise KeyError(name)

    def degrees(self) -> dict[str, int]:
        return {n: r.degree for n, r in self.relations}

    def select(self, names: Iterable[str]) -> "GradedPresentation":
        """The presentation with only the named relations, in the given order."""
        names = list(names)
        return GradedPresentation(self.ring, tuple((n, self.relation(n)) for n in names), self.name)

    def __len__(self) -> int:
        return len(self.relations)


# -- the rho-images of e4(t), lifted from H^*(BT) by t_i -> t_i, g -> g -----------


@lru_cache(maxsize=None)
def e4_rho_lifts() -> tuple[Polynomial, Polynomial]:
    """(e4(rho t), e4(rho^2 t)) as polynomials in t1, t2, t3, g."""
    from ..gkm.functions import weight_poly

    W = f4_weyl()
    out = []
    for eps in (1, 2):
        imgs = [weight_poly((W.rho**eps).apply(t(i))) for i in range(1, 5)]
        out.append(elem_sym(4, imgs))
    return out[0], out[1]


def _lift(p: Polynomial, ring: RingSpec) -> Polynomial:
    return substitute_linear(p, {}, target=ring)


def _alt(G: Sequence[Polynomial], E: Sequence[Polynomial], k: int, lo: int, hi: int, zero: Polynomial) -> Polynomial:
    s = zero
    for j in range(lo, hi + 1):
        i = k - j
        inner = (G[i] if 1 <= i <= 4 else zero) + (E[i] if 0 <= i <= 4 else zero)
        term = G[j] * inner
        s = s + (term if j % 2 == 0 else -term)
    return s


def main_relations() -> dict[str, Polynomial]:
    R = PRES
    v = {n: R.var(n) for n in R.names}
    ts = [v[f"t{i}"] for i in range(1, 5)]
    taus = [v[f"tau{i}"] for i in range(1, 5)]
    e_t = [elem_sym(k, ts, R) for k in range(5)]
    e_tau = [elem_sym(k, taus, R) for k in range(5)]
    G = [R.zero] + [v[f"g{i}"] for i in range(1, 5)]
    g, om = v["g"], v["omega"]
    p1, p2 = (_lift(p, R) for p in e4_rho_lifts())
    return {
        "r1'": e_t[1] - 2 * g,
        "R1": e_tau[1] - e_t[1] - 2 * G[1],
        "R2": e_tau[2] - e_t[2] - 2 * G[2],
        "R3": e_tau[3] - e_t[3] - 2 * G[3],
        "R4": e_tau[4] - e_t[4] - 2 * G[4] - om,
        "r2": _alt(G, e_t, 2, 1, 2, R.zero),
        "r4": _alt(G, e_t, 4, 1, 4, R.zero) - om,
        "r6": _alt(G, e_t, 6, 2, 4, R.zero) + (G[2] + g * g) * om,
        "r8": G[4] * (G[4] + e_t[4]) + om * om + (G[4] - p1) * om,
        "r12": om * (om - p1) * (om + p2),
    }


MAIN_ORDER = ("r1'", "R1", "R2", "R3", "R4", "r2", "r4", "r6", "r8", "r12")


def main_presentation() -> GradedPresentation:
    rel = main_relations()
    return GradedPresentation(PRES, tuple((n, rel[n]) for n in MAIN_ORDER), "main")


# -- gamma2 and gamma4 erased --------------------------------------------------

REDUCED = PRES.subring(["g2", "g4"])


def erase_g2_g4(ring: RingSpec = REDUCED) -> dict[str, Polynomial]:
    """Images of g2, g4 solved from r2 = 0 and r4 = 0."""
    v = {n: ring.var(n) for n in ring.names}
    ts = [v[f"t{i}"] for i in range(1, 5)]
    e = [elem_sym(k, ts, ring) for k in range(5)]
    g1, g3, om = v["g1"], v["g3"], v["omega"]
    g2 = g1 * (g1 + e[1])
    g4 = om + g1 * (g3 + e[3]) - g2 * (g2 + e[2]) + g3 * (g1 + e[1])
    return {"g2": g2, "g4": g4}


def reduced_presentation() -> GradedPresentation:
    """Relations r1', R1..R4, r6, r8, r12 with g2 and g4 erased."""
    images = erase_g2_g4()
    rel = main_relations()
    names = ("r1'", "R1", "R2", "R3", "R4", "r6", "r8", "r12")
    return GradedPresentation(
        REDUCED, tuple((n, substitute_linear(rel[n], images, target=REDUCED)) for n in names), "reduced"
    )


def erased_relations_vanish() -> bool:
    images = erase_g2_g4()
    rel = main_relations()
    return all(substitute_linear(rel[n], images, target=REDUCED).is_zero() for n in ("r2", "r4"))


SEQUENCE_P2 = ("r1'", "r12", "R4", "R3", "R2", "R1", "r6", "r8")


# -- odd primes: the gammas are erased using the unit 2 -----------------------

ODD = RingSpec(
    ("t1", "t2", "t3", "t4", "g", "tau1", "tau2", "tau3", "tau4", "omega"),
    (2, 2, 2, 2, 2, 2, 2, 2, 2, 8),
)


def square_identities(ring: RingSpec = ODD) -> dict[str, Polynomial]:
    """e_k(tau^2) - e_k(t^2) minus the omega corrections, named by degree e2..e8."""
    v = {n: ring.var(n) for n in ring.names}
    ts = [v[f"t{i}"] for i in range(1, 5)]
    taus = [v[f"tau{i}"] for i in range(1, 5)]
    tsq = [x * x for x in ts]
    tausq = [x * x for x in taus]
    St = [elem_sym(k, tsq, ring) for k in range(5)]
    Stau = [elem_sym(k, tausq, ring) for k in range(5)]
    om = v["omega"]
    p1, p2 = (_lift(p, ring) for p in e4_rho_lifts())
    return {
        "e2": Stau[1] - St[1],
        "e4": Stau[2] - St[2] - 6 * om,
        "e6": Stau[3] - St[3] - St[1] * om,
        "e8": Stau[4] - St[4] + 3 * om * om - 2 * (p1 - p2) * om,
    }


def odd_presentation() -> GradedPresentation:
    v = {n: ODD.var(n) for n in ODD.names}
    ts = [v[f"t{i}"] for i in range(1, 5)]
    om = v["omega"]
    p1, p2 = (_lift(p, ODD) for p in e4_rho_lifts())
    rel = {"r1'": elem_sym(1, ts, ODD) - 2 * v["g"], "r12": om * (om - p1) * (om + p2)}
    rel.update(square_identities())
    names = ("r1'", "r12", "e8", "e6", "e4", "e2")
    return GradedPresentation(ODD, tuple((n, rel[n]) for n in names), "odd")


SEQUENCE_ODD = ("r1'", "r12", "e8", "e6", "e4", "e2")


# -- the non-equivariant presentations -----------------------------------------

FLAG = RingSpec(("tau1", "tau2", "tau3", "tau4", "g1", "g2", "g3", "g4", "omega"), (2, 2, 2, 2, 2, 4, 6, 8, 8))


def flag_relations() -> dict[str, Polynomial]:
    v = {n: FLAG.var(n) for n in FLAG.names}
    taus = [v[f"tau{i}"] for i in range(1, 5)]
    e = [elem_sym(k, taus, FLAG) for k in range(5)]
    g1, g2, g3, g4, om = (v[n] for n in ("g1", "g2", "g3", "g4", "omega"))
    return {
        "Q1": e[1] - 2 * g1,
        "Q2": e[2] - 2 * g2,
        "Q3": e[3] - 2 * g3,
        "Q4": e[4] - 2 * g4 - om,
        "q2": g2 - g1 * g1,
        "q4": g4 - 2 * g1 * g3 + g2 * g2 - om,
        "q6": 2 * g2 * g4 - g3 * g3 + g2 * om,
        "q8": g4 * g4 + g4 * om + om * om,
        "q12": om**3,
    }


FLAG_ORDER = ("Q1", "Q2", "Q3", "Q4", "q2", "q4", "q6", "q8", "q12")
FLAG_FROM_MAIN = {"R1": "Q1", "R2": "Q2", "R3": "Q3", "R4": "Q4", "r2": "q2", "r4": "q4", "r6": "q6", "r8": "q8", "r12": "q12"}


def flag_presentation() -> GradedPresentation:
    rel = flag_relations()
    return GradedPresentation(FLAG, tuple((n, rel[n]) for n in FLAG_ORDER), "flag")


def specialize_main_to_flag() -> dict[str, Polynomial]:
    """Main relations with t1..t4 and g set to zero, renamed to their flag counterparts."""
    zero = {n: FLAG.zero for n in ("t1", "t2", "t3", "t4", "g")}
    rel = main_relations()
    out = {FLAG_FROM_MAIN.get(n, n): substitute_linear(p, zero, target=FLAG) for n, p in rel.items()}
    return out


TW = RingSpec(("tau1", "tau2", "tau3", "tau4", "g1", "g3", "omega"), (2, 2, 2, 2, 2, 6, 8))


def tw_relations() -> dict[str, Polynomial]:
    v = {n: TW.var(n) for n in TW.names}
    taus = [v[f"tau{i}"] for i in range(1, 5)]
    e = [elem_sym(k, taus, TW) for k in range(5)]
    g1, g3, om = v["g1"], v["g3"], v["omega"]
    return {
        "rb1": 2 * g1 - e[1],
        "rb2": 2 * g1**2 - e[2],
        "rb3": 2 * g3 - e[3],
        "rb4": e[4] - 2 * g1 * e[3] + 2 * g1**4 - 3 * om,
        "rb6": -(g1**2) * e[4] + g3 * g3,
        "rb8": 3 * e[4] * g1**4 - g1**8 + 3 * om * (om + e[3] * g1),
        "rb12": om**3,
    }


TW_ORDER = ("rb1", "rb2", "rb3", "rb4", "rb6", "rb8", "rb12")


def tw_presentation() -> GradedPresentation:
    rel = tw_relations()
    return GradedPresentation(TW, tuple((n, rel[n]) for n in TW_ORDER), "toda-watanabe")


def flag_dependent_images() -> dict[str, Polynomial]:
    """g2 and g4 solved from q2 = 0 and q4 = 0, in the smaller ring."""
    v = {n: TW.var(n) for n in TW.names}
    g1, g3, om = v["g1"], v["g3"], v["omega"]
    g2 = g1 * g1
    return {"g2": g2, "g4": 2 * g1 * g3 - g2 * g2 + om}
