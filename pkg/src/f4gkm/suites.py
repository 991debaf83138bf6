"""The check suites run by each CLI subcommand.

Every suite returns a list of ``Check``.  ``fault`` names one check family whose
computation is perturbed by a single sign flip, to show that the check can fail.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .gkm.functions import Builtins, GkmFunction, builtins, check_gkm, weight_poly
from .gkm.graph import GkmGraph, compare_quotient, gkm_graph
from .gkm.identities import (
    verify_e4_sum,
    verify_e_identities,
    verify_omega_values,
    verify_relations,
    verify_symbolic_derivation,
    verify_table1,
)
from .gkm.lemma import verify_lemma_fn
from .gkm.rank import RankResult, degree_rank_result
from .hilbert.corollary import verify_corollary
from .hilbert.macaulay import hilbert_table, regular_check_fp
from .hilbert.presentation import (
    SEQUENCE_ODD,
    SEQUENCE_P2,
    erased_relations_vanish,
    main_presentation,
    odd_presentation,
    reduced_presentation,
)
from .hilbert.series import SeriesTruncation, closed_form_series, mul_truncated, product_series, simplified_target_series, target_series
from .lattice import GAMMA, Weight, t, weight_from_t
from .report import Check, check
from .weyl import COSET_LABELS, F4Weyl, root_pair_action, s3_compose, s3_model

FAULTS = {
    "group": "group",
    "graph": "graph",
    "gkm": "verify",
    "relations": "verify",
    "e_identities": "verify",
    "symbolic": "verify",
    "table1": "verify",
    "e4_sum": "verify",
    "omega": "verify",
    "lemma": "verify",
    "regular": "hilbert",
    "target": "hilbert",
    "corollary": "corollary",
    "rank": "rank",
}


def faults_for(command: str) -> list[str]:
    return sorted(k for k, v in FAULTS.items() if v == command)


# -- group ---------------------------------------------------------------------


def group_checks(W: F4Weyl, fault: str | None = None) -> list[Check]:
    g = W.group
    out = [
        check("order of W(F4)", "order of the Weyl group", W.order == 1152, order=W.order),
        check("order of W(Spin(8))", "order of the long-root subgroup", len(W.spin8) == 192, order=len(W.spin8)),
    ]
    H = W.spin8_indices
    normal = True
    for s in (W.reflection_index[W.roots.simple[i].weight] for i in (1, 2, 3, 4)):
        conj = g.mul[g.mul[s, H], g.inv[s]]
        normal &= bool(np.all(W.in_spin8[conj]))
    out.append(check("W(Spin(8)) is normal", "normality of the long-root subgroup", normal))
    sizes = [len(W.members(lab)) for lab in COSET_LABELS]
    out.append(check("six cosets of size 192", "coset decomposition", sizes == [192] * 6, sizes=sizes))
    rho, kappa = W.rho, W.kappa
    ident = type(rho).identity()
    out.append(check("rho^3 = id", "order of rho", rho**3 == ident and rho != ident))
    out.append(check("kappa^2 = id", "order of kappa", kappa @ kappa == ident and kappa != ident))
    out.append(check("kappa rho = rho^2 kappa", "dihedral relation", kappa @ rho == rho**2 @ kappa))
    expected = {1: t(1) - GAMMA, 2: t(2) - GAMMA, 3: t(3) - GAMMA, 4: GAMMA - t(4)}
    if fault == "group":
        expected[4] = -expected[4]
    got = {i: rho.apply(t(i)) for i in range(1, 5)}
    out.append(
        check(
            "action of rho on t1..t4",
            "values of rho on the standard basis",
            got == expected,
            computed={f"t{i}": str(w) for i, w in got.items()},
            expected={f"t{i}": str(w) for i, w in expected.items()},
        )
    )
    rho_perm, kappa_perm = root_pair_action(W, rho), root_pair_action(W, kappa)
    out.append(
        check(
            "rho cycles and kappa swaps the three root pairs",
            "action on the root pairs +-t4, +-rho t4, +-rho^2 t4",
            rho_perm == (1, 2, 0) and kappa_perm == (0, 2, 1),
            rho=list(rho_perm),
            kappa=list(kappa_perm),
        )
    )
    model = s3_model(rho_perm, kappa_perm)
    table = W.coset_table()
    table_ok = len(set(model.values())) == 6 and all(
        s3_compose(model[a], model[b]) == model[c] for (a, b), c in table.items()
    )
    out.append(check("coset table is the multiplication table of S3", "quotient by W(Spin(8))", table_ok))
    fam = _short_root_families(W)
    fixed = True
    for m in g.matrices[W.spin8_indices]:
        for w, e in fam.items():
            img = Weight(tuple(int(x) for x in m @ np.array(w.coeffs)))
            fixed &= fam[img] == e
    out.append(check("W(Spin(8)) preserves each short-root family", "invariance of the three families", bool(fixed)))
    codes = W.coset_code()
    inv_ok = True
    for r in W.roots.long:
        if r.positive:
            s = W.reflection_index[r.weight]
            inv_ok &= bool(np.array_equal(codes[g.mul[:, s]], codes))
    out.append(check("coset label is invariant under right multiplication by W(Spin(8))", "coset classification", inv_ok))
    return out


def _short_root_families(W: F4Weyl) -> dict[Weight, int]:
    out = {}
    for eps in range(3):
        m = W.rho**eps
        for i in range(1, 5):
            w = m.apply(t(i))
            out[w] = out[-w] = eps
    return out


def group_summary(W: F4Weyl) -> list[str]:
    lines = [f"order(W(F4)) = {W.order}", f"order(W(Spin8)) = {len(W.spin8)}", "coset table (row * column):"]
    table = W.coset_table()
    names = [str(lab) for lab in COSET_LABELS]
    width = max(len(n) for n in names) + 1
    lines.append(" " * width + "".join(n.ljust(width) for n in names))
    for a in COSET_LABELS:
        lines.append(str(a).ljust(width) + "".join(str(table[(a, b)]).ljust(width) for b in COSET_LABELS))
    for i in range(1, 5):
        lines.append(f"rho(t{i}) = {W.rho.apply(t(i))}")
    lines.append(f"kappa = reflection in t4; kappa(t4) = {W.kappa.apply(t(4))}")
    return lines


# -- graph ----------------------------------------------------------------------


def graph_checks(G: GkmGraph, fault: str | None = None) -> list[Check]:
    W = G.weyl
    out = [
        check("vertex count", "vertices of the GKM graph", G.n_vertices == 1152, vertices=G.n_vertices),
        check("edge count", "edges of the GKM graph", G.n_edges == 13824, edges=G.n_edges),
        check("every vertex has degree 24", "regularity of the GKM graph", bool(np.all(G.degrees == 24))),
    ]
    problems = G.check_edge_consistency()
    out.append(check("edges are w -- w s_a with label +-w(a)", "edge definition", not problems, problems=problems))
    out.append(
        check("edges inside a coset use long roots, between cosets short roots", "roots inside the cosets", G.intra_coset_roots_are_long())
    )
    problems = compare_quotient(G)
    out.append(check("coset adjacency diagram", "six-vertex quotient", not problems, problems=problems))
    e = G.find_edge(W.kappa_index, W.rho_index)
    want = (W.rho**2).apply(t(4))
    if fault == "graph":
        tc = list(want.t_coordinates())
        tc[0] = -tc[0]
        want = weight_from_t(tc)
    ok = e.label == want.canonical_sign()
    out.append(check("edge (kappa, rho) has label +-rho^2 t4", "label between kappa and rho", ok, label=str(e.label), expected=str(want)))
    rhoW = W.members((1, 0))
    four_ok = True
    rho_t = {W.rho.apply(t(i)).canonical_sign() for i in range(1, 5)}
    t_roots = {t(i).canonical_sign() for i in range(1, 5)}
    for v in rhoW.tolist():
        nb = G.neighbours_in(v, COSET_LABELS[3])
        four_ok &= len(nb) == 4 and {x.root.weight for x in nb} == t_roots and {x.label for x in nb} == rho_t
    out.append(
        check("each vertex of rhoW meets rhokappaW along t1..t4 with labels +-rho t_i", "edges from rhoW to rhokappaW", four_ok)
    )
    return out


# -- verify ----------------------------------------------------------------------


def gkm_checks(B: Builtins, threads: int = 1, fault: str | None = None) -> list[Check]:
    G = B.graph
    out = []
    for name, f in B.items():
        if fault == "gkm" and name == "tau1":
            f = f.with_sign_flipped(B.weyl.rho_index)
        res = check_gkm(G, f, threads=threads, max_violations=5)
        details = {"edges": res.edges_checked, "violations": len(res.violations)}
        if res.violations:
            details["first_violation"] = res.violations[0].describe()
        out.append(check(f"{name} is a GKM function", "GKM condition for the generators", res.passed, **details))
    # negative control: t1 at the identity, 0 elsewhere
    vals = np.zeros_like(B["t1"].values)
    vals[0] = B["t1"].values[0]
    probe = GkmFunction(vals, 2, "t1 at identity")
    res = check_gkm(G, probe, threads=threads)
    s0 = B.weyl.reflection_index[B.weyl.roots.alpha0.weight]
    flagged = {(v.u, v.v) for v in res.violations}
    out.append(
        check(
            "GKM test rejects t1 supported at the identity",
            "negative control for the GKM test",
            (0, s0) in flagged or (s0, 0) in flagged,
            violations=len(res.violations),
        )
    )
    return out


def verify_suite(threads: int = 1, seed: int = 0, sample_size: int = 12, fault: str | None = None) -> list[Check]:
    B = builtins()
    out = [check("g1, g2, g3 are integral", "halving of e_j(tau) - e_j(t)", True, vertices=B.n)]
    out += gkm_checks(B, threads, fault)
    out.append(verify_omega_values(B, fault))
    out += verify_relations(B, fault)
    out += verify_e_identities(B, fault)
    out += verify_symbolic_derivation(fault)
    out += verify_table1(B.weyl, fault)
    out.append(verify_e4_sum(B.weyl, fault))
    out += verify_lemma_fn(B.weyl, sample_size=sample_size, seed=seed, fault=fault)
    return out


# -- hilbert ----------------------------------------------------------------------


def faulty_target(N: int) -> SeriesTruncation:
    """The target series with the sign of x^8 in 1 + x^8 + x^16 flipped."""
    top = [0] * (N + 1)
    for k, c in ((0, 1), (8, -1), (16, 1)):
        if k <= N:
            top[k] = c
    rest = product_series([4, 8, 12, 16], [2] * 8, N)
    return SeriesTruncation(mul_truncated(top, rest, N))


def hilbert_suite(primes: Sequence[int], N: int, threads: int = 1, fault: str | None = None) -> tuple[list[Check], dict]:
    target = faulty_target(N) if fault == "target" else target_series(N)
    tables: dict[str, list[int]] = {}
    out = [
        check(
            "target series equals its simplified closed form",
            "Poincare series of the equivariant cohomology",
            target == simplified_target_series(N),
            coefficients=target.even(),
        )
    ]
    main = main_presentation()
    out.append(
        check(
            "relation degrees",
            "degrees of the presentation relations",
            main.degrees() == {"r1'": 2, "R1": 2, "R2": 4, "R3": 6, "R4": 8, "r2": 4, "r4": 8, "r6": 12, "r8": 16, "r12": 24},
            degrees=main.degrees(),
            omega_degree=8,
            note="omega has degree 8, forced by homogeneity of R4; a stated degree of 4 is treated as a misprint",
        )
    )
    out.append(check("r2 and r4 vanish after erasing g2 and g4", "dependent generators g2 and g4", erased_relations_vanish()))
    for p in primes:
        if p == 2:
            pres, seq = reduced_presentation(), SEQUENCE_P2
        else:
            pres, seq = odd_presentation(), SEQUENCE_ODD
        rc = regular_check_fp(pres, seq, p, N, threads)
        closed = rc.closed_form
        if fault == "regular":
            closed = closed_form_series(pres.ring.degrees, [pres.relation(n).degree for n in seq[1:]], N)
            closed = SeriesTruncation(mul_truncated(closed.coefficients, [1, 0, 1] + [0] * (N - 2), N))
        fail = rc.first_failure
        out.append(
            check(
                f"regular sequence over GF({p})",
                "regular sequence " + ", ".join(seq),
                rc.regular and rc.quotient == closed,
                steps=[{"relation": s.relation, "degree": s.degree, "ok": s.ok} for s in rc.steps],
                first_failure=None if fail is None else {"relation": fail.relation, "degree": fail.failing_degree},
                quotient=rc.quotient.even(),
                closed_form=closed.even(),
                quotient_equals_target=rc.quotient == target,
            )
        )
        series, table, red = hilbert_table(main, p, N, threads)
        tables[f"main/GF({p})"] = list(series.coefficients)
        out.append(
            check(
                f"Hilbert function of the presentation over GF({p})",
                "Poincare series of the presentation mod p",
                series == target,
                computed=series.even(),
                expected=target.even(),
                first_difference=series.first_difference(target),
                eliminated=[f"{v} via {r}" for v, r in red.eliminated],
                matrix_sizes=[{"degree": r.degree, "monomials": r.monomials, "rows": r.rows, "rank": r.rank} for r in table],
            )
        )
    if len(primes) > 1:
        first = tables[f"main/GF({primes[0]})"]
        out.append(
            check(
                "Hilbert function is independent of p",
                "freeness over the integers",
                all(v == first for v in tables.values()),
                primes=list(primes),
            )
        )
    return out, tables


# -- rank --------------------------------------------------------------------------


def rank_suite(d: int, fault: str | None = None, cell_cap: int | None = None) -> tuple[list[Check], RankResult, int]:
    B = builtins()
    kwargs = {} if cell_cap is None else {"cell_cap": cell_cap}
    if fault == "rank":
        res = _faulty_rank(B, d, **kwargs)
    else:
        res = degree_rank_result(B, d, **kwargs)
    expected = target_series(2 * d)[2 * d]
    out = [
        check(
            f"rank bounds agree in degree {2 * d}",
            "GKM functions generated by the generators",
            res.exact,
            upper_bound=res.upper_bound,
            lower_bound=res.lower_bound,
            prime=res.prime,
            levels=[list(x) for x in res.level_dims],
        ),
        check(
            f"rank of degree-{2 * d} GKM functions equals the series coefficient",
            "rank against the Poincare series",
            res.exact and res.upper_bound == expected,
            rank=res.upper_bound if res.exact else None,
            expected=expected,
        ),
    ]
    return out, res, expected


def _faulty_rank(B: Builtins, d: int, **kwargs) -> RankResult:
    """Rank with one edge label's first t-coordinate sign flipped."""
    from .gkm import rank as rank_mod

    original = rank_mod.weight_poly
    pos = B.graph.roots.positive
    victim = pos[int(B.graph.label[0])].weight

    def flipped(w: Weight):
        if w == victim:
            tc = list(w.t_coordinates())
            k = next(i for i, c in enumerate(tc) if c)
            tc[k] = -tc[k]
            w = weight_from_t(tc)
        return original(w)

    rank_mod.weight_poly = flipped
    try:
        return degree_rank_result(B, d, **kwargs)
    finally:
        rank_mod.weight_poly = original
