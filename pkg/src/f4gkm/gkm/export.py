"""Graphviz DOT output for the GKM graph and its six-vertex coset quotient."""

from __future__ import annotations

from ..weyl import COSET_LABELS
from .graph import GkmGraph

FAMILY_NAMES = {0: "t", 1: "rho t", 2: "rho^2 t", -1: "long"}


def full_graph_dot(graph: GkmGraph) -> str:
    cos = graph.weyl.coset_array
    pos = graph.roots.positive
    lines = ["graph gkm {", "  node [shape=point];"]
    for v in range(graph.n_vertices):
        lines.append(f'  {v} [coset="{_coset_name(cos[v])}"];')
    for i in range(graph.n_edges):
        root = pos[int(graph.root[i])].weight
        label = pos[int(graph.label[i])].weight
        lines.append(f'  {int(graph.u[i])} -- {int(graph.v[i])} [root="{root}", label="+-({label})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_dot(graph: GkmGraph) -> str:
    """One node per coset; an edge per adjacent pair annotated with counts and root families."""
    diagram = graph.quotient_diagram()
    lines = ["graph cosets {", "  node [shape=ellipse];"]
    for lab in COSET_LABELS:
        lines.append(f'  "{lab}";')
    for (a, b), counts in sorted(diagram.items(), key=lambda kv: (tuple(kv[0][0]), tuple(kv[0][1]))):
        parts = []
        for (label_fam, refl_fam), n in sorted(counts.items()):
            parts.append(f"{n} edges, labels +-{FAMILY_NAMES[label_fam]}_i, reflections in {FAMILY_NAMES[refl_fam]}_j")
        lines.append(f'  "{a}" -- "{b}" [label="{"; ".join(parts)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _coset_name(row) -> str:
    from ..weyl import CosetLabel

    return str(CosetLabel(int(row[0]), int(row[1])))
