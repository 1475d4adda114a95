"""JSON and DOT serialisation."""

from __future__ import annotations

import json

from .cayley_trivalent import LabeledCubicGraph, LabeledDigraph
from .dessin import Dessin, dessin_from_json

LABEL_COLORS = {1: "red", 2: "blue", 3: "green"}


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def graph_to_json(g: LabeledCubicGraph) -> dict:
    tags = g.tags or [None] * g.num_vertices
    return {
        "vertices": [{"id": v, "tag": str(t) if t is not None else ""} for v, t in enumerate(tags)],
        "edges": [{"u": u, "v": v, "label": lab} for u, v, lab in g.edges],
    }


def graph_from_json(data: dict) -> LabeledCubicGraph:
    ids = [v["id"] for v in data["vertices"]]
    if sorted(ids) != list(range(len(ids))):
        raise ValueError("vertex ids must be 0..n-1")
    edges = []
    for e in data["edges"]:
        if e["label"] not in (1, 2, 3):
            raise ValueError(f"edge label must be 1, 2 or 3: {e}")
        edges.append((int(e["u"]), int(e["v"]), int(e["label"])))
    return LabeledCubicGraph(len(ids), edges)


def graph_to_dot(g: LabeledCubicGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{", "  node [shape=point];"]
    for v in g.vertices:
        label = f' [tooltip="{g.tags[v]}"]' if g.tags else ""
        lines.append(f"  {v}{label};")
    for u, v, lab in g.edges:
        lines.append(f"  {u} -- {v} [color={LABEL_COLORS[lab]}, label={lab}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def digraph_to_json(d: LabeledDigraph) -> dict:
    return {
        "vertices": [v if isinstance(v, int) else str(v) for v in d.vertices],
        "arcs": [{"src": s if isinstance(s, int) else str(s),
                  "dst": t if isinstance(t, int) else str(t), "label": lab} for s, t, lab in d.arcs],
        "truncated": d.truncated,
    }


def digraph_to_dot(d: LabeledDigraph, name: str = "C") -> str:
    ids = {v: k for k, v in enumerate(d.vertices)}
    lines = [f"digraph {name} {{"]
    for v, k in ids.items():
        lines.append(f'  {k} [label="{v}"];')
    for s, t, lab in d.arcs:
        lines.append(f"  {ids[s]} -> {ids[t]} [label={lab}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dessin_to_json(d: Dessin) -> dict:
    return d.to_json()


def dessin_to_dot(d: Dessin, name: str = "D") -> str:
    """Underlying bipartite graph: one node per black/white vertex, one edge per dart."""
    black_of = {}
    for k, c in enumerate(d.black_vertices()):
        for x in c:
            black_of[x] = k
    white_of = {}
    for k, c in enumerate(d.white_vertices()):
        for x in c:
            white_of[x] = k
    pendant_blacks = {black_of[x] for x in d.pendants()}
    lines = [f"graph {name} {{", "  node [shape=circle, label=\"\", width=0.12];"]
    for k in sorted(set(black_of.values())):
        extra = ", color=red, penwidth=2" if k in pendant_blacks else ""
        lines.append(f"  b{k} [style=filled, fillcolor=black{extra}];")
    for k in sorted(set(white_of.values())):
        lines.append(f"  w{k} [style=solid];")
    for x in range(d.num_darts):
        lines.append(f"  b{black_of[x]} -- w{white_of[x]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_dessin(path) -> Dessin:
    with open(path) as fh:
        return dessin_from_json(json.load(fh))


def load_voltages(path) -> list[int]:
    with open(path) as fh:
        data = json.load(fh)
    return [int(x) for x in data["xi"]]
