"""Graphviz DOT text for graphs, MD trees and models.

Models are drawn as a ring of endpoint nodes in circular order with one
edge per chord, which is enough to compare against a hand-drawn diagram.
"""

from __future__ import annotations

from .arcs import ChordModel, CircularArcModel
from .decomposition import MDNode
from .graph import Graph, sort_vertices


def _q(label: str) -> str:
    return '"' + str(label).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {_q(name)} {{"]
    lines += [f"  {_q(v)};" for v in g.vertices]
    lines += [f"  {_q(a)} -- {_q(b)};" for a, b in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def md_tree_to_dot(tree: MDNode, name: str = "MD") -> str:
    lines = [f"digraph {_q(name)} {{", "  node [shape=box];"]
    counter = [0]

    def visit(node: MDNode) -> str:
        ident = f"n{counter[0]}"
        counter[0] += 1
        if node.is_leaf:
            label = next(iter(node.vertices))
            lines.append(f"  {ident} [label={_q(label)}, shape=ellipse];")
        else:
            members = ",".join(sort_vertices(node.vertices))
            label = f"{node.kind.value}\n{{{members}}}"
            lines.append(f"  {ident} [label={_q(label)}];")
        for child in node.children:
            lines.append(f"  {ident} -> {visit(child)};")
        return ident

    visit(tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _ring(labels: list[str]) -> list[str]:
    k = len(labels)
    lines = ["  node [shape=point, xlabel=\"\"];", "  edge [color=gray];"]
    for i, lab in enumerate(labels):
        lines.append(f"  p{i} [xlabel={_q(lab)}];")
    for i in range(k):
        lines.append(f"  p{i} -- p{(i + 1) % k};")
    return lines


def chord_model_to_dot(d: ChordModel, name: str = "D") -> str:
    lines = [f"graph {_q(name)} {{", "  layout=circo;"]
    lines += _ring(list(d.word))
    lines.append("  edge [color=black];")
    for v in sort_vertices(d.vertices):
        i, j = d.positions[v]
        lines.append(f"  p{i} -- p{j} [label={_q(v)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def arc_model_to_dot(m: CircularArcModel, name: str = "R") -> str:
    """Like a chord drawing, with each chord directed from head to tail."""
    lines = [f"graph {_q(name)} {{", "  layout=circo;"]
    lines += _ring([f"{v}.{e}" for v, e in m.word])
    lines.append("  edge [color=black, dir=forward];")
    pos = m.positions
    for v in sort_vertices(m.vertices):
        lines.append(f"  p{pos[(v, 0)]} -- p{pos[(v, 1)]} [label={_q(v)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def model_to_dot(model, name: str | None = None) -> str:
    if isinstance(model, CircularArcModel):
        return arc_model_to_dot(model, name or "R")
    return chord_model_to_dot(model, name or "D")
