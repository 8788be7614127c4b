"""Simple undirected graphs with string-labelled vertices.

Neighborhoods follow the closed convention throughout: ``N(v)`` contains
``v`` itself together with every vertex adjacent to it.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import ParseError, UnknownVertex

_DIGITS = re.compile(r"(\d+)")


def vertex_key(label: str) -> tuple:
    """Natural sort key, so that ``s2`` sorts before ``s10``."""
    parts = _DIGITS.split(label)
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p)


def sort_vertices(vertices: Iterable[str]) -> list[str]:
    return sorted(vertices, key=vertex_key)


def set_key(vertices: Iterable[str]) -> tuple:
    return tuple(vertex_key(v) for v in sort_vertices(vertices))


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        verts = sort_vertices(set(self.vertices))
        if len(verts) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        object.__setattr__(self, "vertices", tuple(verts))
        members = set(verts)
        edges = set()
        for e in self.edges:
            pair = frozenset(e)
            if len(pair) != 2:
                raise ValueError(f"self-loop or malformed edge {tuple(e)!r}")
            for v in pair:
                if v not in members:
                    raise UnknownVertex(v)
            edges.add(pair)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    def __iter__(self):
        return iter(self.vertices)

    def __repr__(self) -> str:
        return f"Graph(n={len(self.vertices)}, m={len(self.edges)})"

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open-neighborhood bitmasks indexed like ``vertices``."""
        idx = self.index
        out = []
        for v in self.vertices:
            m = 0
            for u in self.adjacency[v]:
                m |= 1 << idx[u]
            out.append(m)
        return tuple(out)

    def check(self, v) -> None:
        if v not in self.index:
            raise UnknownVertex(v)

    def neighbors(self, v) -> frozenset[str]:
        self.check(v)
        return self.adjacency[v]

    def has_edge(self, u, v) -> bool:
        self.check(u)
        self.check(v)
        return v in self.adjacency[u]

    def sorted_edges(self) -> list[tuple[str, str]]:
        pairs = [tuple(sort_vertices(e)) for e in self.edges]
        return sorted(pairs, key=lambda p: (vertex_key(p[0]), vertex_key(p[1])))

    def mask_of(self, vertices: Iterable[str]) -> int:
        m = 0
        for v in vertices:
            self.check(v)
            m |= 1 << self.index[v]
        return m

    def from_mask(self, mask: int) -> frozenset[str]:
        return frozenset(v for i, v in enumerate(self.vertices) if mask >> i & 1)


class VertexRelation(enum.Enum):
    INDEPENDENT = "Independent"
    NESTED_ADJACENT = "NestedAdjacent"
    STRICTLY_NOT_STRONGLY_ADJACENT = "StrictlyNotStronglyAdjacent"
    STRONGLY_ADJACENT = "StronglyAdjacent"
    SIMILAR = "Similar"

    def __str__(self) -> str:
        return self.value


def closed_neighborhood(g: Graph, v: str) -> frozenset[str]:
    return g.neighbors(v) | {v}


def is_similar_pair(g: Graph, v1: str, v2: str) -> bool:
    """True when ``v1`` and ``v2`` are twins.

    Both false twins (equal open neighborhoods) and true twins (equal
    closed neighborhoods) count: each pair sees the rest of the graph
    identically, and neither can be told apart by any arc relation.
    """
    if v1 == v2:
        raise ValueError("similar pair needs two distinct vertices")
    rest = {v1, v2}
    return g.neighbors(v1) - rest == g.neighbors(v2) - rest


def is_d_vertex(g: Graph, v: str) -> bool:
    return len(g.neighbors(v)) == len(g) - 1


def similar_pairs(g: Graph) -> list[tuple[str, str]]:
    vs = g.vertices
    return [
        (a, b)
        for i, a in enumerate(vs)
        for b in vs[i + 1:]
        if is_similar_pair(g, a, b)
    ]


def d_vertices(g: Graph) -> list[str]:
    return [v for v in g.vertices if is_d_vertex(g, v)]


def nested(g: Graph, v1: str, v2: str) -> bool:
    """``N(v1) ⊆ N(v2)``."""
    return closed_neighborhood(g, v1) <= closed_neighborhood(g, v2)


def is_strongly_adjacent(g: Graph, v1: str, v2: str) -> bool:
    if not g.has_edge(v1, v2) or nested(g, v1, v2) or nested(g, v2, v1):
        return False
    n1, n2 = closed_neighborhood(g, v1), closed_neighborhood(g, v2)
    return all(
        closed_neighborhood(g, w) <= n2 for w in g.vertices if w not in n1
    ) and all(closed_neighborhood(g, w) <= n1 for w in g.vertices if w not in n2)


def classify_vertex_pair(g: Graph, v1: str, v2: str) -> VertexRelation:
    g.check(v1)
    g.check(v2)
    if v1 == v2:
        raise ValueError("classify_vertex_pair needs two distinct vertices")
    if not g.has_edge(v1, v2):
        return VertexRelation.INDEPENDENT
    if is_similar_pair(g, v1, v2):
        return VertexRelation.SIMILAR
    if nested(g, v1, v2) or nested(g, v2, v1):
        return VertexRelation.NESTED_ADJACENT
    if is_strongly_adjacent(g, v1, v2):
        return VertexRelation.STRONGLY_ADJACENT
    return VertexRelation.STRICTLY_NOT_STRONGLY_ADJACENT


def induced_subgraph(g: Graph, subset: Iterable[str]) -> Graph:
    keep = set(subset)
    for v in keep:
        g.check(v)
    return Graph(tuple(keep), frozenset(e for e in g.edges if e <= keep))


def complement(g: Graph) -> Graph:
    vs = g.vertices
    edges = [
        (a, b)
        for i, a in enumerate(vs)
        for b in vs[i + 1:]
        if b not in g.adjacency[a]
    ]
    return Graph.from_edges(vs, edges)


def remove_vertices(g: Graph, drop: Iterable[str]) -> Graph:
    drop = set(drop)
    for v in drop:
        g.check(v)
    return induced_subgraph(g, [v for v in g.vertices if v not in drop])


def connected_components(g: Graph) -> list[frozenset[str]]:
    seen: set[str] = set()
    comps = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    # vertices are visited in sorted order, so comps are ordered by minimum
    return comps


def is_connected(g: Graph) -> bool:
    return len(g) <= 1 or len(connected_components(g)) == 1


# --- text format -----------------------------------------------------------


def parse_graph(text: str) -> Graph:
    vertices: list[str] | None = None
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'vertices:' or 'edge:', got {line!r}", lineno)
        key = key.strip()
        items = rest.split()
        if key == "vertices":
            if vertices is not None:
                raise ParseError("duplicate 'vertices:' line", lineno)
            vertices = items
            if len(set(items)) != len(items):
                raise ParseError("duplicate vertex label", lineno)
        elif key == "edge":
            if vertices is None:
                raise ParseError("'edge:' before 'vertices:'", lineno)
            if len(items) != 2 or items[0] == items[1]:
                raise ParseError(f"bad edge {rest.strip()!r}", lineno)
            for v in items:
                if v not in vertices:
                    raise ParseError(f"edge endpoint {v!r} is not a declared vertex", lineno)
            edges.append((items[0], items[1]))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if vertices is None:
        raise ParseError("missing 'vertices:' line")
    return Graph.from_edges(vertices, edges)


def format_graph(g: Graph) -> str:
    lines = ["vertices: " + " ".join(g.vertices)]
    lines += [f"edge: {a} {b}" for a, b in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def cycle_graph(labels: Iterable[str]) -> Graph:
    labels = list(labels)
    k = len(labels)
    return Graph.from_edges(labels, [(labels[i], labels[(i + 1) % k]) for i in range(k)])


def path_graph(labels: Iterable[str]) -> Graph:
    labels = list(labels)
    return Graph.from_edges(labels, zip(labels, labels[1:]))


def complete_graph(labels: Iterable[str]) -> Graph:
    labels = list(labels)
    return Graph.from_edges(
        labels, [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]]
    )
