"""The circle graph G_c of a circular-arc graph and conformality of its chord models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .arcs import ChordModel, interlacement_graph
from .errors import ModelMismatch, PartitionGap, UnknownVertex
from .graph import (
    Graph,
    VertexRelation,
    classify_vertex_pair,
    closed_neighborhood,
    sort_vertices,
)


def build_gc(g: Graph) -> Graph:
    """Same vertices as ``g``; edges are the strictly-but-not-strongly adjacent pairs."""
    edges = [
        (a, b)
        for a, b in g.sorted_edges()
        if classify_vertex_pair(g, a, b) is VertexRelation.STRICTLY_NOT_STRONGLY_ADJACENT
    ]
    return Graph.from_edges(g.vertices, edges)


@dataclass(frozen=True)
class SidePartition:
    u: str
    i_set: frozenset[str]
    l_set: frozenset[str]
    r_set: frozenset[str]

    @property
    def gaps(self) -> frozenset[str]:
        """Vertices of ``i_set`` in neither side or in both."""
        return (self.i_set - (self.l_set | self.r_set)) | (self.l_set & self.r_set)


def side_partition(g: Graph, u: str, gc: Graph | None = None, strict: bool = True) -> SidePartition:
    g.check(u)
    gc = build_gc(g) if gc is None else gc
    nu = closed_neighborhood(g, u)
    i_set = frozenset(v for v in g.vertices if v != u and not gc.has_edge(u, v))
    left, right = set(), set()
    for v in i_set:
        nv = closed_neighborhood(g, v)
        rel = classify_vertex_pair(g, u, v)
        if nv < nu or rel is VertexRelation.STRONGLY_ADJACENT:
            left.add(v)
        if rel is VertexRelation.INDEPENDENT or nu < nv:
            right.add(v)
    part = SidePartition(u, i_set, frozenset(left), frozenset(right))
    if strict and part.gaps:
        raise PartitionGap(u, sort_vertices(part.gaps))
    return part


def side_partitions(g: Graph, strict: bool = True) -> dict[str, SidePartition]:
    gc = build_gc(g)
    return {u: side_partition(g, u, gc, strict) for u in g.vertices}


def _side(d: ChordModel, u: str, v: str) -> int | None:
    """0 or 1 for the open interval of chord ``u`` holding chord ``v``; None if ``v`` crosses."""
    i, j = d.positions[u]
    k, l = d.positions[v]
    a, b = i < k < j, i < l < j
    if a != b:
        return None
    return 0 if a else 1


def _violations(d: ChordModel, parts: dict[str, SidePartition]) -> list[str]:
    bad = []
    for u, part in parts.items():
        l_sides = {_side(d, u, v) for v in part.l_set}
        r_sides = {_side(d, u, v) for v in part.r_set}
        if None in l_sides or None in r_sides or len(l_sides) > 1 or len(r_sides) > 1:
            bad.append(u)
        elif l_sides and l_sides == r_sides:
            bad.append(u)
    return bad


def conformality_violations(d: ChordModel, g: Graph) -> list[str]:
    """Vertices ``u`` whose ``L_u`` and ``R_u`` chords are not separated by chord ``u``."""
    if set(d.vertices) != set(g.vertices):
        raise ModelMismatch("chord model and graph have different vertex sets")
    if interlacement_graph(d) != build_gc(g):
        raise ModelMismatch("chord model does not represent G_c")
    return _violations(d, side_partitions(g))


def is_conformal(d: ChordModel, g: Graph) -> bool:
    return not conformality_violations(d, g)


@dataclass(frozen=True)
class ConsistencyWitness:
    """Two disjoint runs of positions, each holding one endpoint of every module chord.

    Runs are ``(start, stop)`` position pairs read clockwise, both ends included.
    """

    module: frozenset[str]
    arc_a: tuple[int, int]
    arc_b: tuple[int, int]


def _one_of_each(tokens: list[str], k: int) -> bool:
    return len(tokens) == k and len(set(tokens)) == k


def is_module_consistent(d: ChordModel, module: Iterable[str]) -> ConsistencyWitness | None:
    module = frozenset(module)
    for v in module:
        if v not in d.positions:
            raise UnknownVertex(v)
    if not module:
        raise ValueError("empty module")
    word = d.word
    L, k = len(word), len(module)
    inside = [t in module for t in word]

    def run(start, length):
        return [word[(start + i) % L] for i in range(length)]

    def witness(a_start, b_start):
        return ConsistencyWitness(
            module,
            (a_start % L, (a_start + k - 1) % L),
            (b_start % L, (b_start + k - 1) % L),
        )

    if all(inside):
        for s in range(L):
            if _one_of_each(run(s, k), k) and _one_of_each(run(s + k, k), k):
                return witness(s, s + k)
        return None
    # maximal circular runs of module tokens, starting right after a foreign token
    starts = [i for i in range(L) if inside[i] and not inside[i - 1]]
    runs = []
    for s in starts:
        length = 0
        while inside[(s + length) % L]:
            length += 1
        runs.append((s, length))
    if len(runs) == 2:
        (s1, n1), (s2, n2) = runs
        if _one_of_each(run(s1, n1), k) and _one_of_each(run(s2, n2), k):
            return witness(s1, s2)
        return None
    if len(runs) == 1:
        s, _ = runs[0]
        if _one_of_each(run(s, k), k) and _one_of_each(run(s + k, k), k):
            return witness(s, s + k)
    return None


def conformal_equivalence_check(g: Graph, chord_cap: int | None = None, arc_cap: int | None = None) -> bool:
    """Whether conformal models of ``G_c`` are exactly the chord models of normalized models.

    Both sides come from independent exhaustive searches and are compared as
    sets of labeled chord words up to rotation and reflection.
    """
    from . import enumeration

    chord_cap = enumeration.DEFAULT_CHORD_CAP if chord_cap is None else chord_cap
    arc_cap = enumeration.DEFAULT_ARC_CAP if arc_cap is None else arc_cap
    conformal = enumeration.enumerate_conformal_models(g, cap=chord_cap)
    normalized = enumeration.enumerate_normalized_models(g, cap=arc_cap)
    return set(conformal.models) == enumeration.chord_classes(normalized)
