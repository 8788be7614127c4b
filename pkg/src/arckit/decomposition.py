"""Modules, modular decomposition trees and joins.

Everything here works on vertex bitmasks over ``Graph.vertices``.  Module
search is exhaustive but never scans raw subsets: every module with at least
two vertices is reached from the closure of a vertex pair by repeatedly
adding one vertex and re-closing, which visits each module of the lattice
exactly once.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidJoin, SizeCapExceeded
from .graph import (
    Graph,
    complement,
    connected_components,
    induced_subgraph,
    set_key,
    sort_vertices,
)

DEFAULT_MODULE_CAP = 16
DEFAULT_JOIN_CAP = 20


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_cap(g: Graph, cap: int | None, what: str) -> None:
    if cap is not None and len(g) > cap:
        raise SizeCapExceeded(what, len(g), cap)


def module_closure_mask(g: Graph, seed: int) -> int:
    """Smallest module containing the vertices of ``seed``."""
    adj = g.masks
    full = (1 << len(g)) - 1
    closed = seed
    changed = True
    while changed:
        changed = False
        for z in _bits(full & ~closed):
            seen = adj[z] & closed
            if seen and seen != closed:
                closed |= 1 << z
                changed = True
    return closed


def module_closure(g: Graph, seed: Iterable[str]) -> frozenset[str]:
    return g.from_mask(module_closure_mask(g, g.mask_of(seed)))


def is_module(g: Graph, subset: Iterable[str]) -> bool:
    mask = g.mask_of(subset)
    adj = g.masks
    full = (1 << len(g)) - 1
    for z in _bits(full & ~mask):
        seen = adj[z] & mask
        if seen and seen != mask:
            return False
    return True


def is_trivial(g: Graph, module: Iterable[str]) -> bool:
    module = set(module)
    return len(module) <= 1 or len(module) == len(g)


def _module_masks(g: Graph) -> set[int]:
    n = len(g)
    full = (1 << n) - 1
    found: set[int] = {1 << i for i in range(n)}
    if n == 0:
        return found
    found.add(full)
    frontier = []
    for i, j in combinations(range(n), 2):
        m = module_closure_mask(g, (1 << i) | (1 << j))
        if m not in found:
            found.add(m)
            frontier.append(m)
    while frontier:
        m = frontier.pop()
        for z in _bits(full & ~m):
            bigger = module_closure_mask(g, m | (1 << z))
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    return found


def all_modules(g: Graph, cap: int | None = DEFAULT_MODULE_CAP) -> list[frozenset[str]]:
    """Every non-empty module of ``g``, trivial ones included, sorted."""
    _check_cap(g, cap, "all_modules")
    mods = [g.from_mask(m) for m in _module_masks(g)]
    return sorted(mods, key=lambda s: (len(s), set_key(s)))


def nontrivial_modules(g: Graph, cap: int | None = DEFAULT_MODULE_CAP) -> list[frozenset[str]]:
    return [m for m in all_modules(g, cap) if not is_trivial(g, m)]


def find_nontrivial_module(g: Graph) -> frozenset[str] | None:
    """Some nontrivial module, or None when ``g`` is prime.

    Any nontrivial module contains a pair whose closure is itself nontrivial,
    so testing the ``n(n-1)/2`` pair closures decides primality.
    """
    n = len(g)
    full = (1 << n) - 1
    for i, j in combinations(range(n), 2):
        m = module_closure_mask(g, (1 << i) | (1 << j))
        if m != full:
            return g.from_mask(m)
    return None


def is_s_inseparable(g: Graph, cap: int | None = None) -> bool:
    _check_cap(g, cap, "is_s_inseparable")
    return find_nontrivial_module(g) is None


def scan_nontrivial_modules(g: Graph, limit: int | None = None, chunk: int = 1 << 20) -> list[frozenset[str]]:
    """Nontrivial modules found by testing every vertex subset, up to ``limit`` of them.

    This is the literal definition applied to all ``2^n`` subsets, vectorized
    in chunks; it is meant as a cross-check of the closure-based search.
    """
    n = len(g)
    if n > 26:
        raise SizeCapExceeded("scan_nontrivial_modules", n, 26)
    adj = [np.int64(m) for m in g.masks]
    total = 1 << n
    found: list[frozenset[str]] = []
    for lo in range(0, total, chunk):
        subsets = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        ok = np.ones(len(subsets), dtype=bool)
        for v in range(n):
            seen = subsets & adj[v]
            outside = ((subsets >> v) & 1) == 0
            ok &= ~outside | (seen == 0) | (seen == subsets)
        sizes = np.zeros(len(subsets), dtype=np.int64)
        for v in range(n):
            sizes += (subsets >> v) & 1
        ok &= (sizes >= 2) & (sizes < n)
        for m in subsets[ok]:
            found.append(g.from_mask(int(m)))
            if limit is not None and len(found) >= limit:
                return found
    return found


# --- modular decomposition tree -------------------------------------------------


class NodeKind(enum.Enum):
    SERIES = "S"
    PARALLEL = "P"
    NEIGHBORHOOD = "N"
    LEAF = "leaf"

    def __str__(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class MDNode:
    kind: NodeKind
    vertices: frozenset[str]
    children: tuple["MDNode", ...] = field(default=())

    @property
    def is_leaf(self) -> bool:
        return self.kind is NodeKind.LEAF

    def walk(self) -> Iterator["MDNode"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def child_sets(self) -> list[frozenset[str]]:
        return [c.vertices for c in self.children]

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.is_leaf:
            return f"{pad}{next(iter(self.vertices))}"
        head = f"{pad}{self.kind} {{{', '.join(sort_vertices(self.vertices))}}}"
        return "\n".join([head] + [c.render(indent + 1) for c in self.children])


def module_kind(g: Graph) -> NodeKind:
    """Type of ``V(g)`` seen as a module of itself."""
    if len(g) == 1:
        return NodeKind.LEAF
    if len(connected_components(g)) > 1:
        return NodeKind.PARALLEL
    if len(connected_components(complement(g))) > 1:
        return NodeKind.SERIES
    return NodeKind.NEIGHBORHOOD


def maximal_proper_modules(g: Graph) -> list[frozenset[str]]:
    """Maximal modules other than ``V`` of a graph whose ``V`` is a neighborhood module.

    In that case the maximal proper modules partition ``V``; the one holding
    ``v`` is the union of all proper pair closures through ``v``.
    """
    n = len(g)
    full = (1 << n) - 1
    part: list[int] = [0] * n
    for i in range(n):
        acc = 1 << i
        for j in range(n):
            if j != i and not (acc >> j & 1):
                m = module_closure_mask(g, (1 << i) | (1 << j))
                if m != full:
                    acc |= m
        part[i] = acc
    blocks = sorted({g.from_mask(m) for m in part}, key=set_key)
    return blocks


def build_md_tree(g: Graph, cap: int | None = DEFAULT_MODULE_CAP) -> MDNode:
    if len(g) == 0:
        raise ValueError("modular decomposition of an empty graph")
    _check_cap(g, cap, "build_md_tree")
    return _build(g)


def _build(g: Graph) -> MDNode:
    kind = module_kind(g)
    verts = frozenset(g.vertices)
    if kind is NodeKind.LEAF:
        return MDNode(kind, verts)
    if kind is NodeKind.PARALLEL:
        parts = connected_components(g)
    elif kind is NodeKind.SERIES:
        parts = connected_components(complement(g))
    else:
        parts = maximal_proper_modules(g)
    children = tuple(_build(induced_subgraph(g, p)) for p in parts)
    return MDNode(kind, verts, children)


# --- joins ------------------------------------------------------------------------


@dataclass(frozen=True)
class Join:
    v0: frozenset[str]
    v1: frozenset[str]
    v2: frozenset[str]
    v3: frozenset[str]

    @classmethod
    def of(cls, v0, v1, v2, v3) -> "Join":
        return cls(frozenset(v0), frozenset(v1), frozenset(v2), frozenset(v3))

    @property
    def parts(self) -> tuple[frozenset[str], ...]:
        return (self.v0, self.v1, self.v2, self.v3)

    @property
    def side_a(self) -> frozenset[str]:
        return self.v0 | self.v1

    @property
    def side_b(self) -> frozenset[str]:
        return self.v2 | self.v3

    def __str__(self) -> str:
        return " | ".join("{" + ",".join(sort_vertices(p)) + "}" for p in self.parts)


def join_problems(g: Graph, j: Join) -> list[str]:
    """Reasons ``j`` is not a join of ``g`` (empty when it is)."""
    probs = []
    parts = j.parts
    union = frozenset().union(*parts)
    if sum(len(p) for p in parts) != len(union):
        probs.append("parts overlap")
    if union != frozenset(g.vertices):
        probs.append("parts do not cover V")
    if len(j.side_a) < 2 or len(j.side_b) < 2:
        probs.append("each side needs at least two vertices")
    if probs:
        return probs
    for a in j.v1:
        for b in j.v2:
            if not g.has_edge(a, b):
                probs.append(f"missing V1-V2 edge {a}-{b}")
    for a in j.v0:
        for b in j.side_b:
            if g.has_edge(a, b):
                probs.append(f"edge {a}-{b} between V0 and V2+V3")
    for a in j.side_a:
        for b in j.v3:
            if g.has_edge(a, b):
                probs.append(f"edge {a}-{b} between V0+V1 and V3")
    return probs


def is_join(g: Graph, j: Join) -> bool:
    return not join_problems(g, j)


def join_from_split(g: Graph, side_a: Iterable[str]) -> Join | None:
    """The join with ``V0 ∪ V1 = side_a``, if that bipartition is a split."""
    a = frozenset(side_a)
    b = frozenset(g.vertices) - a
    v1 = frozenset(x for x in a if g.adjacency[x] & b)
    v2 = frozenset(y for y in b if g.adjacency[y] & a)
    j = Join(a - v1, v1, v2, b - v2)
    return j if is_join(g, j) else None


def _split_without_cross_edges(g: Graph) -> frozenset[str] | None:
    comps = sorted(connected_components(g), key=len)
    if len(comps) < 2 or len(g) < 4:
        return None
    side: set[str] = set()
    for c in comps:
        side |= c
        if len(side) >= 2:
            break
    return frozenset(side) if len(g) - len(side) >= 2 else None


def _solve_split(g: Graph, p: int, q: int, seeds_a: tuple[int, ...], seeds_b: tuple[int, ...]):
    """2-SAT over sides given a crossing edge ``p``-``q`` (``p`` in A, ``q`` in B).

    With that edge fixed, ``(A, B)`` is a split iff for all ``x`` in A and
    ``y`` in B: ``xy`` is an edge exactly when ``x~q`` and ``y~p``.  That is
    a binary constraint on every vertex pair, decided by forced placement
    with one level of trial assignment (complete for 2-SAT).
    """
    n = len(g)
    adj = g.masks

    def adjb(x, y):
        return bool(adj[x] >> y & 1)

    # forbid[x][y]: placing x in A and y in B is inconsistent
    side = [None] * n  # True = A

    def ok_pair(x, sx, y, sy) -> bool:
        if sx == sy:
            return True
        if not sx:
            x, y = y, x
        # x in A, y in B
        xq = x == p or adjb(x, q)
        yp = y == q or adjb(y, p)
        return adjb(x, y) == (xq and yp)

    def propagate(assign, start):
        stack = list(start)
        while stack:
            x = stack.pop()
            sx = assign[x]
            for y in range(n):
                if y == x:
                    continue
                sy = assign[y]
                if sy is not None:
                    if not ok_pair(x, sx, y, sy):
                        return False
                    continue
                can_a = ok_pair(x, sx, y, True)
                can_b = ok_pair(x, sx, y, False)
                if not can_a and not can_b:
                    return False
                if can_a != can_b:
                    assign[y] = can_a
                    stack.append(y)
        return True

    fixed = [(p, True), (q, False)] + [(x, True) for x in seeds_a] + [(y, False) for y in seeds_b]
    for x, s in fixed:
        if side[x] is not None and side[x] != s:
            return None
        side[x] = s
    if not propagate(side, [x for x, _ in fixed]):
        return None
    for x in range(n):
        if side[x] is not None:
            continue
        for choice in (True, False):
            trial = list(side)
            trial[x] = choice
            if propagate(trial, [x]):
                side = trial
                break
        else:
            return None
    return side


def find_join(g: Graph, cap: int | None = DEFAULT_JOIN_CAP) -> Join | None:
    """Some join of ``g``, or None when ``g`` is j-inseparable.

    Seeds run over crossing edges ``p``-``q`` in sorted order, then over one
    extra vertex per side to meet the size bounds; placement of the rest is
    forced.  Splits with no crossing edge exist only for disconnected graphs
    and are handled separately.
    """
    _check_cap(g, cap, "find_join")
    n = len(g)
    if n < 4:
        return None
    free = _split_without_cross_edges(g)
    if free is not None:
        return join_from_split(g, free)
    idx = g.index
    edges = sorted((idx[a], idx[b]) for a, b in g.sorted_edges())
    # a split and its mirror image are the same join, so one edge orientation
    # suffices once the extra seeds range over both sides
    for p, q in edges:
        for x in range(n):
            if x in (p, q) or _solve_split(g, p, q, (x,), ()) is None:
                continue
            for y in range(n):
                if y in (p, q, x):
                    continue
                side = _solve_split(g, p, q, (x,), (y,))
                if side is None:
                    continue
                j = join_from_split(g, [g.vertices[i] for i in range(n) if side[i]])
                if j is None:  # pragma: no cover - the 2-SAT encoding is exact
                    raise AssertionError("split solver returned a non-join")
                return j
    return None


def decompose_by_join(
    g: Graph, j: Join, markers: tuple[str, str] = ("$m1", "$m2")
) -> tuple[Graph, Graph]:
    """The two graphs ``H1``, ``H2`` induced by join ``j``.

    ``H1`` is ``g[V0 ∪ V1]`` plus a marker adjacent to exactly ``V1``;
    ``H2`` is ``g[V2 ∪ V3]`` plus a marker adjacent to exactly ``V2``.
    """
    probs = join_problems(g, j)
    if probs:
        raise InvalidJoin("; ".join(probs))
    m1, m2 = markers
    if m1 in g or m2 in g or m1 == m2:
        raise InvalidJoin("marker labels collide with graph vertices")
    h1 = induced_subgraph(g, j.side_a)
    h2 = induced_subgraph(g, j.side_b)
    h1 = Graph(h1.vertices + (m1,), h1.edges | {frozenset((m1, v)) for v in j.v1})
    h2 = Graph(h2.vertices + (m2,), h2.edges | {frozenset((m2, v)) for v in j.v2})
    return h1, h2


def recompose(h1: Graph, h2: Graph, markers: tuple[str, str] = ("$m1", "$m2")) -> Graph:
    """Inverse of :func:`decompose_by_join`: glue ``H1`` and ``H2`` at the markers."""
    m1, m2 = markers
    n1, n2 = h1.neighbors(m1), h2.neighbors(m2)
    verts = [v for v in h1.vertices if v != m1] + [v for v in h2.vertices if v != m2]
    edges = {e for e in h1.edges if m1 not in e} | {e for e in h2.edges if m2 not in e}
    edges |= {frozenset((a, b)) for a in n1 for b in n2}
    return Graph(tuple(verts), frozenset(edges))
