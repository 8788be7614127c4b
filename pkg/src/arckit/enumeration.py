"""Exhaustive model search used as ground truth.

Words are grown left to right with the first position pinned to the smallest
vertex, which quotients rotations.  After every placement the partial pattern
of each touched pair is compared against the relations that can still come
out of it, and dead branches are cut as soon as two endpoints of a pair are
down.  Reflections are folded in when results are canonicalized.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .arcs import (
    PATTERN_RELATION,
    ArcRelation,
    ChordModel,
    CircularArcModel,
    canonical_form_labeled,
    intersection_graph,
    required_relations,
    to_chord_model,
    word_key,
)
from .conformal import _violations as _conformal_violations
from .conformal import build_gc, side_partitions
from .errors import SizeCapExceeded
from .graph import Graph, d_vertices, similar_pairs

DEFAULT_CHORD_CAP = 8
DEFAULT_ARC_CAP = 7


@dataclass(frozen=True)
class EnumerationResult:
    """Models found by a search, one canonical word per class.

    ``labeled_count`` counts models up to rotation only, so a model and its
    mirror image count twice unless the model is symmetric.
    """

    models: tuple
    search_space_size: int
    cap_hit: bool = False
    labeled_count: int = 0

    @property
    def classes(self) -> int:
        return len(self.models)


class _Budget(Exception):
    pass


def _check_size(g: Graph, cap: int | None, what: str) -> None:
    if cap is not None and len(g) > cap:
        raise SizeCapExceeded(what, len(g), cap)


def _side_options() -> dict[tuple, frozenset]:
    """Arc relations still reachable from every partial endpoint pattern of two arcs."""
    table: dict[tuple, set] = {}
    for full, rel in PATTERN_RELATION.items():
        for k in range(2, 5):
            table.setdefault(full[:k], set()).add(rel)
    return {k: frozenset(v) for k, v in table.items()}


PARTIAL_RELATIONS = _side_options()


def _conformal_pruner(g: Graph):
    """Partial-word test that rejects words which cannot become conformal to ``g``.

    For chord ``u`` and a non-crossing chord ``v``, the side of ``u`` holding
    ``v`` is known once ``u`` and ``v`` are both started (inside iff ``v``
    starts after ``u`` and, if ``u`` is closed, before it closes), or once
    ``u`` is closed and ``v`` has not started (outside).
    """
    parts = side_partitions(g)
    vs = g.vertices
    idx = {v: i for i, v in enumerate(vs)}
    groups = [
        (idx[u], [idx[v] for v in p.l_set], [idx[v] for v in p.r_set])
        for u, p in parts.items()
        if p.l_set or p.r_set
    ]

    def side(u, v, first, second):
        fu, fv = first[u], first[v]
        if fu < 0:
            return None
        if fv < 0:
            return 1 if second[u] >= 0 else None
        inside = fv > fu and (second[u] < 0 or fv < second[u])
        return 0 if inside else 1

    def check(first, second) -> bool:
        for u, left, right in groups:
            if first[u] < 0:
                continue
            ls = {side(u, v, first, second) for v in left} - {None}
            rs = {side(u, v, first, second) for v in right} - {None}
            if len(ls) > 1 or len(rs) > 1 or (ls and ls == rs):
                return False
        return True

    return check


def _chord_words(gc: Graph, counter: list[int], budget: int | None, prune=None) -> Iterator[tuple]:
    vs = gc.vertices
    n = len(vs)
    adj = [[gc.has_edge(a, b) for b in vs] for a in vs]
    count = [0] * n
    first = [-1] * n
    second = [-1] * n
    word: list[int] = []

    def place(v: int) -> bool:
        t = len(word)
        if count[v] == 0:
            # every closed chord lies entirely before v: they cannot cross
            for w in range(n):
                if count[w] == 2 and adj[v][w]:
                    return False
        else:
            for w in range(n):
                if w == v:
                    continue
                if count[w] == 1 and adj[v][w] != (first[w] > first[v]):
                    return False
                if count[w] == 0 and adj[v][w]:
                    return False
        if count[v] == 0:
            first[v] = t
        else:
            second[v] = t
        count[v] += 1
        word.append(v)
        return True

    def unplace(v: int) -> None:
        word.pop()
        count[v] -= 1
        if count[v] == 0:
            first[v] = -1
        else:
            second[v] = -1

    def rec():
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise _Budget
        if len(word) == 2 * n:
            yield tuple(vs[i] for i in word)
            return
        for v in range(n):
            if count[v] < 2 and place(v):
                if prune is None or prune(first, second):
                    yield from rec()
                unplace(v)

    if n == 0:
        return
    place(0)
    yield from rec()


def _collect_chords(words, counter) -> EnumerationResult:
    found = set()
    rotations = set()
    for w in words:
        found.add(canonical_form_labeled(w))
        rotations.add(min((w[k:] + w[:k] for k in range(len(w))), key=word_key))
    models = tuple(ChordModel(w) for w in sorted(found, key=word_key))
    return EnumerationResult(models, counter[0], labeled_count=len(rotations))


def enumerate_chord_models(
    gc: Graph, cap: int | None = DEFAULT_CHORD_CAP, budget: int | None = None
) -> EnumerationResult:
    """All chord models whose interlacement graph is ``gc``, up to rotation and reflection."""
    _check_size(gc, cap, "enumerate_chord_models")
    counter = [0]
    try:
        return _collect_chords(list(_chord_words(gc, counter, budget)), counter)
    except _Budget:
        return EnumerationResult((), counter[0], cap_hit=True)


def _arc_words(g: Graph, counter: list[int], budget: int | None) -> Iterator[tuple]:
    vs = g.vertices
    n = len(vs)
    req = required_relations(g)
    need: dict[tuple[int, int], ArcRelation] = {}
    for i, a in enumerate(vs):
        for j, b in enumerate(vs):
            if i < j:
                need[(i, j)] = req[(a, b)]
                need[(j, i)] = req[(a, b)].swapped()
    count = [0] * n
    placed: list[list[tuple[int, int]]] = [[] for _ in range(n)]  # (position, end)
    used = [[False, False] for _ in range(n)]
    word: list[tuple[int, int]] = []

    def ok(v: int) -> bool:
        for w in range(n):
            if w == v or count[v] + count[w] < 2:
                continue
            toks = sorted(
                [(p, ("x", e)) for p, e in placed[v]] + [(p, ("y", e)) for p, e in placed[w]]
            )
            if need[(v, w)] not in PARTIAL_RELATIONS[tuple(t for _, t in toks)]:
                return False
        return True

    def rec():
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise _Budget
        if len(word) == 2 * n:
            yield tuple((vs[v], e) for v, e in word)
            return
        for v in range(n):
            for e in (0, 1):
                if used[v][e]:
                    continue
                used[v][e] = True
                count[v] += 1
                placed[v].append((len(word), e))
                word.append((v, e))
                if ok(v):
                    yield from rec()
                word.pop()
                placed[v].pop()
                count[v] -= 1
                used[v][e] = False

    if n == 0:
        return
    used[0][0] = True
    count[0] = 1
    placed[0].append((0, 0))
    word.append((0, 0))
    yield from rec()


def enumerate_normalized_models(
    g: Graph, cap: int | None = DEFAULT_ARC_CAP, budget: int | None = None
) -> EnumerationResult:
    """All normalized arc models of ``g``, up to rotation and reflection.

    Every pair of vertices dictates one arc relation, so the search checks
    each pair against it directly; nothing here goes through chord models.
    """
    _check_size(g, cap, "enumerate_normalized_models")
    required_relations(g)  # precondition check before any search
    counter = [0]
    found = set()
    labeled = 0
    try:
        for w in _arc_words(g, counter, budget):
            labeled += 1
            found.add(canonical_form_labeled(w))
    except _Budget:
        return EnumerationResult((), counter[0], cap_hit=True)
    models = tuple(CircularArcModel(w) for w in sorted(found, key=word_key))
    return EnumerationResult(models, counter[0], labeled_count=labeled)


def enumerate_conformal_models(
    g: Graph, cap: int | None = DEFAULT_CHORD_CAP, budget: int | None = None
) -> EnumerationResult:
    """Chord models of ``G_c`` that are conformal to ``g``.

    Same result as filtering :func:`enumerate_chord_models` by conformality,
    but the conformality test also prunes partial words.
    """
    required_relations(g)
    gc = build_gc(g)
    _check_size(gc, cap, "enumerate_conformal_models")
    parts = side_partitions(g)
    counter = [0]
    try:
        words = list(_chord_words(gc, counter, budget, prune=_conformal_pruner(g)))
    except _Budget:
        return EnumerationResult((), counter[0], cap_hit=True)
    result = _collect_chords(words, counter)
    # the pruner only sees partial words; re-check every full model exactly
    keep = tuple(d for d in result.models if not _conformal_violations(d, parts))
    return EnumerationResult(keep, result.search_space_size, labeled_count=result.labeled_count)


def unique_up_to_reflection(result: EnumerationResult) -> bool:
    return not result.cap_hit and result.classes == 1


def chord_classes(result: EnumerationResult) -> set[ChordModel]:
    """Canonical chord words of the arc models in ``result``."""
    return {canonical_form_labeled(to_chord_model(m)) for m in result.models}


# --- graph sources -------------------------------------------------------------------


def labels(n: int) -> list[str]:
    return [str(i) for i in range(1, n + 1)]


def random_arc_model(n: int, rng: random.Random) -> CircularArcModel:
    toks = [(v, e) for v in labels(n) for e in (0, 1)]
    rng.shuffle(toks)
    return CircularArcModel(tuple(toks))


def is_admissible(g: Graph) -> bool:
    """No similar pairs and no D-vertices."""
    return not similar_pairs(g) and not d_vertices(g)


def sample_circular_arc_graphs(
    count: int, n_range: tuple[int, int], seed: int = 0, admissible_only: bool = True
) -> Iterator[tuple[Graph, CircularArcModel]]:
    """Random circular-arc graphs with a witnessing model, distinct as labeled graphs."""
    rng = random.Random(seed)
    seen = set()
    produced = 0
    attempts = 0
    while produced < count:
        attempts += 1
        if attempts > 10000 * max(count, 1):
            raise RuntimeError("could not sample enough distinct graphs")
        n = rng.randint(*n_range)
        m = random_arc_model(n, rng)
        g = intersection_graph(m)
        if admissible_only and not is_admissible(g):
            continue
        if g in seen:
            continue
        seen.add(g)
        produced += 1
        yield g, m


def graph_certificate(g: Graph) -> tuple:
    """Isomorphism invariant that is complete: the least relabeled edge list."""
    vs = g.vertices
    n = len(vs)
    edges = [(g.index[a], g.index[b]) for a, b in g.sorted_edges()]
    best = None
    for perm in permutations(range(n)):
        cand = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        if best is None or cand < best:
            best = cand
    return (n, best or ())


def all_circular_arc_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of circular-arc graphs on ``n`` vertices.

    Generated by running over every arc word with the first head pinned.
    """
    vs = labels(n)
    if n == 0:
        return []
    rest = [(v, e) for v in vs for e in (0, 1)][1:]
    L = 2 * n
    seen_edges: set[frozenset] = set()
    graphs = []
    for perm in permutations(rest):
        pos = {(vs[0], 0): 0}
        for i, tok in enumerate(perm, start=1):
            pos[tok] = i
        span = {v: (pos[(v, 0)], (pos[(v, 1)] - pos[(v, 0)]) % L) for v in vs}
        edges = []
        for i, a in enumerate(vs):
            sa, la = span[a]
            for b in vs[i + 1:]:
                sb, lb = span[b]
                if (sb - sa) % L <= la or (sa - sb) % L <= lb:
                    edges.append((a, b))
        key = frozenset(edges)
        if key in seen_edges:
            continue
        seen_edges.add(key)
        graphs.append(Graph.from_edges(vs, edges))
    reps = {}
    for g in graphs:
        reps.setdefault(graph_certificate(g), g)
    return [reps[k] for k in sorted(reps)]
