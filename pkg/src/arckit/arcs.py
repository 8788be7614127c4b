"""Circular-arc and chord models stored as circular endpoint words.

An arc model over ``n`` vertices is a clockwise word of ``2n`` tokens; vertex
``v`` contributes a head ``(v, 0)`` and a tail ``(v, 1)`` and its arc runs
clockwise from head to tail, both ends included.  Only the circular order of
endpoints matters, so no coordinates are stored.

Arc membership is computed on a refined circle of ``4n`` cells: cell ``2i`` is
the endpoint at position ``i`` and cell ``2i + 1`` is the open gap after it.
Every arc is a union of cells, which makes set relations between arcs exact
bitmask tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

from .errors import (
    InvalidModel,
    ModelMismatch,
    NormalizationFailed,
    ParseError,
    PreconditionError,
    UnknownVertex,
)
from .graph import (
    Graph,
    VertexRelation,
    classify_vertex_pair,
    d_vertices,
    nested,
    similar_pairs,
    sort_vertices,
    vertex_key,
)

Token = tuple  # (vertex, end) for arcs, bare vertex for chords


class ArcRelation(enum.Enum):
    INDEPENDENT = "Independent"
    FIRST_CONTAINS_SECOND = "FirstContainsSecond"
    SECOND_CONTAINS_FIRST = "SecondContainsFirst"
    STRICT_OVERLAP = "StrictOverlap"
    COVER_CIRCLE = "CoverCircle"

    def __str__(self) -> str:
        return self.value

    def swapped(self) -> "ArcRelation":
        if self is ArcRelation.FIRST_CONTAINS_SECOND:
            return ArcRelation.SECOND_CONTAINS_FIRST
        if self is ArcRelation.SECOND_CONTAINS_FIRST:
            return ArcRelation.FIRST_CONTAINS_SECOND
        return self


def _token_key(tok) -> tuple:
    if isinstance(tok, tuple):
        return (vertex_key(tok[0]), tok[1])
    return (vertex_key(tok),)


def word_key(word: Sequence) -> tuple:
    return tuple(_token_key(t) for t in word)


@dataclass(frozen=True)
class CircularArcModel:
    word: tuple

    def __post_init__(self):
        word = tuple((str(v), int(e)) for v, e in self.word)
        object.__setattr__(self, "word", word)
        seen = set()
        for tok in word:
            if tok[1] not in (0, 1):
                raise InvalidModel(f"endpoint marker must be 0 or 1 in {tok!r}")
            if tok in seen:
                raise InvalidModel(f"endpoint {tok[0]}.{tok[1]} appears twice")
            seen.add(tok)
        for v, e in word:
            if (v, 1 - e) not in seen:
                raise InvalidModel(f"vertex {v!r} lacks its {'tail' if e == 0 else 'head'}")

    @classmethod
    def from_string(cls, text: str) -> "CircularArcModel":
        return parse_arc_model(text)

    def __str__(self) -> str:
        return " ".join(f"{v}.{e}" for v, e in self.word)

    def __len__(self) -> int:
        return len(self.word)

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sort_vertices({v for v, _ in self.word}))

    @cached_property
    def positions(self) -> dict[tuple, int]:
        return {tok: i for i, tok in enumerate(self.word)}

    @cached_property
    def full_mask(self) -> int:
        return (1 << (2 * len(self.word))) - 1

    @cached_property
    def masks(self) -> dict[str, int]:
        cells = 2 * len(self.word)
        out = {}
        for v in self.vertices:
            start = 2 * self.positions[(v, 0)]
            stop = 2 * self.positions[(v, 1)]
            m = 0
            c = start
            while True:
                m |= 1 << c
                if c == stop:
                    break
                c = (c + 1) % cells
            out[v] = m
        return out

    def arc_mask(self, v: str) -> int:
        if v not in self.masks:
            raise UnknownVertex(v)
        return self.masks[v]


@dataclass(frozen=True)
class ChordModel:
    word: tuple

    def __post_init__(self):
        word = tuple(str(t) for t in self.word)
        object.__setattr__(self, "word", word)
        counts: dict[str, int] = {}
        for t in word:
            counts[t] = counts.get(t, 0) + 1
        bad = [v for v, c in counts.items() if c != 2]
        if bad:
            raise InvalidModel(f"chord endpoints must appear exactly twice: {bad}")

    @classmethod
    def from_string(cls, text: str) -> "ChordModel":
        return parse_chord_model(text)

    def __str__(self) -> str:
        return " ".join(self.word)

    def __len__(self) -> int:
        return len(self.word)

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sort_vertices(set(self.word)))

    @cached_property
    def positions(self) -> dict[str, tuple[int, int]]:
        pos: dict[str, list[int]] = {}
        for i, t in enumerate(self.word):
            pos.setdefault(t, []).append(i)
        return {v: (p[0], p[1]) for v, p in pos.items()}


# --- relations ---------------------------------------------------------------


def _relation_from_masks(a: int, b: int, full: int) -> ArcRelation:
    if a & b == 0:
        return ArcRelation.INDEPENDENT
    if b & ~a == 0:
        return ArcRelation.FIRST_CONTAINS_SECOND
    if a & ~b == 0:
        return ArcRelation.SECOND_CONTAINS_FIRST
    if a | b == full:
        return ArcRelation.COVER_CIRCLE
    return ArcRelation.STRICT_OVERLAP


def classify_arc_pair(m: CircularArcModel, v1: str, v2: str) -> ArcRelation:
    a, b = m.arc_mask(v1), m.arc_mask(v2)
    if v1 == v2:
        raise ValueError("classify_arc_pair needs two distinct arcs")
    return _relation_from_masks(a, b, m.full_mask)


def _pattern_table() -> dict[tuple, ArcRelation]:
    """Relation of arcs ``x``/``y`` for every linear order of their endpoints."""
    table = {}
    toks = [("x", 0), ("x", 1), ("y", 0), ("y", 1)]
    for perm in permutations(toks):
        table[perm] = classify_arc_pair(CircularArcModel(perm), "x", "y")
    return table


PATTERN_RELATION = _pattern_table()


def intersection_graph(m: CircularArcModel) -> Graph:
    vs = m.vertices
    masks = m.masks
    edges = [
        (a, b)
        for i, a in enumerate(vs)
        for b in vs[i + 1:]
        if masks[a] & masks[b]
    ]
    return Graph.from_edges(vs, edges)


def required_relation(g: Graph, v1: str, v2: str) -> ArcRelation:
    """The arc relation a normalized model must realize for ``v1, v2``."""
    rel = classify_vertex_pair(g, v1, v2)
    if rel is VertexRelation.INDEPENDENT:
        return ArcRelation.INDEPENDENT
    if rel is VertexRelation.NESTED_ADJACENT:
        if nested(g, v2, v1):
            return ArcRelation.FIRST_CONTAINS_SECOND
        return ArcRelation.SECOND_CONTAINS_FIRST
    if rel is VertexRelation.STRONGLY_ADJACENT:
        return ArcRelation.COVER_CIRCLE
    if rel is VertexRelation.STRICTLY_NOT_STRONGLY_ADJACENT:
        return ArcRelation.STRICT_OVERLAP
    raise PreconditionError(f"{v1} and {v2} form a similar pair")


def require_no_twins_or_dominators(g: Graph) -> None:
    sims = similar_pairs(g)
    if sims:
        raise PreconditionError(f"graph has similar pair(s): {sims[:3]}")
    doms = d_vertices(g)
    if doms:
        raise PreconditionError(f"graph has D-vertex(es): {doms[:3]}")


def required_relations(g: Graph) -> dict[tuple[str, str], ArcRelation]:
    require_no_twins_or_dominators(g)
    vs = g.vertices
    return {
        (a, b): required_relation(g, a, b)
        for i, a in enumerate(vs)
        for b in vs[i + 1:]
    }


@dataclass(frozen=True)
class Violation:
    pair: tuple[str, str]
    arc_relation: ArcRelation
    vertex_relation: VertexRelation
    required: ArcRelation

    def __str__(self) -> str:
        a, b = self.pair
        return (
            f"{a},{b}: arcs {self.arc_relation}, vertices {self.vertex_relation}"
            f" (needs {self.required})"
        )


def _require_model_of(m: CircularArcModel, g: Graph) -> None:
    if set(m.vertices) != set(g.vertices):
        raise ModelMismatch("model and graph have different vertex sets")
    if intersection_graph(m) != g:
        raise ModelMismatch("intersection graph of the model differs from the graph")


def check_normalized(m: CircularArcModel, g: Graph) -> list[Violation]:
    require_no_twins_or_dominators(g)
    _require_model_of(m, g)
    return _violations(m, g, required_relations(g))


def _violations(m, g, required) -> list[Violation]:
    out = []
    for (a, b), need in required.items():
        have = classify_arc_pair(m, a, b)
        if have is not need:
            out.append(Violation((a, b), have, classify_vertex_pair(g, a, b), need))
    return out


def is_normalized(m: CircularArcModel, g: Graph) -> bool:
    return not check_normalized(m, g)


# --- normalization -------------------------------------------------------------


def _move(word: list, tok, after=None, before=None) -> list:
    out = [t for t in word if t != tok]
    anchor = after if after is not None else before
    i = out.index(anchor)
    out.insert(i + 1 if after is not None else i, tok)
    return out


def _rotate_to(word: list, tok) -> list:
    i = word.index(tok)
    return word[i:] + word[:i]


def _repair(word: list, g: Graph, v: Violation) -> list[tuple[list, set]]:
    """Candidate ``(word, moved tokens)`` pairs that fix ``v`` by extending arcs only."""
    a, b = v.pair
    need, have = v.required, v.arc_relation
    if need in (ArcRelation.FIRST_CONTAINS_SECOND, ArcRelation.SECOND_CONTAINS_FIRST):
        outer, inner = (a, b) if need is ArcRelation.FIRST_CONTAINS_SECOND else (b, a)
        if have is not ArcRelation.STRICT_OVERLAP:
            return []
        # inner sticks out past exactly one end of outer; push that end past it
        w = _rotate_to(word, (outer, 0))
        if w.index((inner, 1)) > w.index((outer, 1)):
            return [(_move(word, (outer, 1), after=(inner, 1)), {(outer, 1)})]
        return [(_move(word, (outer, 0), before=(inner, 0)), {(outer, 0)})]
    if need is ArcRelation.COVER_CIRCLE and have is ArcRelation.STRICT_OVERLAP:
        # uncovered stretch runs from the tail of one arc to the head of the other
        w = _rotate_to(word, (a, 0))
        first, second = (a, b) if w.index((b, 0)) < w.index((a, 1)) else (b, a)
        w = _rotate_to(word, (second, 1))
        gap = w[1:w.index((first, 0))]
        rest = w[w.index((first, 0)) + 1:]
        moved = {(first, 0), (second, 1)}
        return [
            (gap[:k] + [(first, 0), (second, 1)] + gap[k:] + rest, moved)
            for k in range(len(gap) + 1)
        ]
    return []


@dataclass(frozen=True)
class ExtensionCertificate:
    """Exact endpoint coordinates of a model before and after normalization.

    Coordinates live on a circle of circumference ``length``.  Tokens that a
    repair did not touch keep their coordinate; moved tokens are placed
    strictly between their new neighbors.  Arc containment is then plain
    interval arithmetic, independent of how the words are rotated.
    """

    length: int
    before: dict
    after: dict

    def _arc(self, coords: dict, v: str) -> tuple:
        head = coords[(v, 0)]
        return head, (coords[(v, 1)] - head) % self.length

    def extends(self, v: str) -> bool:
        """Whether the output arc of ``v`` contains its input arc."""
        h0, s0 = self._arc(self.before, v)
        h1, s1 = self._arc(self.after, v)
        return (h0 - h1) % self.length + s0 <= s1

    def all_extend(self) -> bool:
        return all(self.extends(v) for v, e in self.before if e == 0)


def _place(word: list, coords: dict, moved: set, length: int) -> dict | None:
    """Coordinates for ``word`` keeping every unmoved token where it was.

    Moved tokens are spread over the gap between their unmoved neighbors, but
    a head never lands clockwise of its old spot and a tail never lands
    counterclockwise of it.  Returns ``None`` when that is impossible.
    """
    fixed = [i for i, t in enumerate(word) if t not in moved]
    if not fixed:
        return None
    out = {t: coords[t] for t in word if t not in moved}
    k = len(word)
    for j, i in enumerate(fixed):
        nxt = fixed[(j + 1) % len(fixed)]
        run = [word[(i + d) % k] for d in range(1, (nxt - i) % k or k)]
        base = coords[word[i]]
        span = (coords[word[nxt]] - base) % length or length
        prev = Fraction(0)
        for idx, t in enumerate(run):
            lo, hi = prev, span
            old = (coords[t] - base) % length
            if 0 < old < span:
                if t[1] == 0:
                    hi = min(hi, old)
                else:
                    lo = max(lo, old)
            if lo >= hi:
                return None
            pos = lo + (hi - lo) / (len(run) - idx + 1)
            out[t] = (base + pos) % length
            prev = pos
    return out


def normalize_with_certificate(
    m: CircularArcModel, g: Graph
) -> tuple[CircularArcModel, ExtensionCertificate]:
    """Extend arcs of ``m`` until it is a normalized model of ``g``.

    Each step picks the first violating pair and applies the smallest arc
    extension that realizes the required relation without changing the
    intersection graph; a candidate that would shrink any arc is rejected.
    Every step strictly enlarges some arc, so the loop is bounded by
    ``4 n^2`` steps.
    """
    required = required_relations(g)
    _require_model_of(m, g)
    n = len(g)
    length = len(m.word)
    word = list(m.word)
    start = {t: Fraction(i) for i, t in enumerate(word)}
    coords = dict(start)
    for _ in range(4 * n * n + 1):
        current = CircularArcModel(tuple(word))
        bad = _violations(current, g, required)
        if not bad:
            cert = ExtensionCertificate(length, start, coords)
            return _rotate_like(current, m), cert
        for cand, moved in _repair(word, g, bad[0]):
            model = CircularArcModel(tuple(cand))
            if intersection_graph(model) != g:
                continue
            if classify_arc_pair(model, *bad[0].pair) is not bad[0].required:
                continue
            placed = _place(cand, coords, moved, length)
            if placed is None:
                continue
            step = ExtensionCertificate(length, coords, placed)
            if all(step.extends(v) for v, e in moved):
                word, coords = cand, placed
                break
        else:
            raise NormalizationFailed(f"no arc extension repairs {bad[0]}")
    raise NormalizationFailed(f"no fixpoint after {4 * n * n} repairs")


def normalize(m: CircularArcModel, g: Graph) -> CircularArcModel:
    """Normalized model of ``g`` obtained from ``m`` by extending arcs."""
    return normalize_with_certificate(m, g)[0]


def _rotate_like(m: CircularArcModel, ref: CircularArcModel) -> CircularArcModel:
    """Rotate ``m`` so it starts with the same token as ``ref``."""
    return CircularArcModel(tuple(_rotate_to(list(m.word), ref.word[0])))


# --- chords ------------------------------------------------------------------


def to_chord_model(m: CircularArcModel) -> ChordModel:
    return ChordModel(tuple(v for v, _ in m.word))


def chords_cross(d: ChordModel, u: str, v: str) -> bool:
    i, j = d.positions[u]
    k, l = d.positions[v]
    return (i < k < j) != (i < l < j)


def interlacement_graph(d: ChordModel) -> Graph:
    vs = d.vertices
    edges = [
        (a, b)
        for i, a in enumerate(vs)
        for b in vs[i + 1:]
        if chords_cross(d, a, b)
    ]
    return Graph.from_edges(vs, edges)


# --- rotation, reflection, canonical forms -------------------------------------


def rotate(word: Sequence, k: int) -> tuple:
    word = tuple(word)
    if not word:
        return word
    k %= len(word)
    return word[k:] + word[:k]


def reflect(word: Sequence) -> tuple:
    """Mirror image of a word.

    Chord tokens are simply reversed.  Arc tokens are reversed and have head
    and tail swapped, so every arc keeps covering the same (mirrored) points.
    """
    word = tuple(word)
    if word and isinstance(word[0], tuple):
        return tuple((v, 1 - e) for v, e in reversed(word))
    return tuple(reversed(word))


def _relabel(word: tuple) -> tuple:
    names: dict[str, str] = {}
    out = []
    for tok in word:
        v = tok[0] if isinstance(tok, tuple) else tok
        if v not in names:
            names[v] = str(len(names))
        out.append((names[v], tok[1]) if isinstance(tok, tuple) else names[v])
    return tuple(out)


def _variants(word: tuple):
    for w in (word, reflect(word)):
        for k in range(len(w)):
            yield rotate(w, k)


def _unwrap(model_or_word):
    if isinstance(model_or_word, (CircularArcModel, ChordModel)):
        return type(model_or_word), model_or_word.word
    return None, tuple(model_or_word)


def _rewrap(kind, word):
    return kind(word) if kind is not None else word


def canonical_form(model_or_word):
    """Representative of the class under rotation, reflection and relabeling."""
    kind, word = _unwrap(model_or_word)
    best = min((_relabel(w) for w in _variants(word)), key=word_key)
    return _rewrap(kind, best)


def canonical_form_labeled(model_or_word):
    """Representative of the class under rotation and reflection only."""
    kind, word = _unwrap(model_or_word)
    best = min(_variants(word), key=word_key)
    return _rewrap(kind, best)


def canonical_rotation(model_or_word):
    """Representative under rotation alone (reflection not quotiented)."""
    kind, word = _unwrap(model_or_word)
    best = min((rotate(word, k) for k in range(len(word))), key=word_key)
    return _rewrap(kind, best)


# --- text format ---------------------------------------------------------------


def _model_tokens(text: str) -> list[tuple[int, str]]:
    toks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks += [(lineno, t) for t in line.split()]
    return toks


def parse_arc_model(text: str) -> CircularArcModel:
    word = []
    for lineno, tok in _model_tokens(text):
        v, dot, end = tok.rpartition(".")
        if not dot or not v or end not in ("0", "1"):
            raise ParseError(f"arc endpoint must look like 'v.0' or 'v.1', got {tok!r}", lineno)
        word.append((v, int(end)))
    if not word:
        raise ParseError("empty model")
    try:
        return CircularArcModel(tuple(word))
    except InvalidModel as exc:
        raise ParseError(str(exc)) from exc


def parse_chord_model(text: str) -> ChordModel:
    toks = _model_tokens(text)
    if not toks:
        raise ParseError("empty model")
    for lineno, tok in toks:
        if tok.endswith((".0", ".1")):
            raise ParseError(f"chord tokens carry no endpoint marker, got {tok!r}", lineno)
    try:
        return ChordModel(tuple(t for _, t in toks))
    except InvalidModel as exc:
        raise ParseError(str(exc)) from exc


def parse_model(text: str):
    """Parse either kind of model, deciding by the presence of ``.0``/``.1``."""
    toks = _model_tokens(text)
    if toks and all(t.endswith((".0", ".1")) for _, t in toks):
        return parse_arc_model(text)
    return parse_chord_model(text)


def format_model(model) -> str:
    return str(model) + "\n"


def arc_model_from_intervals(intervals: dict[str, tuple[float, float]]) -> CircularArcModel:
    """Build a word from arcs given as (head, tail) angles in [0, 1).

    Arcs run clockwise from head to tail; all endpoints must be distinct.
    """
    pts = []
    for v, (h, t) in intervals.items():
        pts += [(h % 1.0, (v, 0)), (t % 1.0, (v, 1))]
    if len({p for p, _ in pts}) != len(pts):
        raise InvalidModel("arc endpoints must be pairwise distinct")
    return CircularArcModel(tuple(tok for _, tok in sorted(pts)))


def vertices_of(words: Iterable) -> list[str]:
    seen = set()
    for w in words:
        seen |= {t[0] if isinstance(t, tuple) else t for t in w}
    return sort_vertices(seen)
