"""Fixture instances and verifiers for four structural claims about N-models.

Each fixture is a plain-text data file shipped in ``arckit/fixtures``: a graph
in the usual ``vertices:`` / ``edge:`` format, an optional ``model:`` line and
any number of named vertex sets (``set V1: s``).  A verifier re-derives every
property the instance is supposed to have and reports them as premises; when
a premise fails the fixture is broken and :class:`FixtureInvalid` is raised
with the partial report attached.

Claims:

``A``
    A prime ``G_c`` with a join whose ``V1`` holds a vertex ``s`` adjacent to
    all of ``V1 ∪ V2`` need not stay prime once ``s`` is removed.
``B``
    A prime ``G_c`` with a join where no such ``s`` exists can still split
    into component graphs ``H1``, ``H2`` that have nontrivial modules.
``CE1``
    A parallel child of the neighborhood root can be inconsistent in every
    normalized model.
``H1``
    Spot check, expected to hold: a prime ``G_c`` has one conformal model up
    to reflection.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .arcs import (
    CircularArcModel,
    check_normalized,
    intersection_graph,
    parse_arc_model,
    reflect,
    to_chord_model,
)
from .conformal import build_gc, is_module_consistent
from .decomposition import (
    Join,
    NodeKind,
    build_md_tree,
    decompose_by_join,
    find_nontrivial_module,
    is_module,
    is_s_inseparable,
    join_problems,
    scan_nontrivial_modules,
)
from .enumeration import (
    DEFAULT_CHORD_CAP,
    enumerate_conformal_models,
    enumerate_normalized_models,
    is_admissible,
    labels,
    unique_up_to_reflection,
)
from .errors import FixtureInvalid, ModelMismatch, ParseError, PreconditionError, SizeCapExceeded
from .graph import (
    Graph,
    classify_vertex_pair,
    connected_components,
    cycle_graph,
    format_graph,
    induced_subgraph,
    parse_graph,
    remove_vertices,
    sort_vertices,
    VertexRelation,
)

CLAIMS = ("A", "B", "CE1", "H1")
DEFAULT_CLAIMS = ("A", "B", "CE1")

# H1 and H2 get these marker names in the Claim B check, so that the two
# modules read {u3, v} and {u, v3}
CLAIM_B_MARKERS = ("v", "u")

CE1_ARC_CAP = 8

# literal subset scans beyond this size cost seconds; pair closures decide primality anyway
EXHAUSTIVE_SCAN_MAX = 22


# --- fixtures ----------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    model: CircularArcModel | None = None
    annotations: dict[str, frozenset[str]] = field(default_factory=dict)

    def __getitem__(self, key: str) -> frozenset[str]:
        return self.annotations[key]

    def vertex(self, key: str) -> str:
        """The single vertex of a one-element annotation."""
        (v,) = self.annotations[key]
        return v

    def join(self) -> Join:
        return Join.of(*(self.annotations[k] for k in ("V0", "V1", "V2", "V3")))


def parse_fixture(text: str) -> Fixture:
    name = None
    model = None
    annotations: dict[str, frozenset[str]] = {}
    graph_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key == "name":
            name = rest.strip()
        elif sep and key == "model":
            try:
                model = parse_arc_model(rest)
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from exc
        elif sep and key.startswith("set "):
            label = key[4:].strip()
            if not label or label in annotations:
                raise ParseError(f"bad or repeated set name {label!r}", lineno)
            annotations[label] = frozenset(rest.split())
        else:
            graph_lines.append(raw)
            continue
        graph_lines.append("")  # keep line numbers aligned for the graph parser
    if not name:
        raise ParseError("missing 'name:' line")
    graph = parse_graph("\n".join(graph_lines))
    for label, members in annotations.items():
        stray = members - set(graph.vertices)
        if stray:
            raise ParseError(f"set {label} names unknown vertices {sort_vertices(stray)}")
    if model is not None and set(model.vertices) != set(graph.vertices):
        raise ParseError("model and graph have different vertex sets")
    return Fixture(name, graph, model, annotations)


def format_fixture(fx: Fixture, comment: str = "") -> str:
    lines = [f"# {c}" if c else "#" for c in comment.splitlines()]
    lines.append(f"name: {fx.name}")
    if fx.model is not None:
        lines.append(f"model: {fx.model}")
    for label, members in fx.annotations.items():
        lines.append(f"set {label}: " + " ".join(sort_vertices(members)))
    return "\n".join(lines) + "\n" + format_graph(fx.graph)


def load_fixture(name: str) -> Fixture:
    text = resources.files("arckit.fixtures").joinpath(f"{name}.fixture").read_text()
    fx = parse_fixture(text)
    if fx.model is not None and check_normalized(fx.model, fx.graph):
        raise FixtureInvalid(f"fixture {name}: stored model is not normalized")
    return fx


def fixture_gs() -> Fixture:
    return load_fixture("gs")


def fixture_claim_a() -> Fixture:
    return load_fixture("claim_a")


def fixture_claim_b() -> Fixture:
    return load_fixture("claim_b")


def fixture_ce1() -> Fixture:
    return load_fixture("ce1")


# --- reports ------------------------------------------------------------------------


@dataclass(frozen=True)
class Premise:
    text: str
    ok: bool
    evidence: str = ""


@dataclass
class ClaimReport:
    """Outcome of one verifier.

    ``refuted`` says whether the claim was shown false on the instance.  For
    the refutations that is the expected outcome; for ``H1`` it is not.
    """

    claim: str
    premises: list[Premise]
    refuted: bool
    elapsed_ms: int = 0
    expect_refuted: bool = True

    @property
    def premises_hold(self) -> bool:
        return all(p.ok for p in self.premises)

    @property
    def ok(self) -> bool:
        return self.premises_hold and self.refuted == self.expect_refuted

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "claim": self.claim,
            "premises": [{"text": p.text, "ok": p.ok} for p in self.premises],
            "refuted": self.refuted,
        }
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def render(self) -> str:
        lines = [f"claim {self.claim}: " + ("refuted" if self.refuted else "not refuted")]
        for p in self.premises:
            mark = "ok  " if p.ok else "FAIL"
            lines.append(f"  [{mark}] {p.text}")
            if p.evidence:
                lines.append(f"         {p.evidence}")
        lines.append(f"  elapsed {self.elapsed_ms} ms")
        return "\n".join(lines)


def reports_to_json(reports: list[ClaimReport], timing: bool = True) -> str:
    return json.dumps([r.to_dict(timing) for r in reports], indent=2) + "\n"


class _Checks:
    """Collects premises; hypotheses that fail make the fixture invalid."""

    def __init__(self, claim: str):
        self.claim = claim
        self.items: list[Premise] = []
        self.start = time.perf_counter()

    def add(self, text: str, ok: bool, evidence: str = "") -> bool:
        self.items.append(Premise(text, bool(ok), evidence))
        return bool(ok)

    def require(self, text: str, ok: bool, evidence: str = "") -> None:
        if not self.add(text, ok, evidence):
            report = self.report(refuted=False)
            raise FixtureInvalid(f"claim {self.claim}: premise failed: {text}", report)

    def report(self, refuted: bool, expect_refuted: bool = True) -> ClaimReport:
        ms = int(round((time.perf_counter() - self.start) * 1000))
        return ClaimReport(self.claim, list(self.items), refuted, ms, expect_refuted)


def _names(vs) -> str:
    return "{" + ", ".join(sort_vertices(vs)) + "}"


def _require_model(c: _Checks, fx: Fixture) -> None:
    evidence = f"{len(fx.graph)} vertices, {len(fx.graph.edges)} edges"
    try:
        ok = fx.model is not None and not check_normalized(fx.model, fx.graph)
    except (PreconditionError, ModelMismatch) as exc:
        ok, evidence = False, str(exc)
    c.require("the stored model is a normalized model of G", ok, evidence)


def _require_prime(c: _Checks, gc: Graph, exhaustive: bool) -> None:
    witness = find_nontrivial_module(gc)
    evidence = "every pair closure is all of V"
    if witness is None and exhaustive:
        hits = scan_nontrivial_modules(gc, limit=1)
        evidence += f"; scan of all 2^{len(gc)} subsets found {len(hits)}"
        if hits:
            witness = hits[0]
    elif witness is not None:
        evidence = f"nontrivial module {_names(witness)}"
    c.require("G_c has no nontrivial module (s-inseparable)", witness is None, evidence)


def _require_join(c: _Checks, gc: Graph, j: Join) -> None:
    probs = join_problems(gc, j)
    c.require(
        "(V0, V1, V2, V3) is a join of G_c",
        not probs,
        str(j) if not probs else "; ".join(probs[:3]),
    )


# --- verifiers -----------------------------------------------------------------------


def verify_gs(fx: Fixture | None = None) -> ClaimReport:
    """Sanity report for the seven-vertex building block of Claim A."""
    fx = fixture_gs() if fx is None else fx
    c = _Checks("Gs")
    _require_model(c, fx)
    ring = [f"s{i}" for i in range(1, 7)]
    c.require("s1..s6 induce a 6-cycle", induced_subgraph(fx.graph, ring) == cycle_graph(ring))
    sns = [
        classify_vertex_pair(fx.graph, a, b) is VertexRelation.STRICTLY_NOT_STRONGLY_ADJACENT
        for a, b in zip(ring, ring[1:] + ring[:1])
    ]
    c.require("consecutive cycle vertices are strictly but not strongly adjacent", all(sns))
    return c.report(refuted=False, expect_refuted=False)


def verify_claim_a(fx: Fixture | None = None, exhaustive: bool = True) -> ClaimReport:
    fx = fixture_claim_a() if fx is None else fx
    c = _Checks("A")
    _require_model(c, fx)
    g = fx.graph
    gc = build_gc(g)
    _require_prime(c, gc, exhaustive)
    j = fx.join()
    _require_join(c, gc, j)
    s = fx.vertex("s")
    others = (j.v1 | j.v2) - {s}
    missing = [v for v in others if not gc.has_edge(s, v)]
    c.require(
        "s lies in V1 and is adjacent in G_c to every other vertex of V1 ∪ V2",
        s in j.v1 and not missing,
        f"N_Gc(s) ⊇ {_names(others)}" if not missing else f"misses {_names(missing)}",
    )
    rest = remove_vertices(gc, [s])
    comps = connected_components(rest)
    split = c.add(
        "G_c minus s is disconnected",
        len(comps) >= 2,
        f"{len(comps)} components of sizes {sorted(len(x) for x in comps)}",
    )
    modular = find_nontrivial_module(rest)
    not_prime = c.add(
        "hence G_c minus s has a nontrivial module",
        modular is not None,
        f"e.g. {_names(modular)}" if modular is not None else "",
    )
    return c.report(refuted=split and not_prime)


def verify_claim_b(fx: Fixture | None = None) -> ClaimReport:
    fx = fixture_claim_b() if fx is None else fx
    c = _Checks("B")
    _require_model(c, fx)
    gc = build_gc(fx.graph)
    _require_prime(c, gc, exhaustive=len(gc) <= EXHAUSTIVE_SCAN_MAX)
    j = fx.join()
    _require_join(c, gc, j)
    core = j.v1 | j.v2
    universal = [x for x in core if all(gc.has_edge(x, y) for y in core if y != x)]
    c.require(
        "no vertex of V1 ∪ V2 is adjacent to all others of V1 ∪ V2",
        not universal,
        f"V1 ∪ V2 = {_names(core)}" if not universal else f"universal: {_names(universal)}",
    )
    m1, m2 = CLAIM_B_MARKERS
    h1, h2 = decompose_by_join(gc, j, markers=CLAIM_B_MARKERS)
    u3, v3 = fx.vertex("u3"), fx.vertex("v3")
    first = c.add(
        f"{{u3, {m1}}} is a nontrivial module of H1",
        is_module(h1, {u3, m1}) and len(h1) > 2,
        f"H1 has {len(h1)} vertices; marker {m1} stands for V2 ∪ V3",
    )
    second = c.add(
        f"{{{m2}, v3}} is a nontrivial module of H2",
        is_module(h2, {m2, v3}) and len(h2) > 2,
        f"H2 has {len(h2)} vertices; marker {m2} stands for V0 ∪ V1",
    )
    return c.report(refuted=first and second)


def verify_counterexample1(fx: Fixture | None = None, cap: int = CE1_ARC_CAP) -> ClaimReport:
    """Needs an arc-enumeration cap of at least the fixture size (8)."""
    fx = fixture_ce1() if fx is None else fx
    g = fx.graph
    if len(g) > cap:
        raise SizeCapExceeded("verify_counterexample1", len(g), cap)
    c = _Checks("CE1")
    _require_model(c, fx)
    gc = build_gc(g)
    tree = build_md_tree(gc, cap=None)
    c.require(
        "the MD-tree root of G_c is a neighborhood (prime) node",
        tree.kind is NodeKind.NEIGHBORHOOD,
        tree.render().splitlines()[0],
    )
    groups = [fx[f"M{i}"] for i in range(1, 5)]
    by_set = {child.vertices: child for child in tree.children}
    parallel = all(m in by_set and by_set[m].kind is NodeKind.PARALLEL for m in groups)
    c.require(
        "the root's children are M1..M4, each a parallel node",
        parallel and len(tree.children) == 4,
        ", ".join(f"{child.kind}{_names(child.vertices)}" for child in tree.children),
    )
    res = enumerate_normalized_models(g, cap=cap)
    d = to_chord_model(fx.model)
    mirror = to_chord_model(CircularArcModel(reflect(fx.model.word)))
    inconsistent = all(
        is_module_consistent(model, m) is None
        for model in (d, mirror)
        for m in (groups[0], groups[3])
    )
    c.add(
        "M1 and M4 are inconsistent in the chord model of R and of its mirror image",
        inconsistent,
    )
    only = c.add(
        "R and its mirror image are the only normalized models",
        res.classes == 1 and res.labeled_count == 2 and not res.cap_hit,
        f"{res.classes} class, {res.labeled_count} labeled models, "
        f"{res.search_space_size} search nodes",
    )
    return c.report(refuted=inconsistent and only)


# --- (H1) spot check ---------------------------------------------------------------


def prime_gc_instances(n_max: int = 6, n_min: int = 3) -> list[Graph]:
    """Every labeled graph on ``1..n`` (``n_min <= n <= n_max``) with prime ``G_c``
    that has a normalized model.

    Graphs are scanned exhaustively; the normalized-model search doubles as
    the circular-arc test.
    """
    out = []
    for n in range(n_min, n_max + 1):
        vs = labels(n)
        pairs = list(itertools.combinations(vs, 2))
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(vs, [p for i, p in enumerate(pairs) if mask >> i & 1])
            if not is_admissible(g) or not is_s_inseparable(build_gc(g)):
                continue
            if enumerate_normalized_models(g, cap=None).models:
                out.append(g)
    return out


def verify_h1_on_primes(
    sample_count: int = 50,
    seed: int = 0,
    n_max: int = 6,
    cap: int = DEFAULT_CHORD_CAP,
    extra: list[Graph] = (),
    progress: Callable[[int, int], None] | None = None,
) -> ClaimReport:
    """Check uniqueness of the conformal model on sampled instances with prime ``G_c``.

    Instances are drawn without replacement from :func:`prime_gc_instances`;
    graphs in ``extra`` are checked as well, or skipped if over ``cap``.
    """
    c = _Checks("H1")
    pool = prime_gc_instances(n_max)
    rng = random.Random(seed)
    picked = rng.sample(pool, min(sample_count, len(pool)))
    c.add(
        f"at least {sample_count} instances with prime G_c on at most {n_max} vertices",
        len(picked) >= sample_count,
        f"{len(pool)} labeled instances available, {len(picked)} sampled",
    )
    bad = []
    skipped = 0
    for k, g in enumerate(list(picked) + list(extra)):
        if len(g) > cap:
            skipped += 1
            continue
        res = enumerate_conformal_models(g, cap=cap)
        if not unique_up_to_reflection(res):
            bad.append((g, res.classes))
        if progress:
            progress(k + 1, len(picked) + len(extra))
    evidence = f"{len(picked) + len(extra) - skipped} checked, {skipped} over cap"
    if bad:
        g, k = bad[0]
        evidence += f"; first counterexample has {k} classes: {g.sorted_edges()}"
    c.add("each has one conformal model up to reflection", not bad, evidence)
    return c.report(refuted=bool(bad), expect_refuted=False)


VERIFIERS: dict[str, Callable[[], ClaimReport]] = {
    "A": verify_claim_a,
    "B": verify_claim_b,
    "CE1": verify_counterexample1,
    "H1": verify_h1_on_primes,
}


def run_claims(names=DEFAULT_CLAIMS) -> list[ClaimReport]:
    return [VERIFIERS[n]() for n in names]
