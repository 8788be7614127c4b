"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line with its wall time,
whatever the outcome.  Run as a script for the same output without pytest's
progress noise: ``python tests/test_acceptance.py``.
"""

import sys
import time
from contextlib import contextmanager
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from arckit.arcs import (  # noqa: E402
    CircularArcModel,
    ExtensionCertificate,
    canonical_form_labeled,
    check_normalized,
    intersection_graph,
    normalize_with_certificate,
    reflect,
    to_chord_model,
)
from arckit.claims import (  # noqa: E402
    CE1_ARC_CAP,
    CLAIM_B_MARKERS,
    fixture_ce1,
    fixture_claim_a,
    fixture_claim_b,
    verify_claim_a,
    verify_claim_b,
    verify_counterexample1,
    verify_h1_on_primes,
)
from arckit.conformal import build_gc, is_module_consistent, conformal_equivalence_check  # noqa: E402
from arckit.decomposition import (  # noqa: E402
    NodeKind,
    build_md_tree,
    decompose_by_join,
    find_join,
    is_join,
    is_module,
)
from arckit.enumeration import (  # noqa: E402
    all_circular_arc_graphs,
    chord_classes,
    enumerate_conformal_models,
    enumerate_normalized_models,
    is_admissible,
    sample_circular_arc_graphs,
)
from arckit.graph import Graph, connected_components, remove_vertices  # noqa: E402


@contextmanager
def criterion(capsys, number: int, title: str, limit_s: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        took = time.perf_counter() - start
        within = took < limit_s
        verdict = "PASS" if ok and within else "FAIL"
        note = "" if within else f", over the {limit_s:.0f} s budget"
        with capsys.disabled():
            print(f"\ncriterion {number}: {verdict}  {title} ({took:.1f} s{note})")
    assert within, f"took {took:.1f} s, budget {limit_s} s"


# --- 1 ---------------------------------------------------------------------------------


def test_criterion_1_claim_a(capsys):
    with criterion(capsys, 1, "claim A refuted", 60):
        fx = fixture_claim_a()
        report = verify_claim_a(fx, exhaustive=True)
        assert report.ok and report.refuted
        # the primality premise is backed by the literal subset scan
        assert "2^21 subsets found 0" in report.premises[1].evidence
        gc = build_gc(fx.graph)
        s = fx.vertex("s")
        j = fx.join()
        assert all(gc.has_edge(s, v) for v in (j.v1 | j.v2) - {s})
        assert len(connected_components(remove_vertices(gc, [s]))) >= 2


# --- 2 ---------------------------------------------------------------------------------


def test_criterion_2_claim_b(capsys):
    with criterion(capsys, 2, "claim B refuted", 5):
        fx = fixture_claim_b()
        report = verify_claim_b(fx)
        assert report.ok and report.refuted
        gc = build_gc(fx.graph)
        h1, h2 = decompose_by_join(gc, fx.join(), markers=CLAIM_B_MARKERS)
        v, u = CLAIM_B_MARKERS
        assert is_module(h1, {"u3", v}) and len(h1) > 2
        assert is_module(h2, {u, "v3"}) and len(h2) > 2
        assert oracles.is_module(oracles.adj_of(h1), {"u3", v})
        assert oracles.is_module(oracles.adj_of(h2), {u, "v3"})


# --- 3 ---------------------------------------------------------------------------------


def test_criterion_3_counterexample(capsys):
    with criterion(capsys, 3, "counterexample 1: two labeled models, M1 and M4 inconsistent", 600):
        fx = fixture_ce1()
        assert verify_counterexample1(fx).ok
        res = enumerate_normalized_models(fx.graph, cap=CE1_ARC_CAP)
        assert res.labeled_count == 2 and res.classes == 1 and not res.cap_hit
        (rep,) = res.models
        mirror = CircularArcModel(reflect(rep.word))
        assert canonical_form_labeled(mirror) == rep
        for m in (rep, mirror):
            d = to_chord_model(m)
            assert intersection_graph(m) == fx.graph
            assert is_module_consistent(d, fx["M1"]) is None
            assert is_module_consistent(d, fx["M4"]) is None
        tree = build_md_tree(build_gc(fx.graph))
        assert tree.kind is NodeKind.NEIGHBORHOOD
        kids = {c.vertices: c.kind for c in tree.children}
        assert kids == {fx[f"M{i}"]: NodeKind.PARALLEL for i in range(1, 5)}


# --- 4 ---------------------------------------------------------------------------------


def test_criterion_4_conformal_equals_normalized(capsys):
    with criterion(capsys, 4, "conformal models equal chord models of normalized models, n <= 5", 600):
        graphs = [g for n in range(1, 6) for g in all_circular_arc_graphs(n) if is_admissible(g)]
        assert len(graphs) == 6
        for g in graphs:
            assert conformal_equivalence_check(g)
            conf = enumerate_conformal_models(g)
            norm = enumerate_normalized_models(g)
            adj = oracles.adj_of(g)
            want_conf = {canonical_form_labeled(w) for w in oracles.conformal_chord_words(adj)}
            want_norm = {
                canonical_form_labeled(oracles.chord_word_of(w))
                for w in oracles.normalized_arc_words(adj)
            }
            assert {d.word for d in conf.models} == want_conf
            assert {d.word for d in chord_classes(norm)} == want_norm == want_conf


# --- 5 ---------------------------------------------------------------------------------


def test_criterion_5_h1_spot_check(capsys):
    with criterion(capsys, 5, "conformal model unique on 50 prime instances", 600):
        report = verify_h1_on_primes(sample_count=50, n_max=6)
        assert report.premises_hold and not report.refuted and report.ok


# --- 6 ---------------------------------------------------------------------------------


def _atlas_connected(max_n: int) -> list[Graph]:
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(h):
            vs = [f"v{i}" for i in sorted(h.nodes)]
            out.append(Graph.from_edges(vs, [(f"v{a}", f"v{b}") for a, b in h.edges]))
    return out


def test_criterion_6_decomposition(capsys):
    with criterion(capsys, 6, "MD tree and join search on all connected graphs, n <= 6", 300):
        graphs = _atlas_connected(6)
        assert sum(len(g) == 6 for g in graphs) == 112
        for g in graphs:
            adj = oracles.adj_of(g)
            tree = build_md_tree(g)
            got = {(n.vertices, n.kind.value, frozenset(n.child_sets())) for n in tree.walk()}
            assert got == oracles.md_tree(adj)
            splits = [set(s) for s in oracles.joins(adj)]
            j = find_join(g)
            assert (j is None) == (not splits)
            if j is not None:
                assert is_join(g, j) and {j.side_a, j.side_b} in splits


# --- 7 ---------------------------------------------------------------------------------


def test_criterion_7_normalize(capsys):
    with criterion(capsys, 7, "normalize on 200 random inputs, n <= 7", 120):
        inputs = list(sample_circular_arc_graphs(200, (4, 7), seed=2024))
        assert len(inputs) == 200
        for g, m in inputs:
            out, cert = normalize_with_certificate(m, g)
            assert check_normalized(out, g) == []
            assert intersection_graph(out) == g
            assert isinstance(cert, ExtensionCertificate) and cert.all_extend()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
