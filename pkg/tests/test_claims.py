from dataclasses import replace
from itertools import combinations

import pytest

import oracles
from arckit.arcs import intersection_graph, parse_arc_model
from arckit.claims import (
    CLAIM_B_MARKERS,
    ClaimReport,
    Fixture,
    format_fixture,
    fixture_ce1,
    fixture_claim_a,
    fixture_claim_b,
    fixture_gs,
    parse_fixture,
    prime_gc_instances,
    reports_to_json,
    verify_claim_a,
    verify_claim_b,
    verify_counterexample1,
    verify_gs,
    verify_h1_on_primes,
)
from arckit.conformal import build_gc
from arckit.decomposition import decompose_by_join, is_join, is_module
from arckit.errors import FixtureInvalid, ParseError, SizeCapExceeded
from arckit.graph import Graph

ALL_FIXTURES = [fixture_gs, fixture_claim_a, fixture_claim_b, fixture_ce1]


# --- fixtures ------------------------------------------------------------------------


@pytest.mark.parametrize("load", ALL_FIXTURES)
def test_fixture_model_realizes_graph(load):
    fx = load()
    assert intersection_graph(fx.model) == fx.graph
    assert oracles.arc_graph_edges(fx.model.word) == fx.graph.edges
    adj = oracles.adj_of(fx.graph)
    for a, b in combinations(fx.graph.vertices, 2):
        assert oracles.arc_relation(fx.model.word, a, b) == oracles.required_arc_relation(adj, a, b)


@pytest.mark.parametrize("load", ALL_FIXTURES)
def test_fixture_round_trip(load):
    fx = load()
    again = parse_fixture(format_fixture(fx, comment="regenerated\ntwo lines"))
    assert again == fx


def test_gs_shape():
    fx = fixture_gs()
    assert len(fx.graph) == 7 and fx.vertex("s") == "s"
    report = verify_gs(fx)
    assert report.ok and not report.refuted


def test_fixture_joins_hold():
    for fx in (fixture_claim_a(), fixture_claim_b()):
        gc = build_gc(fx.graph)
        j = fx.join()
        assert is_join(gc, j)
        adj = oracles.adj_of(gc)
        # the frontier of each side is exactly V1 resp. V2, and they are fully joined
        assert {x for x in j.side_a if adj[x] & j.side_b} == j.v1
        assert {y for y in j.side_b if adj[y] & j.side_a} == j.v2
        assert all(y in adj[x] for x in j.v1 for y in j.v2)


def test_parse_fixture_errors():
    with pytest.raises(ParseError):
        parse_fixture("vertices: a b\n")
    with pytest.raises(ParseError) as exc:
        parse_fixture("name: x\nset A: a\nset A: b\nvertices: a b\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_fixture("name: x\nset A: z\nvertices: a b\n")
    with pytest.raises(ParseError):
        parse_fixture("name: x\nmodel: a.0 a.1\nvertices: a b\n")
    with pytest.raises(ParseError) as exc:
        parse_fixture("name: x\nmodel: a.0 a.0\nvertices: a\n")
    assert exc.value.line == 2


# --- verifiers -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "verify", [verify_claim_a, verify_claim_b, verify_counterexample1]
)
def test_refutations_succeed(verify):
    report = verify()
    assert report.premises_hold
    assert report.refuted and report.ok


def test_claim_a_details():
    fx = fixture_claim_a()
    report = verify_claim_a(fx)
    assert fx.join().v1 == frozenset({"s"})
    texts = [p.text for p in report.premises]
    assert any("disconnected" in t for t in texts)


def test_claim_b_modules_in_pieces():
    fx = fixture_claim_b()
    gc = build_gc(fx.graph)
    h1, h2 = decompose_by_join(gc, fx.join(), markers=CLAIM_B_MARKERS)
    m1, m2 = CLAIM_B_MARKERS
    assert oracles.is_module(oracles.adj_of(h1), {"u3", m1})
    assert oracles.is_module(oracles.adj_of(h2), {m2, "v3"})
    assert is_module(h1, {"u3", m1}) and is_module(h2, {m2, "v3"})


def test_ce1_needs_cap_eight():
    with pytest.raises(SizeCapExceeded):
        verify_counterexample1(cap=7)
    assert verify_counterexample1(cap=8).ok


def test_h1_spot_check():
    pool = prime_gc_instances(n_max=5)
    assert all(len(g) <= 5 for g in pool)
    report = verify_h1_on_primes(sample_count=10, n_max=5)
    assert not report.expect_refuted
    assert report.premises_hold == (len(pool) >= 10)
    assert not report.refuted


def test_h1_sampling_is_seeded():
    a = verify_h1_on_primes(sample_count=20, seed=5)
    b = verify_h1_on_primes(sample_count=20, seed=5)
    assert a.to_dict(timing=False) == b.to_dict(timing=False)
    assert a.premises[1].evidence == b.premises[1].evidence


def test_corrupted_fixture_is_rejected():
    fx = fixture_claim_b()
    # drop a vertex from V1 so the sides no longer form a join
    bad_ann = {**fx.annotations, "V1": frozenset({"u1"}), "V0": fx["V0"] | {"u2"}}
    with pytest.raises(FixtureInvalid) as exc:
        verify_claim_b(replace(fx, annotations=bad_ann))
    assert exc.value.report is not None and not exc.value.report.premises_hold

    # a model of the wrong graph fails the first premise
    ce = fixture_ce1()
    g = Graph.from_edges(ce.graph.vertices, ce.graph.sorted_edges()[1:])
    with pytest.raises(FixtureInvalid):
        verify_counterexample1(replace(ce, graph=g))


def test_stored_model_must_be_normalized():
    # an interval model of P4 represents the graph but is not normalized
    text = "name: p4\nmodel: a.0 b.0 a.1 c.0 b.1 d.0 c.1 d.1\nvertices: a b c d\nedge: a b\nedge: b c\nedge: c d\n"
    fx = parse_fixture(text)
    assert intersection_graph(fx.model) == fx.graph
    with pytest.raises(FixtureInvalid, match="normalized"):
        verify_claim_a(fx)
    twins = parse_fixture("name: t\nmodel: a.0 b.0 b.1 c.0 c.1 a.1\nvertices: a b c\nedge: a b\nedge: a c\n")
    with pytest.raises(FixtureInvalid):
        verify_claim_b(twins)


# --- reports ---------------------------------------------------------------------------


def test_report_schema_and_json():
    reports = [verify_claim_b()]
    d = reports[0].to_dict()
    assert set(d) == {"claim", "premises", "refuted", "elapsed_ms"}
    assert set(reports[0].to_dict(timing=False)) == {"claim", "premises", "refuted"}
    assert all(set(p) == {"text", "ok"} for p in d["premises"])
    assert reports_to_json(reports, timing=False).endswith("\n")
    text = reports[0].render()
    assert text.startswith("claim B: refuted") and "[FAIL]" not in text


def test_report_ok_logic():
    r = ClaimReport("X", [], refuted=True)
    assert r.ok
    assert not ClaimReport("X", [], refuted=False).ok
    assert ClaimReport("X", [], refuted=False, expect_refuted=False).ok
