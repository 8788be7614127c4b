from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import arckit.conformal
import arckit.decomposition
import oracles
from conftest import admissible_models, graphs
from arckit.arcs import (
    ChordModel,
    intersection_graph,
    normalize,
    parse_chord_model,
    reflect,
    rotate,
    to_chord_model,
)
from arckit.claims import fixture_ce1
from arckit.conformal import (
    build_gc,
    conformality_violations,
    is_conformal,
    is_module_consistent,
    side_partition,
    side_partitions,
    conformal_equivalence_check,
)
from arckit.decomposition import is_module
from arckit.enumeration import enumerate_chord_models
from arckit.errors import ModelMismatch, PartitionGap, PreconditionError, UnknownVertex
from arckit.graph import Graph, VertexRelation, classify_vertex_pair, cycle_graph, path_graph


# --- G_c ------------------------------------------------------------------------------


def test_gc_examples():
    assert build_gc(path_graph("abc")) == Graph.from_edges("abc")
    assert build_gc(cycle_graph("12345")) == cycle_graph("12345")


def test_gc_of_ce1_is_path_of_four_modules():
    fx = fixture_ce1()
    gc = build_gc(fx.graph)
    order = ["M1", "M2", "M3", "M4"]
    for name in order:
        assert is_module(gc, fx[name])
        assert not any(gc.has_edge(a, b) for a, b in combinations(sorted(fx[name]), 2))
    for x, y in zip(order, order[1:]):
        assert all(gc.has_edge(a, b) for a in fx[x] for b in fx[y])
    assert len(gc.edges) == 3 * 4


@given(graphs(max_n=7))
def test_gc_matches_definition(g):
    gc = build_gc(g)
    assert gc.edges == oracles.gc_edges(oracles.adj_of(g))
    assert gc.edges <= g.edges
    for a, b in gc.sorted_edges():
        assert classify_vertex_pair(g, a, b) is VertexRelation.STRICTLY_NOT_STRONGLY_ADJACENT


# --- side partitions ------------------------------------------------------------------


def test_side_partition_examples():
    p = side_partition(cycle_graph("12345"), "1")
    assert (p.i_set, p.l_set, p.r_set) == (frozenset("34"), frozenset(), frozenset("34"))
    p = side_partition(path_graph("abc"), "a")
    assert (p.i_set, p.l_set, p.r_set) == (frozenset("bc"), frozenset(), frozenset("bc"))
    with pytest.raises(UnknownVertex):
        side_partition(cycle_graph("12345"), "9")


def test_full_gc_neighborhood_gives_empty_sides():
    # a vertex crossing every other chord would be dominating, hence nested with
    # everyone; only the one-vertex graph realizes an empty I_u
    p = side_partition(Graph.from_edges("a"), "a")
    assert p.i_set == p.l_set == p.r_set == frozenset()


@given(graphs(min_n=2, max_n=7))
def test_no_vertex_crosses_all_others(g):
    gc = build_gc(g)
    assert all(len(gc.neighbors(v)) < len(g) - 1 for v in g)


def test_partition_gap_is_surfaced():
    # twins fall on both sides: u's true twin v has N(v) = N(u)
    g = Graph.from_edges("uvw", [("u", "v"), ("u", "w"), ("v", "w")])
    part = side_partition(g, "u", strict=False)
    assert part.gaps
    with pytest.raises(PartitionGap):
        side_partition(g, "u")


@given(admissible_models())
def test_sides_partition_i_set(m):
    g = intersection_graph(m)
    gc = build_gc(g)
    for u, p in side_partitions(g).items():
        assert p.i_set == frozenset(g.vertices) - gc.neighbors(u) - {u}
        assert p.l_set | p.r_set == p.i_set
        assert not p.l_set & p.r_set


# --- conformality ---------------------------------------------------------------------


def test_ce1_chord_model_is_conformal():
    fx = fixture_ce1()
    assert is_conformal(to_chord_model(fx.model), fx.graph)


def test_two_isolated_chords_are_conformal():
    assert is_conformal(parse_chord_model("a a b b"), Graph.from_edges("ab"))


def test_ce1_gc_has_non_conformal_chord_models():
    fx = fixture_ce1()
    models = enumerate_chord_models(build_gc(fx.graph)).models
    verdicts = [is_conformal(d, fx.graph) for d in models]
    assert any(verdicts) and not all(verdicts)


def test_conformal_needs_matching_model():
    with pytest.raises(ModelMismatch):
        conformality_violations(parse_chord_model("a b a b"), Graph.from_edges("ab"))
    with pytest.raises(ModelMismatch):
        conformality_violations(parse_chord_model("a a b b"), Graph.from_edges("abc"))


@given(admissible_models())
def test_normalized_models_are_conformal(m):
    g = intersection_graph(m)
    assert is_conformal(to_chord_model(normalize(m, g)), g)


# --- consistency ----------------------------------------------------------------------


def test_consistency_examples():
    w = is_module_consistent(parse_chord_model("a b a b c c"), {"c"})
    assert w is not None and w.module == {"c"}
    # a b | a b: each run of two holds one endpoint of a and one of b
    w = is_module_consistent(parse_chord_model("a b a b"), {"a", "b"})
    assert w is not None
    assert {w.arc_a, w.arc_b} in ({(0, 1), (2, 3)}, {(1, 2), (3, 0)})
    assert is_module_consistent(parse_chord_model("a a b b"), {"a", "b"}) is not None
    assert is_module_consistent(parse_chord_model("a a c b b c"), {"a", "b"}) is None
    with pytest.raises(UnknownVertex):
        is_module_consistent(parse_chord_model("a a"), {"z"})


def test_ce1_end_modules_are_inconsistent():
    fx = fixture_ce1()
    d = to_chord_model(fx.model)
    for name in ("M1", "M4"):
        assert is_module_consistent(d, fx[name]) is None
        assert is_module_consistent(ChordModel(reflect(d.word)), fx[name]) is None


def _run_scan(word, module):
    """Every way to cut the circle into two runs of |module| tokens holding one end of each chord."""
    L, k = len(word), len(module)
    hits = []
    for s in range(L):
        for t in range(L):
            a = [word[(s + i) % L] for i in range(k)]
            b = [word[(t + i) % L] for i in range(k)]
            pa = {(s + i) % L for i in range(k)}
            pb = {(t + i) % L for i in range(k)}
            if pa & pb:
                continue
            if set(a) == set(b) == set(module) and len(set(a)) == k:
                hits.append((s, t))
    return hits


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.permutations([str(i) for i in range(n) for _ in (0, 1)]),
    st.sets(st.sampled_from([str(i) for i in range(n)]), min_size=1),
)))
def test_consistency_matches_run_scan(case):
    word, module = case
    d = ChordModel(word)
    w = is_module_consistent(d, module)
    assert (w is not None) == bool(_run_scan(word, module))
    for k in (1, 3):
        assert (is_module_consistent(ChordModel(rotate(word, k)), module) is None) == (w is None)
    assert (is_module_consistent(ChordModel(reflect(word)), module) is None) == (w is None)


# --- oracle equivalence ---------------------------------------------------------------


def test_equivalence_examples():
    assert conformal_equivalence_check(cycle_graph("12345"))
    assert conformal_equivalence_check(fixture_ce1().graph, arc_cap=8)
    # a lone vertex dominates its graph, so the admissibility precondition rejects it
    with pytest.raises(PreconditionError):
        conformal_equivalence_check(Graph.from_edges("a"))


@settings(max_examples=25)
@given(admissible_models(max_n=6))
def test_equivalence_on_sampled_graphs(m):
    assert conformal_equivalence_check(intersection_graph(m))


def test_no_consistent_partition_for_series_components():
    # no definition exists to implement, so the toolkit must not pretend to have one
    public = {
        n for n in set(dir(arckit.conformal)) | set(dir(arckit.decomposition))
        if not n.startswith("_") and ("partition" in n.lower() or "consist" in n.lower())
    }
    assert public == {
        "ConsistencyWitness", "PartitionGap", "SidePartition",
        "is_module_consistent", "side_partition", "side_partitions",
    }
