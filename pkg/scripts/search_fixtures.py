"""Rebuild the shipped fixture files by computer search.

    python scripts/search_fixtures.py [--out DIR] [--seed N]

Four searches, each fast and deterministic:

gs       C6 arcs s1..s6 plus one arc s, placed every possible way; keep the
         first placement that is normalized and makes s strictly-not-strongly
         adjacent to two opposite cycle vertices.
claim_a  three copies of gs on the heads of arcs s, v, u of a six-token host
         word: each copy keeps its own head of s and the tail is stretched to
         the host tail.  Keep the first splice whose G_c is prime with s a cut
         vertex.
claim_b  random host words on 4..7 arcs with the gs gadget spliced onto some
         heads; keep the first one whose G_c is prime and has a join with a
         vertex x in V0 seeing exactly V1 and a vertex y in V3 seeing exactly V2.
ce1      every chord model of P4[2K1, 2K1, 2K1, 2K1] with both end modules
         inconsistent, oriented every way; keep the first orientation that is a
         normalized model whose graph has one normalized model up to reflection.
"""

from __future__ import annotations

import argparse
import itertools
import random
from dataclasses import dataclass
from pathlib import Path

from arckit.arcs import (
    CircularArcModel,
    ChordModel,
    canonical_rotation,
    check_normalized,
    intersection_graph,
    normalize,
)
from arckit.claims import Fixture, format_fixture
from arckit.conformal import build_gc, is_module_consistent
from arckit.decomposition import is_s_inseparable, join_from_split
from arckit.enumeration import enumerate_chord_models, enumerate_normalized_models, is_admissible
from arckit.graph import (
    Graph,
    cycle_graph,
    induced_subgraph,
    is_connected,
    remove_vertices,
    sort_vertices,
)


@dataclass
class SearchConfig:
    out: Path = Path(__file__).resolve().parents[1] / "src" / "arckit" / "fixtures"
    seed: int = 1
    host_arcs: tuple[int, int] = (4, 7)
    gadget_rate: float = 0.5
    max_tries: int = 200_000


RING = [f"s{i}" for i in range(1, 7)]


def search_gs() -> CircularArcModel:
    base = []
    for i in range(1, 7):
        base += [(f"s{i}", 0), (f"s{(i - 2) % 6 + 1}", 1)]
    seen = []
    for a in range(len(base) + 1):
        for b in range(len(base) + 2):
            w = list(base)
            w.insert(a, ("s", 0))
            w.insert(b, ("s", 1))
            m = canonical_rotation(CircularArcModel(tuple(w)))
            if m in seen:
                continue
            seen.append(m)
            g = intersection_graph(m)
            if not is_admissible(g) or check_normalized(m, g):
                continue
            if induced_subgraph(g, RING) != cycle_graph(RING):
                continue
            if len(build_gc(g).neighbors("s")) == 2:
                return m
    raise RuntimeError("no G^s candidate")


def _gadget(gs: CircularArcModel) -> list:
    """The gs word cut open at the tail of s, which is dropped."""
    w = list(gs.word)
    k = w.index(("s", 1))
    return w[k + 1:] + w[:k]


def _copy(block: list, name: str, sep: str = "") -> list:
    return [(name if t == "s" else name + sep + t[1:], e) for t, e in block]


def _splice(host, block, gadgets, sep="") -> CircularArcModel:
    out = []
    for tok in host:
        if tok[1] == 0 and tok[0] in gadgets:
            out += _copy(block, tok[0], sep)
        else:
            out.append(tok)
    return CircularArcModel(tuple(out))


def search_claim_a(gs: CircularArcModel) -> Fixture:
    block = _gadget(gs)
    toks = [("s", 0), ("s", 1), ("v", 0), ("v", 1), ("u", 0), ("u", 1)]
    for host in sorted(p for p in itertools.permutations(toks) if p[0] == ("s", 0)):
        m = _splice(host, block, {"s", "v", "u"})
        g = intersection_graph(m)
        if not is_admissible(g) or check_normalized(m, g):
            continue
        gc = build_gc(g)
        if is_connected(remove_vertices(gc, ["s"])) or not is_s_inseparable(gc):
            continue
        side_a = ["s"] + RING
        j = join_from_split(gc, side_a)
        if j is None or j.v1 != {"s"}:
            continue
        ann = {"V0": j.v0, "V1": j.v1, "V2": j.v2, "V3": j.v3, "s": frozenset({"s"})}
        return Fixture("claim_a", g, m, ann)
    raise RuntimeError("no claim A splice")


def _twin_join(gc: Graph):
    adj = gc.adjacency
    for x in gc.vertices:
        for y in gc.vertices:
            if x == y or y in adj[x]:
                continue
            v1, v2 = adj[x], adj[y]
            if len(v1) < 2 or len(v2) < 2 or v1 & v2:
                continue
            if any(b not in adj[a] for a in v1 for b in v2):
                continue
            if any(v1 - {a} <= adj[a] for a in v1) or any(v2 - {b} <= adj[b] for b in v2):
                continue
            # side of x once the V1-V2 edges are cut
            comp, stack = {x}, [x]
            while stack:
                a = stack.pop()
                for b in adj[a]:
                    crossing = (a in v1 and b in v2) or (a in v2 and b in v1)
                    if not crossing and b not in comp:
                        comp.add(b)
                        stack.append(b)
            if y in comp:
                continue
            j = join_from_split(gc, comp)
            if j is not None and j.v1 == v1 and j.v2 == v2:
                return x, y, j
    return None


def search_claim_b(gs: CircularArcModel, cfg: SearchConfig) -> Fixture:
    block = _gadget(gs)
    rng = random.Random(cfg.seed)
    for _ in range(cfg.max_tries):
        k = rng.randint(*cfg.host_arcs)
        big = [chr(ord("a") + i) for i in range(k)]
        host = [(v, e) for v in big for e in (0, 1)]
        rng.shuffle(host)
        gadgets = {v for v in big if rng.random() < cfg.gadget_rate}
        m = _splice(host, block, gadgets, sep="_")
        g = intersection_graph(m)
        if not is_admissible(g):
            continue
        gc = build_gc(g)
        if not is_connected(gc) or not is_s_inseparable(gc):
            continue
        found = _twin_join(gc)
        if found is None:
            continue
        x, y, j = found
        return _rename_claim_b(g, normalize(m, g), x, y, j)
    raise RuntimeError("no claim B instance")


def _rename_claim_b(g, m, x, y, j) -> Fixture:
    names = {}
    a_side = sort_vertices(j.v1) + [x] + sort_vertices(j.v0 - {x})
    b_side = sort_vertices(j.v2) + [y] + sort_vertices(j.v3 - {y})
    for i, v in enumerate(a_side, start=1):
        names[v] = f"u{i}"
    for i, v in enumerate(b_side, start=1):
        names[v] = f"v{i}"
    g2 = Graph.from_edges([names[v] for v in g.vertices], [(names[a], names[b]) for a, b in g.sorted_edges()])
    m2 = CircularArcModel(tuple((names[v], e) for v, e in m.word))
    ann = {
        key: frozenset(names[v] for v in part)
        for key, part in zip(("V0", "V1", "V2", "V3"), j.parts)
    }
    ann["u3"] = frozenset({names[x]})
    ann["v3"] = frozenset({names[y]})
    return Fixture("claim_b", g2, m2, ann)


def search_ce1() -> Fixture:
    groups = {f"M{i}": [f"{c}1", f"{c}2"] for i, c in enumerate("abcd", start=1)}
    order = list(groups)
    edges = [
        (p, q) for x, y in zip(order, order[1:]) for p in groups[x] for q in groups[y]
    ]
    gc = Graph.from_edges([v for k in order for v in groups[k]], edges)
    for d in enumerate_chord_models(gc, cap=None).models:
        if is_module_consistent(d, groups["M1"]) or is_module_consistent(d, groups["M4"]):
            continue
        for m in _orientations(d):
            g = intersection_graph(m)
            if not is_admissible(g) or check_normalized(m, g) or build_gc(g) != gc:
                continue
            res = enumerate_normalized_models(g, cap=None)
            if res.classes == 1:
                ann = {k: frozenset(v) for k, v in groups.items()}
                return Fixture("ce1", g, m, ann)
    raise RuntimeError("no CE1 instance")


def _orientations(d: ChordModel):
    vs = d.vertices
    for bits in itertools.product((0, 1), repeat=len(vs)):
        seen: dict[str, int] = {}
        word = []
        for t in d.word:
            k = seen.get(t, 0)
            seen[t] = k + 1
            word.append((t, k if bits[vs.index(t)] == 0 else 1 - k))
        yield CircularArcModel(tuple(word))


NOTES = {
    "gs": "Seven-vertex building block: arcs s1..s6 form a 6-cycle, s overlaps two\n"
    "opposite cycle arcs strictly.",
    "claim_a": "Three copies of gs spliced onto the heads of the pairwise overlapping arcs\n"
    "s, v, u.  G_c is prime, s is a cut vertex of G_c.",
    "claim_b": "Prime G_c with join V1 = {u1, u2}, V2 = {v1, v2}; u3 sees exactly V1 and\n"
    "v3 sees exactly V2, so each is a twin of the marker on its side.",
    "ce1": "Four pairwise independent modules M1..M4 arranged as a path in G_c.\n"
    "The model below and its mirror image are the only normalized models,\n"
    "and in both of them the chords of M1 and of M4 interleave.",
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=SearchConfig.out)
    ap.add_argument("--seed", type=int, default=SearchConfig.seed)
    args = ap.parse_args(argv)
    cfg = SearchConfig(out=args.out, seed=args.seed)
    cfg.out.mkdir(parents=True, exist_ok=True)

    gs = search_gs()
    gs_g = intersection_graph(gs)
    fixtures = [
        Fixture("gs", gs_g, gs, {"s": frozenset({"s"})}),
        search_claim_a(gs),
        search_claim_b(gs, cfg),
        search_ce1(),
    ]
    for fx in fixtures:
        path = cfg.out / f"{fx.name}.fixture"
        path.write_text(format_fixture(fx, NOTES[fx.name]))
        print(f"wrote {path} ({len(fx.graph)} vertices)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
