import os
import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, reject, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from arckit.arcs import CircularArcModel, intersection_graph  # noqa: E402
from arckit.enumeration import is_admissible, random_arc_model  # noqa: E402
from arckit.graph import Graph  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def arc_words(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    toks = [(str(i), e) for i in range(1, n + 1) for e in (0, 1)]
    return tuple(draw(st.permutations(toks)))


@st.composite
def arc_models(draw, min_n=1, max_n=7):
    return CircularArcModel(draw(arc_words(min_n, max_n)))


@st.composite
def admissible_models(draw, min_n=4, max_n=7):
    """Arc models whose intersection graph has no twins and no dominating vertex."""
    # rejection sampling inside one draw; hypothesis-level filtering is far too slow here
    n = draw(st.integers(min_n, max_n))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    for _ in range(10_000):
        m = random_arc_model(n, rng)
        if is_admissible(intersection_graph(m)):
            return m
    reject()


@st.composite
def chord_words(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    return tuple(draw(st.permutations([str(i) for i in range(1, n + 1) for _ in (0, 1)])))


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    vs = [f"v{i}" for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(vs, [p for p, keep in zip(pairs, picks) if keep])


def make_graph(spec: str) -> Graph:
    """``"a-b b-c d"``: edges as ``x-y``, lone tokens are isolated vertices."""
    vs, edges = [], []
    for tok in spec.split():
        if "-" in tok:
            a, b = tok.split("-")
            edges.append((a, b))
            vs += [a, b]
        else:
            vs.append(tok)
    return Graph.from_edges(sorted(set(vs)), edges)


@pytest.fixture
def p4():
    return make_graph("a-b b-c c-d")


@pytest.fixture
def c5():
    return make_graph("1-2 2-3 3-4 4-5 5-1")
