import pytest
from hypothesis import given, strategies as st

from dynedcs.graph import DynamicGraph, Kind
from dynedcs.oracle import arboricity_lower_density
from dynedcs.streams import KINDS, InvalidParams, generate_stream


def replay(n, events):
    g = DynamicGraph(n)
    for ev in events:
        g.apply(ev)
        yield g


def test_zero_steps():
    assert generate_stream("uniform", 10, 0, 1) == []


@pytest.mark.parametrize("kind", KINDS)
def test_deterministic_and_valid(kind):
    a = generate_stream(kind, 30, 2000, 7)
    assert a == generate_stream(kind, 30, 2000, 7)
    assert a != generate_stream(kind, 30, 2000, 8)
    for _ in replay(30, a):
        pass


def test_uniform_caps():
    for g in replay(14, generate_stream("uniform", 14, 3000, 1, target_m=20, max_m=26)):
        assert g.m <= 26


@given(st.integers(0, 10_000), st.integers(1, 30))
def test_sliding_window(seed, w):
    events = generate_stream("sliding-window", 12, 300, seed, w=w)
    inserted = []
    for ev, g in zip(events, replay(12, events)):
        if ev.kind is Kind.INSERT:
            inserted.append(ev.edge)
        live = g.edge_set()
        assert len(live) <= w
        # Live edges are exactly the most recent insertions, oldest dropped first.
        assert live == set(inserted[len(inserted) - len(live):])


@given(st.integers(0, 10_000))
def test_bounded_outdegree_arboricity(seed):
    for g in replay(10, generate_stream("bounded-outdegree", 10, 120, seed, k=1)):
        if g.m:
            assert arboricity_lower_density(list(g.edges())) <= 2


def test_bounded_outdegree_density():
    for g in replay(40, generate_stream("bounded-outdegree", 40, 3000, 3, k=2)):
        assert g.m <= 2 * 40


def test_star_adversary_hub():
    events = generate_stream("star-adversary", 50, 4000, 2)
    peak = max(g.degree(0) for g in replay(50, events))
    assert peak == 49


def test_invalid_params():
    with pytest.raises(InvalidParams):
        generate_stream("zipf", 10, 5, 0)
    with pytest.raises(InvalidParams):
        generate_stream("uniform", 1, 5, 0)
    with pytest.raises(InvalidParams):
        generate_stream("uniform", 10, -1, 0)
    with pytest.raises(InvalidParams):
        generate_stream("sliding-window", 4, 5, 0, w=6)
    with pytest.raises(InvalidParams):
        generate_stream("bounded-outdegree", 10, 5, 0, k=0)
    with pytest.raises(InvalidParams):
        generate_stream("uniform", 10, 5, 0, colour=3)
