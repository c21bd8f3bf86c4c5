import math
import random

import pytest
from hypothesis import given, strategies as st

from dynedcs import sparsifier
from dynedcs.graph import DynamicGraph, edge
from dynedcs.oracle import max_matching_size, verify_sparsifier_ratio
from dynedcs.sparsifier import (Sparsifier, SparsifierConfig, eta_adaptive, eta_fixed,
                                sparsifier_degree_cap)
from dynedcs.streams import generate_stream


def fixed(n, eta):
    return Sparsifier(n, SparsifierConfig(0.25, eta=eta))


def check_structure(s, g):
    for x in range(s.n):
        assert set(s.lm[x]) | set(s.lu[x]) == set(g.adj[x])
        assert not set(s.lm[x]) & set(s.lu[x])
        if not s.restarting:
            assert len(s.lm[x]) <= s.eta
            assert len(s.lm[x]) == min(s.eta, g.degree(x))
    want = {e for e in g.edges() if s.marked(*e) and s.marked(e[1], e[0])}
    assert s.gprime.edge_set() == want
    assert s.gprime.max_degree() <= s.degree_cap()


def test_eta_formulas():
    assert eta_fixed(0.5, 1) == 110
    assert eta_fixed(0.5, 2) == 220
    assert eta_adaptive(0.5, 100) == 2200
    s = Sparsifier(4, SparsifierConfig(0.25, alpha=1))
    assert s.eta == eta_fixed(0.25, 1) == 210 and sparsifier_degree_cap(s) == 210


def test_config_validation():
    for kw in ({"eps": 0.5}, {"eps": 0.0}, {"eps": 0.2, "alpha": 0},
               {"eps": 0.2, "steps_per_update": 2}, {"eps": 0.2, "eta": 0}):
        with pytest.raises(ValueError):
            SparsifierConfig(**kw)
    assert SparsifierConfig(0.2).adaptive and not SparsifierConfig(0.2, alpha=3).adaptive


def test_insert_double_mark():
    s = fixed(3, 1)
    assert s.insert(0, 1).added == [(0, 1)]
    # 0 is saturated, 2 is not: single-sided mark.
    cs = s.insert(0, 2)
    assert len(cs) == 0 and s.marked(2, 0) and not s.marked(0, 2)


def test_star_with_eta_two():
    s = fixed(6, 2)
    for leaf in range(1, 6):
        assert len(s.insert(0, leaf)) <= 1
    assert s.gprime.edge_set() == {(0, 1), (0, 2)}
    assert list(s.lu[0]) == [3, 4, 5]


def test_delete_recourse_three():
    # (0,1) is in G'; 0 and 1 each keep a spare that the far end already marks.
    s = fixed(4, 1)
    s.insert(0, 1)
    s.insert(0, 2)
    s.insert(1, 3)
    assert s.gprime.edge_set() == {(0, 1)}
    cs = s.delete(0, 1)
    assert cs.removed == [(0, 1)] and sorted(cs.added) == [(0, 2), (1, 3)] and len(cs) == 3


def test_delete_without_spares():
    s = fixed(2, 1)
    s.insert(0, 1)
    cs = s.delete(0, 1)
    assert cs.removed == [(0, 1)] and len(cs) == 1
    assert s.non_isolated() == []


def test_delete_unmarked_both_sides():
    s = fixed(4, 1)
    s.insert(0, 1)
    s.insert(2, 3)
    s.insert(0, 2)
    assert not s.marked(0, 2) and not s.marked(2, 0)
    assert len(s.delete(0, 2)) == 0


def test_no_restart_without_crossing():
    s = Sparsifier(10, SparsifierConfig(0.25))
    for v in range(1, 11 - 1):
        s.insert(0, v)
        s.restart_tick()
    while s.restarting:
        s.restart_tick()
    restarts = s.restarts
    # m toggles between 9 and 10, well inside (m_R / 2, 2 m_R) with m_R = 8.
    assert s.m_r == 8
    for _ in range(50):
        s.insert(2, 3)
        s.restart_tick()
        s.delete(2, 3)
        s.restart_tick()
    assert s.restarts == restarts and not s.restarting


def grow_and_shrink(n, top, bottom, seed):
    rng = random.Random(seed)
    live = []
    present = set()
    while len(live) < top:
        u, v = rng.sample(range(n), 2)
        e = edge(u, v)
        if e not in present:
            present.add(e)
            live.append(e)
            yield True, e
    rng.shuffle(live)
    while len(live) > bottom:
        yield False, live.pop()


def test_restart_finishes_before_next_boundary():
    # Small eps keeps eta far above every degree, so only m drives restarts.
    s = Sparsifier(40, SparsifierConfig(0.45, steps_per_update=8))
    g = DynamicGraph(40)
    restart_at = None
    for ins, e in grow_and_shrink(40, 300, 20, 1):
        (g.insert_edge if ins else g.delete_edge)(*e)
        (s.insert if ins else s.delete)(*e)
        s.restart_tick()
        if s.restarting and restart_at is None:
            restart_at = s.m_r
        if restart_at is not None and not s.restarting:
            restart_at = None
        if restart_at is not None:
            assert restart_at / 2 < s.m < 2 * restart_at
        check_structure(s, g)
        assert s.last_ops <= 6 + s.config.steps_per_update
    assert s.restarts >= 6


def test_restart_64_to_128():
    n = 60
    s = Sparsifier(n, SparsifierConfig(0.45, steps_per_update=8))
    g = DynamicGraph(n)
    stream = grow_and_shrink(n, 256, 256, 4)
    for ins, e in stream:
        g.insert_edge(*e)
        s.insert(*e)
        s.restart_tick()
        if s.m == 128:
            break
    assert s.m_r == 128 and s.restarting
    steps = 0
    for ins, e in stream:
        g.insert_edge(*e)
        s.insert(*e)
        s.restart_tick()
        steps += 1
        if not s.restarting:
            break
    assert not s.restarting and s.m < 256
    # Frozen by simulation: a scan over ~n vertices at c - 1 = 7 units per update.
    assert steps <= math.ceil(2 * s.m / 7)
    check_structure(s, g)


def test_restart_degree_within_old_and_new_eta(monkeypatch):
    # Shrink the cutoff formula so that degrees really hit it mid-restart.
    monkeypatch.setattr(sparsifier, "eta_adaptive", lambda eps, m: math.ceil(math.sqrt(m)))
    n = 30
    s = Sparsifier(n, SparsifierConfig(0.45, steps_per_update=3))
    g = DynamicGraph(n)
    saturated = 0
    for ins, e in grow_and_shrink(n, 300, 10, 2):
        (g.insert_edge if ins else g.delete_edge)(*e)
        (s.insert if ins else s.delete)(*e)
        s.restart_tick()
        assert s.gprime.max_degree() <= s.degree_cap()
        if s.restarting:
            assert s.degree_cap() == max(s.eta, s.prev_eta)
        saturated += any(len(s.lm[x]) == s.eta for x in range(n))
        check_structure(s, g)
    assert s.restarts >= 8 and saturated > 100


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)).filter(lambda e: e[0] != e[1]),
                max_size=120),
       st.integers(1, 3))
def test_structure_property(pairs, eta):
    s = fixed(10, eta)
    g = DynamicGraph(10)
    for u, v in pairs:
        if g.has_edge(u, v):
            g.delete_edge(u, v)
            assert len(s.delete(u, v)) <= 3
        else:
            g.insert_edge(u, v)
            assert len(s.insert(u, v)) <= 1
        check_structure(s, g)
        for a, b in s.gprime.edges():
            assert s.gprime.has_edge(b, a)


def test_ratio_on_forest_streams():
    eps = 0.25
    s = Sparsifier(14, SparsifierConfig(eps, alpha=2))
    g = DynamicGraph(14)
    for ev in generate_stream("bounded-outdegree", 14, 800, 9, k=1):
        u, v = ev.edge
        if ev.kind.value == "+":
            g.insert_edge(u, v)
            s.insert(u, v)
        else:
            g.delete_edge(u, v)
            s.delete(u, v)
        mu_g, mu_s, ok = verify_sparsifier_ratio(g.edges(), s.gprime.edges(), eps)
        assert ok and s.gprime.max_degree() <= s.eta


def test_small_eta_can_lose_matching():
    # A star plus pendant edges: with eta=1 the centre keeps one edge only.
    s = fixed(7, 1)
    g = [(0, 1), (0, 2), (2, 3), (1, 4)]
    for e in g:
        s.insert(*e)
    assert max_matching_size(s.gprime.edges()) <= max_matching_size(g)
