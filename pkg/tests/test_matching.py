import random

from hypothesis import given, strategies as st

from dynedcs.edcs import EdcsMaintainer, EdcsParams
from dynedcs.graph import ChangeSet, DynamicGraph
from dynedcs.matching import MatchingLayer, static_max_matching
from dynedcs.oracle import is_matching, max_matching_blossom, max_matching_bruteforce


def changes(*ops):
    cs = ChangeSet()
    for sign, u, v in ops:
        (cs.add if sign == "+" else cs.remove)(u, v)
    return cs


def test_kernel_examples():
    m = static_max_matching([(0, 1), (1, 2), (2, 3)])
    assert m.size == 2 and m.edges() == [(0, 1), (2, 3)]
    assert static_max_matching([(i, (i + 1) % 5) for i in range(5)]).size == 2


def test_kernel_random_vs_bruteforce():
    rng = random.Random(11)
    pairs = [(u, v) for u in range(14) for v in range(u + 1, 14)]
    for _ in range(200):
        es = rng.sample(pairs, rng.randint(0, 26))
        assert static_max_matching(es).size == max_matching_bruteforce(es)


def test_empty_changeset():
    ml = MatchingLayer(4, 0.5, 4)
    ml.apply_changeset(changes(("+", 0, 1)))
    ml.finish_rebuild()
    state = (list(ml.mate), ml.size)
    ml.apply_changeset(ChangeSet())
    assert (list(ml.mate), ml.size) == state


def test_matched_edge_removal():
    ml = MatchingLayer(4, 0.5, 4)
    ml.apply_changeset(changes(("+", 0, 1), ("+", 2, 3)))
    ml.finish_rebuild()
    assert ml.size == 2
    ml.apply_changeset(changes(("-", 0, 1)))
    assert ml.size == 1 and ml.mate_of(0) is None and ml.mate_of(1) is None


def test_first_rebuild_is_immediate():
    ml = MatchingLayer(6, 0.5, 4)
    ml.apply_changeset(changes(("+", 0, 1), ("+", 1, 2), ("+", 2, 3)))
    assert not ml.rebuilding and ml.size == 2 and ml.rebuilds == 1


def test_rebuild_survives_mid_flight_deletions():
    ml = MatchingLayer(8, 0.5, 2, work_constant=0.01)
    assert ml.slice == 1
    ml.apply_changeset(changes(*[("+", i, i + 1) for i in range(7)]))
    assert ml.rebuilding
    ml.apply_changeset(changes(("-", 2, 3), ("-", 4, 5)))
    ml.finish_rebuild()
    assert is_matching(ml.edges(), ml.h_edges())
    assert ml.size == len(ml.edges())


def drive(n, beta, gap, eps, steps, seed, density):
    rng = random.Random(seed)
    g = DynamicGraph(n)
    edcs = EdcsMaintainer(g, EdcsParams(beta, gap))
    ml = MatchingLayer(n, eps, beta)
    live = []
    for _ in range(steps):
        if live and rng.random() < len(live) / (2 * density):
            e = live.pop(rng.randrange(len(live)))
            cs = edcs.delete_edge(*e)
        else:
            u, v = rng.sample(range(n), 2)
            if g.has_edge(u, v):
                continue
            live.append((min(u, v), max(u, v)))
            cs = edcs.insert_edge(u, v)
        ml.apply_changeset(cs)
        yield edcs, ml, cs


def test_validity_and_drift():
    for edcs, ml, cs in drive(40, 8, 0.25, 0.5, 3000, 2, 120):
        h = edcs.h_edges()
        assert sorted(h) == sorted(ml.h_edges())
        assert is_matching(ml.edges(), h) and ml.size == len(ml.edges())
        mu_h = max_matching_blossom(h).size
        assert ml.size >= ml.base_size - ml.changes_since
        assert mu_h <= ml.base_size + ml.changes_since


def test_approximation_within_threshold():
    eps = 0.5
    checked = 0
    for edcs, ml, cs in drive(14, 4, 0.25, eps, 3000, 5, 20):
        if ml.changes_since <= ml.threshold and not ml.rebuilding:
            mu_h = max_matching_bruteforce(edcs.h_edges())
            assert ml.size * (1 + eps) >= mu_h
            checked += 1
    assert checked > 1000


def test_work_per_change():
    worst = 0
    for edcs, ml, cs in drive(60, 10, 0.2, 0.5, 3000, 8, 200):
        if len(cs):
            worst = max(worst, ml.last_ops / len(cs))
    # Slice, copy-on-write freezes of two bounded-degree vertices per change,
    # and installing a finished rebuild (one entry per re-mated vertex).
    assert worst <= ml.slice + 2 * (10 + 1) + 60


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda e: e[0] != e[1]),
                max_size=80),
       st.floats(0.001, 1.0))
def test_random_changesets(pairs, wc):
    ml = MatchingLayer(8, 0.5, 2, work_constant=wc)
    h = set()
    for u, v in pairs:
        e = (min(u, v), max(u, v))
        if e in h:
            h.discard(e)
            ml.apply_changeset(changes(("-", u, v)))
        else:
            h.add(e)
            ml.apply_changeset(changes(("+", u, v)))
        assert set(ml.h_edges()) == h
        assert is_matching(ml.edges(), h) and ml.size == len(ml.edges())
        assert ml.size >= ml.base_size - ml.changes_since
    ml.finish_rebuild()
    assert ml.size >= max_matching_blossom(sorted(h)).size - ml.changes_since
