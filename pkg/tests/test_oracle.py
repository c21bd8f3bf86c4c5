import itertools
import random

import pytest
from hypothesis import given, strategies as st

from dynedcs.oracle import (TooLarge, arboricity_lower_density, is_matching,
                            max_matching_blossom, max_matching_bruteforce,
                            max_matching_size, verify_edcs, verify_sparsifier_ratio)


def cycle(k):
    return [(i, (i + 1) % k) for i in range(k)]


def complete(k):
    return list(itertools.combinations(range(k), 2))


PETERSEN = cycle(5) + [(5 + i, 5 + (i + 2) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]


def test_small_cases():
    assert max_matching_bruteforce([(0, 1), (1, 2), (0, 2)]) == 1
    assert max_matching_bruteforce([(0, 1), (2, 3), (4, 5)]) == 3
    assert max_matching_blossom(cycle(7)).size == 3
    assert max_matching_blossom(complete(6)).size == 3
    assert max_matching_bruteforce([]) == 0 and max_matching_blossom([]).size == 0


def test_petersen():
    # Frozen from the brute-force search; the blossom result must agree.
    assert max_matching_bruteforce(PETERSEN) == 5
    m = max_matching_blossom(PETERSEN)
    assert m.size == 5 and is_matching(m.edges(), PETERSEN)


def test_bruteforce_cap():
    with pytest.raises(TooLarge):
        max_matching_bruteforce(complete(8))


def test_blossom_needs_contraction():
    # Augmenting path from 5 to 6 runs through the odd cycle 0..4.
    edges = cycle(5) + [(0, 5), (2, 6)]
    edges2 = cycle(5) + [(1, 5), (3, 6), (5, 7)]
    assert max_matching_blossom(edges).size == 3 == max_matching_bruteforce(edges)
    assert max_matching_blossom(edges2).size == max_matching_bruteforce(edges2)


small_graphs = st.integers(2, 10).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                       .filter(lambda e: e[0] != e[1]), max_size=26))


@given(small_graphs)
def test_blossom_matches_bruteforce(edges):
    m = max_matching_blossom(edges)
    assert is_matching(m.edges(), edges)
    assert m.size == max_matching_bruteforce(edges) == max_matching_size(edges)


def test_blossom_matches_bruteforce_random_batch():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(4, 14)
        es = rng.sample(complete(n), min(rng.randint(0, 26), n * (n - 1) // 2))
        assert max_matching_blossom(es).size == max_matching_bruteforce(es)


def test_is_matching():
    assert is_matching([(0, 1), (2, 3)])
    assert not is_matching([(0, 1), (1, 2)])
    assert not is_matching([(0, 1)], within=[(1, 2)])


def test_verify_edcs_examples():
    assert verify_edcs([(0, 1)], [(0, 1)], 2, 0).ok
    g = complete(4)
    rep = verify_edcs(g, [], 4, 1)
    assert len(rep.violations_p2) == len(g) and not rep.violations_p1
    assert verify_edcs(g, [], 4, 0).ok
    with pytest.raises(ValueError):
        verify_edcs([(0, 1)], [(1, 2)], 4, 1)


def test_verify_edcs_p1():
    rep = verify_edcs(complete(4), complete(4), 5, 0)
    assert len(rep.violations_p1) == 6 and rep.max_weight_in_h == 6


def test_sparsifier_ratio_examples():
    star = [(0, i) for i in range(1, 10)]
    assert verify_sparsifier_ratio(star, star[:1], 0.1) == (1, 1, True)
    g = cycle(6)
    assert verify_sparsifier_ratio(g, g, 0.01)[2]
    assert not verify_sparsifier_ratio(g, [(0, 1)], 0.5)[2]


def test_arboricity():
    assert arboricity_lower_density(cycle(6)) == 2
    assert arboricity_lower_density([(0, i) for i in range(1, 8)]) == 1
    assert arboricity_lower_density(complete(5)) == 3
