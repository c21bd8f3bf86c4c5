"""Ground-truth computations on plain edge lists.

Nothing here depends on the dynamic layers: exact maximum matching by
exhaustive search and by Edmonds' blossom algorithm, EDCS property checking
with true degrees, and the matching-sparsifier ratio check.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, MutableMapping, Optional, Sequence

BRUTE_FORCE_EDGE_CAP = 26
BLOSSOM_VERTEX_CAP = 10_000


class TooLarge(ValueError):
    pass


def _canonical_edges(edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    seen = set()
    out = []
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at {u}")
        e = (u, v) if u < v else (v, u)
        if e not in seen:
            seen.add(e)
            out.append(e)
    return out


def max_matching_bruteforce(edges: Iterable[tuple[int, int]]) -> int:
    """Size of a maximum matching by branch-and-bound over edge inclusion.

    Exponential; refuses inputs with more than ``BRUTE_FORCE_EDGE_CAP`` edges.
    """
    es = _canonical_edges(edges)
    if len(es) > BRUTE_FORCE_EDGE_CAP:
        raise TooLarge(f"{len(es)} edges exceeds brute-force cap {BRUTE_FORCE_EDGE_CAP}")
    vertices = {x for e in es for x in e}
    best = 0
    used: set[int] = set()

    def search(i: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if i == len(es):
            return
        # Neither the remaining edges nor the free vertices can lift us past best.
        if size + len(es) - i <= best or size + (len(vertices) - len(used)) // 2 <= best:
            return
        u, v = es[i]
        if u not in used and v not in used:
            used.add(u)
            used.add(v)
            search(i + 1, size + 1)
            used.discard(u)
            used.discard(v)
        search(i + 1, size)

    search(0, 0)
    return best


def blossom_search(
        vertices: Iterable[int],
        neighbors: Callable[[int], Iterable[int]],
        mate: MutableMapping[int, Optional[int]],
        ) -> Iterator[int]:
    """Grow ``mate`` into a maximum matching, one augmenting path at a time.

    This is a generator: it yields after every unit of work (one adjacency
    entry scanned or one vertex relabelled), so a caller can run it in
    bounded slices. ``mate[x]`` must return ``None`` for free vertices;
    ``mate`` is updated in place and is a maximum matching once the
    generator is exhausted.

    A breadth-first alternating tree is grown from each free vertex in turn,
    contracting odd cycles (blossoms) as they close. A root with no
    augmenting path never gets one later, so each root is searched once.
    Per-search state lives in dicts, so the cost of one search is
    proportional to the part of the graph it explores.
    """
    for root in vertices:
        yield 1
        if mate[root] is not None:
            continue
        found, parent = yield from _augment_from(root, neighbors, mate)
        v = found
        while v is not None:
            pv = parent[v]
            ppv = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = ppv
            yield 1


def _augment_from(root, neighbors, mate):
    parent: dict[int, int] = {}
    base: dict[int, int] = {}
    even = {root}
    tree = [root]
    queue = deque([root])

    def b(x: int) -> int:
        return base.get(x, x)

    def lca(x: int, y: int) -> int:
        seen = set()
        while True:
            x = b(x)
            seen.add(x)
            if mate[x] is None:
                break
            x = parent[mate[x]]
        while True:
            y = b(y)
            if y in seen:
                return y
            y = parent[mate[y]]

    def mark_path(x: int, stem: int, child: int, in_blossom: set[int]) -> None:
        while b(x) != stem:
            in_blossom.add(b(x))
            in_blossom.add(b(mate[x]))
            parent[x] = child
            child = mate[x]
            x = parent[mate[x]]

    while queue:
        v = queue.popleft()
        for to in neighbors(v):
            yield 1
            if b(v) == b(to) or mate[v] == to:
                continue
            if to == root or (mate[to] is not None and mate[to] in parent):
                stem = lca(v, to)
                in_blossom: set[int] = set()
                mark_path(v, stem, to, in_blossom)
                mark_path(to, stem, v, in_blossom)
                for x in tree:
                    yield 1
                    if b(x) in in_blossom:
                        base[x] = stem
                        if x not in even:
                            even.add(x)
                            queue.append(x)
            elif to not in parent:
                parent[to] = v
                tree.append(to)
                if mate[to] is None:
                    return to, parent
                w = mate[to]
                even.add(w)
                tree.append(w)
                queue.append(w)
    return None, parent


@dataclass
class Matching:
    """A matching as a symmetric mate map."""
    mate: dict[int, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.mate) // 2

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, v in self.mate.items() if u < v)

    def __len__(self) -> int:
        return self.size


class _FreeByDefault(dict):
    def __missing__(self, key):
        return None


def max_matching_blossom(edges: Iterable[tuple[int, int]]) -> Matching:
    """Exact maximum matching of a general graph given as an edge list."""
    es = _canonical_edges(edges)
    adj: dict[int, list[int]] = {}
    for u, v in es:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if len(adj) > BLOSSOM_VERTEX_CAP:
        raise TooLarge(f"{len(adj)} vertices exceeds blossom cap {BLOSSOM_VERTEX_CAP}")
    mate = _FreeByDefault()
    # A greedy start leaves fewer roots to search.
    for u, v in es:
        if mate[u] is None and mate[v] is None:
            mate[u] = v
            mate[v] = u
    for _ in blossom_search(sorted(adj), adj.__getitem__, mate):
        pass
    return Matching({k: v for k, v in mate.items() if v is not None})


def max_matching_size(edges: Iterable[tuple[int, int]]) -> int:
    es = _canonical_edges(edges)
    if len(es) <= BRUTE_FORCE_EDGE_CAP:
        return max_matching_bruteforce(es)
    return max_matching_blossom(es).size


def is_matching(edges: Iterable[tuple[int, int]], within: Optional[Iterable[tuple[int, int]]] = None) -> bool:
    es = _canonical_edges(edges)
    counts = Counter(x for e in es for x in e)
    if any(c > 1 for c in counts.values()):
        return False
    if within is not None:
        allowed = set(_canonical_edges(within))
        return all(e in allowed for e in es)
    return True


@dataclass
class EdcsReport:
    bound_hi: float
    bound_lo: float
    violations_p1: list[tuple[int, int]]
    violations_p2: list[tuple[int, int]]
    max_weight_in_h: Optional[int]
    min_weight_outside: Optional[int]

    @property
    def ok(self) -> bool:
        return not self.violations_p1 and not self.violations_p2


def verify_edcs(
        g_edges: Iterable[tuple[int, int]],
        h_edges: Iterable[tuple[int, int]],
        bound_hi: float,
        bound_lo: float,
        ) -> EdcsReport:
    """Check the two EDCS properties with true H-degrees.

    Every edge of H must weigh at most ``bound_hi`` and every edge of G
    outside H at least ``bound_lo``, where an edge weighs the sum of its
    endpoints' H-degrees.
    """
    g = _canonical_edges(g_edges)
    h = set(_canonical_edges(h_edges))
    gset = set(g)
    stray = h - gset
    if stray:
        raise ValueError(f"H is not a subgraph of G: {sorted(stray)[:5]}")
    deg: Counter[int] = Counter(x for e in h for x in e)
    p1, p2 = [], []
    hi_w: Optional[int] = None
    lo_w: Optional[int] = None
    for e in g:
        w = deg[e[0]] + deg[e[1]]
        if e in h:
            hi_w = w if hi_w is None else max(hi_w, w)
            if w > bound_hi:
                p1.append(e)
        else:
            lo_w = w if lo_w is None else min(lo_w, w)
            if w < bound_lo:
                p2.append(e)
    return EdcsReport(bound_hi, bound_lo, p1, p2, hi_w, lo_w)


def verify_sparsifier_ratio(
        g_edges: Iterable[tuple[int, int]],
        sparse_edges: Iterable[tuple[int, int]],
        eps: float,
        ) -> tuple[int, int, bool]:
    """Return ``(mu(G), mu(G'), mu(G) <= (1 + eps) * mu(G'))``."""
    mu_g = max_matching_size(g_edges)
    mu_s = max_matching_size(sparse_edges)
    return mu_g, mu_s, mu_g <= (1 + eps) * mu_s


def arboricity_lower_density(edges: Sequence[tuple[int, int]]) -> int:
    """Exact arboricity of a small graph via Nash-Williams' formula.

    Enumerates all vertex subsets, so only usable for tiny graphs (n <= 16).
    """
    es = _canonical_edges(edges)
    vs = sorted({x for e in es for x in e})
    if len(vs) > 16:
        raise TooLarge("arboricity enumeration limited to 16 vertices")
    index = {v: i for i, v in enumerate(vs)}
    masks = [(1 << index[u]) | (1 << index[v]) for u, v in es]
    best = 0
    for subset in range(1, 1 << len(vs)):
        k = subset.bit_count()
        if k < 2:
            continue
        inside = sum(1 for m in masks if m & subset == m)
        best = max(best, -(-inside // (k - 1)))
    return best
