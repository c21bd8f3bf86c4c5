"""Eager EDCS maintenance: exact neighbour degrees, one alternating path per endpoint.

H is a (beta, low)-EDCS of G: every H-edge has weight at most ``beta`` and
every other edge of G weight at least ``low = ceil((1 - gap) * beta)``, where
an edge weighs the sum of its endpoints' H-degrees.

Each vertex x files every incident edge (x, y) in buckets keyed by x's
*estimate* of y's H-degree, split by H-membership. With x's own degree d,
the full edges of x are the H-buckets with key >= beta - d and the
deficient edges the non-H buckets with key <= low - d. A change of d only
moves these boundaries, so x's own lists never need rescanning; only the
neighbours' buckets must hear about it. Here every neighbour is told at
once, which keeps all estimates exact between updates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import ChangeSet, DynamicGraph, Edge


class EdcsInvariantError(AssertionError):
    pass


@dataclass(frozen=True)
class EdcsParams:
    beta: int
    gap: float

    def __post_init__(self):
        if not isinstance(self.beta, int) or self.beta <= 0:
            raise ValueError(f"beta must be a positive integer, got {self.beta!r}")
        if not 0 < self.gap < 0.5:
            raise ValueError(f"gap must lie in (0, 1/2), got {self.gap}")
        if self._gap_fraction * self.beta < 1:
            raise ValueError(
                f"gap * beta = {float(self._gap_fraction * self.beta):g} < 1 leaves "
                "the deficient threshold equal to beta")

    @property
    def _gap_fraction(self) -> Fraction:
        return Fraction(self.gap).limit_denominator(10**9)

    @property
    def low(self) -> int:
        """``ceil((1 - gap) * beta)``, computed exactly."""
        return math.ceil((1 - self._gap_fraction) * self.beta)

    @property
    def path_bound(self) -> float:
        return 2 / self.gap

    @property
    def recourse_bound(self) -> float:
        return 4 / self.gap


@dataclass
class UpdateStats:
    path_lengths: list[int] = field(default_factory=list)
    recourse: int = 0
    ops: int = 0
    notified: int = 0


class EdcsMaintainer:
    """Maintain an EDCS H of ``graph`` under edge insertions and deletions.

    The caller mutates ``graph`` and then reports the update through
    :meth:`insert` or :meth:`delete` (or uses :meth:`insert_edge` /
    :meth:`delete_edge`, which do both). Each call returns the ordered
    :class:`ChangeSet` of H-edges flipped while restoring the properties.
    Edges already present in ``graph`` at construction are absorbed one by
    one, as if inserted in adjacency order.
    """

    def __init__(self, graph: DynamicGraph, params: EdcsParams):
        n = graph.n
        self.graph = graph
        self.params = params
        self.beta = params.beta
        self.low = params.low
        self.deg = [0] * n
        # est[x][y]: x's belief about deg[y]; one entry per directed slot of an edge.
        self.est: list[dict[int, int]] = [{} for _ in range(n)]
        self.h_nbrs: list[dict[int, None]] = [{} for _ in range(n)]
        self._in_b: list[dict[int, dict[int, None]]] = [{} for _ in range(n)]
        self._out_b: list[dict[int, dict[int, None]]] = [{} for _ in range(n)]
        # Loose bounds on the occupied keys: top of the H-buckets, bottom of the rest.
        self._in_top = [-1] * n
        self._out_bottom = [0] * n
        self.ops = 0
        self.last = UpdateStats()
        self.max_path = 0
        self.max_recourse = 0
        self.max_ops = 0
        self.settle_paths = 0
        self._path_guard = 4 * params.beta + 16
        for u, v in list(graph.edges()):
            self.insert(u, v)

    # ---- public update API -------------------------------------------------

    def insert_edge(self, u: int, v: int) -> ChangeSet:
        self.graph.insert_edge(u, v)
        return self.insert(u, v)

    def delete_edge(self, u: int, v: int) -> ChangeSet:
        self.graph.delete_edge(u, v)
        return self.delete(u, v)

    def insert(self, u: int, v: int) -> ChangeSet:
        """Absorb a freshly inserted edge of G."""
        start = self.ops
        self.last = UpdateStats()
        self.est[u][v] = self.deg[v]
        self.est[v][u] = self.deg[u]
        self._file(u, v)
        self._file(v, u)
        self._attach(u, v)
        cs = ChangeSet()
        if self.deg[u] + self.deg[v] < self.low:
            self._flip_in(u, v, cs)
            # u waits for v's path; its neighbours hear about it now.
            self._on_permanent_change(u)
            cs.extend(self.handle_full(v))
            cs.extend(self._path(u, want_full=True, announced=True))
            cs.extend(self._settle(u, v))
        self._finish(cs, start)
        return cs

    def delete(self, u: int, v: int) -> ChangeSet:
        """Absorb a freshly deleted edge of G."""
        start = self.ops
        self.last = UpdateStats()
        was_in = v in self.h_nbrs[u]
        self._unfile(u, v)
        self._unfile(v, u)
        self._detach(u, v)
        del self.est[u][v]
        del self.est[v][u]
        cs = ChangeSet()
        if was_in:
            del self.h_nbrs[u][v]
            del self.h_nbrs[v][u]
            self.deg[u] -= 1
            self.deg[v] -= 1
            cs.remove(u, v)
            self._on_permanent_change(u)
            cs.extend(self.handle_deficient(v))
            cs.extend(self._path(u, want_full=False, announced=True))
            cs.extend(self._settle(u, v))
        self._finish(cs, start)
        return cs

    def handle_full(self, p: int) -> ChangeSet:
        """Walk from p, whose H-degree just went up, until an increase-safe vertex."""
        return self._path(p, want_full=True)

    def handle_deficient(self, p: int) -> ChangeSet:
        """Walk from p, whose H-degree just went down, until a decrease-safe vertex."""
        return self._path(p, want_full=False)

    def refresh_neighborhood(self, x: int) -> None:
        """Tell every neighbour of x its current H-degree."""
        for w in self.est[x]:
            self._refresh(w, x)

    # ---- queries -----------------------------------------------------------

    @property
    def path_bound(self) -> float:
        return self.params.path_bound

    @property
    def recourse_bound(self) -> float:
        return self.params.recourse_bound

    def in_h(self, u: int, v: int) -> bool:
        return v in self.h_nbrs[u]

    def h_edges(self) -> list[Edge]:
        return [(x, y) for x, nbrs in enumerate(self.h_nbrs) for y in nbrs if x < y]

    def weight(self, u: int, v: int) -> int:
        return self.deg[u] + self.deg[v]

    def view_weight(self, x: int, y: int) -> int:
        """Weight of (x, y) as x sees it: own degree plus estimate of y's."""
        return self.deg[x] + self.est[x][y]

    def full_list(self, x: int) -> list[int]:
        edge_min = self.beta - self.deg[x]
        return [y for k, b in sorted(self._in_b[x].items()) if k >= edge_min for y in b]

    def deficient_list(self, x: int) -> list[int]:
        edge_max = self.low - self.deg[x]
        return [y for k, b in sorted(self._out_b[x].items()) if k <= edge_max for y in b]

    def remaining_list(self, x: int) -> list[int]:
        special = set(self.full_list(x)) | set(self.deficient_list(x))
        return [y for y in self.est[x] if y not in special]

    def check_consistency(self) -> None:
        """Raise if the bucket structure disagrees with the per-slot records."""
        for x in range(self.graph.n):
            if self.deg[x] != len(self.h_nbrs[x]):
                raise EdcsInvariantError(f"deg[{x}] != |H-neighbours|")
            if set(self.est[x]) != set(self.graph.adj[x]):
                raise EdcsInvariantError(f"slots of {x} differ from G-adjacency")
            filed = {}
            for inside, buckets in ((True, self._in_b[x]), (False, self._out_b[x])):
                for k, b in buckets.items():
                    if not b:
                        raise EdcsInvariantError(f"empty bucket {k} left at {x}")
                    for y in b:
                        filed[y] = (inside, k)
            want = {y: (y in self.h_nbrs[x], k) for y, k in self.est[x].items()}
            if filed != want:
                raise EdcsInvariantError(f"buckets of {x} out of sync")
            if self._in_b[x] and max(self._in_b[x]) > self._in_top[x]:
                raise EdcsInvariantError(f"H-bucket top bound of {x} too low")
            if self._out_b[x] and min(self._out_b[x]) < self._out_bottom[x]:
                raise EdcsInvariantError(f"non-H bucket bottom bound of {x} too high")

    # ---- hooks the lazy variant overrides ------------------------------------

    def _attach(self, u: int, v: int) -> None:
        pass

    def _detach(self, u: int, v: int) -> None:
        pass

    def _on_permanent_change(self, x: int) -> None:
        self.refresh_neighborhood(x)

    # ---- internals -----------------------------------------------------------

    def _finish(self, cs: ChangeSet, start: int) -> None:
        st = self.last
        st.recourse = len(cs)
        st.ops = self.ops - start
        self.max_recourse = max(self.max_recourse, st.recourse)
        self.max_ops = max(self.max_ops, st.ops)
        if st.path_lengths:
            self.max_path = max(self.max_path, max(st.path_lengths))

    def _settle(self, u: int, v: int) -> ChangeSet:
        # A path's first flip restores its start vertex, but the other path may
        # since have moved a neighbour of it, leaving one of its own edges out
        # of range. Such leftovers are repaired by further paths.
        cs = ChangeSet()
        dirty = True
        while dirty:
            dirty = False
            for p in (v, u):
                if self._find_full(p) is not None:
                    cs.extend(self._path(p, want_full=True, announced=True))
                    self.settle_paths += 1
                    dirty = True
                elif self._find_deficient(p) is not None:
                    cs.extend(self._path(p, want_full=False, announced=True))
                    self.settle_paths += 1
                    dirty = True
        return cs

    def _path(self, p: int, want_full: bool, announced: bool = False) -> ChangeSet:
        # With ``announced``, p's raised or lowered degree was broadcast early;
        # the first flip of the path reverts it, so it is broadcast again then.
        start = p
        cs = ChangeSet()
        length = 0
        # The edge just flipped into p is never taken straight back.
        came_from = -1
        while True:
            if want_full:
                y = self._find_full(p, came_from)
                if y is None:
                    break
                self._flip_out(p, y, cs)
            else:
                y = self._find_deficient(p, came_from)
                if y is None:
                    break
                self._flip_in(p, y, cs)
            length += 1
            if announced and length == 1:
                self._on_permanent_change(start)
            if length > self._path_guard:
                raise EdcsInvariantError(f"alternating path exceeded {self._path_guard} edges")
            came_from, p = p, y
            want_full = not want_full
        self.last.path_lengths.append(length)
        self._on_permanent_change(p)
        return cs

    def _find_full(self, p: int, skip: int = -1) -> int | None:
        # p's degree was just raised, so edges weighing >= beta before now exceed it.
        buckets = self._in_b[p]
        top = self._in_top[p]
        while top >= 0 and top not in buckets:
            top -= 1
            self.ops += 1
        self._in_top[p] = top
        for k in range(max(self.beta - self.deg[p] + 1, 0), top + 1):
            self.ops += 1
            b = buckets.get(k)
            if b:
                y = _first_other(b, skip)
                if y is not None:
                    return y
        return None

    def _find_deficient(self, p: int, skip: int = -1) -> int | None:
        buckets = self._out_b[p]
        if not buckets:
            return None
        bottom = self._out_bottom[p]
        while bottom not in buckets:
            bottom += 1
            self.ops += 1
        self._out_bottom[p] = bottom
        for k in range(self.low - self.deg[p] - 1, bottom - 1, -1):
            self.ops += 1
            b = buckets.get(k)
            if b:
                y = _first_other(b, skip)
                if y is not None:
                    return y
        return None

    def _file(self, x: int, y: int) -> None:
        k = self.est[x][y]
        self.ops += 1
        if y in self.h_nbrs[x]:
            self._in_b[x].setdefault(k, {})[y] = None
            if k > self._in_top[x]:
                self._in_top[x] = k
        else:
            buckets = self._out_b[x]
            if not buckets or k < self._out_bottom[x]:
                self._out_bottom[x] = k
            buckets.setdefault(k, {})[y] = None

    def _unfile(self, x: int, y: int) -> None:
        k = self.est[x][y]
        self.ops += 1
        buckets = self._in_b[x] if y in self.h_nbrs[x] else self._out_b[x]
        b = buckets[k]
        del b[y]
        if not b:
            del buckets[k]

    def _flip_in(self, x: int, y: int, cs: ChangeSet) -> None:
        self._unfile(x, y)
        self._unfile(y, x)
        self.h_nbrs[x][y] = None
        self.h_nbrs[y][x] = None
        self.deg[x] += 1
        self.deg[y] += 1
        self._file(x, y)
        self._file(y, x)
        cs.add(x, y)

    def _flip_out(self, x: int, y: int, cs: ChangeSet) -> None:
        self._unfile(x, y)
        self._unfile(y, x)
        del self.h_nbrs[x][y]
        del self.h_nbrs[y][x]
        self.deg[x] -= 1
        self.deg[y] -= 1
        self._file(x, y)
        self._file(y, x)
        cs.remove(x, y)

    def _refresh(self, w: int, x: int) -> None:
        """Bring w's estimate of x up to date, re-filing the edge if it moved."""
        self.ops += 1
        self.last.notified += 1
        d = self.deg[x]
        if self.est[w][x] != d:
            self._unfile(w, x)
            self.est[w][x] = d
            self._file(w, x)


def _first_other(bucket: dict[int, None], skip: int) -> int | None:
    for y in bucket:
        if y != skip:
            return y
    return None


def classify_from_scratch(m: EdcsMaintainer, x: int) -> tuple[set[int], set[int]]:
    """Full and deficient neighbour sets of x recomputed from first principles."""
    full = {y for y in m.h_nbrs[x] if m.deg[x] + m.est[x][y] >= m.beta}
    deficient = {y for y in m.est[x] if y not in m.h_nbrs[x]
                 and m.deg[x] + m.est[x][y] <= m.low}
    return full, deficient
