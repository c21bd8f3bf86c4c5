"""Matching maintained on top of the bounded-degree subgraph H.

Deletions of matched H-edges are patched immediately. Every so often a
rebuild computes an exact maximum matching of a frozen copy of H; the
rebuild runs as a generator, a bounded slice of work per update, while the
old (patched) matching keeps being served. The snapshot is copy-on-write:
before a vertex's live adjacency or mate changes mid-rebuild, its original
is moved into the frozen overlay, so starting a rebuild costs O(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .graph import ChangeSet, Edge
from .oracle import Matching, blossom_search, max_matching_blossom


def static_max_matching(edges) -> Matching:
    """Exact maximum matching of a static edge list (the rebuild kernel)."""
    return max_matching_blossom(edges)


class _SnapshotMate(dict):
    """Kernel-side mate map; unknown keys fall through to the frozen matching."""

    def __init__(self, job: _Rebuild):
        super().__init__()
        self.job = job

    def __missing__(self, x: int) -> Optional[int]:
        return self.job.snapshot_mate(x)


@dataclass
class _Rebuild:
    layer: MatchingLayer
    frozen_adj: dict[int, set[int]] = field(default_factory=dict)
    frozen_mate: dict[int, Optional[int]] = field(default_factory=dict)
    start_size: int = 0
    start_changes: int = 0
    slots: int = 0
    kmate: _SnapshotMate = None
    steps: Iterator[int] = None

    def __post_init__(self):
        self.kmate = _SnapshotMate(self)
        self.steps = blossom_search(range(self.layer.n), self.neighbors, self.kmate)

    def neighbors(self, x: int) -> set[int]:
        adj = self.frozen_adj.get(x)
        return self.layer.adj[x] if adj is None else adj

    def snapshot_mate(self, x: int) -> Optional[int]:
        if x in self.frozen_mate:
            return self.frozen_mate[x]
        return self.layer.mate[x]


class MatchingLayer:
    """Serve a matching of H, absorbing the ChangeSets the EDCS layer emits.

    ``work_constant`` scales the per-H-change slice of rebuild work,
    ``ceil(work_constant * beta / eps**2)`` kernel steps.
    """

    def __init__(self, n: int, eps: float, beta: int, work_constant: float = 16.0):
        self.n = n
        self.eps = eps
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.mate: list[Optional[int]] = [None] * n
        self.size = 0
        self.slice = math.ceil(work_constant * beta / eps**2)
        self.base_size = 0
        self.changes_since = 0
        self.threshold = 1
        self._job: Optional[_Rebuild] = None
        self.rebuilds = 0
        self.longest_rebuild = 0
        self.ops = 0
        self.last_ops = 0

    # ---- updates -----------------------------------------------------------

    def apply_changeset(self, cs: ChangeSet) -> None:
        start = self.ops
        for c in cs.ops:
            if c.added:
                self._add(c.u, c.v)
            else:
                self._remove(c.u, c.v)
        self.changes_since += len(cs)
        if self._job is None and self.changes_since >= self.threshold:
            self._job = _Rebuild(self, start_size=self.size, start_changes=self.changes_since)
            self.ops += 1
        if self._job is not None:
            self._run_slice(self.slice * max(1, len(cs)))
        self.last_ops = self.ops - start

    def finish_rebuild(self) -> None:
        """Drive any in-progress rebuild to completion (tests and shutdown)."""
        while self._job is not None:
            self._run_slice(self.slice)

    # ---- queries -----------------------------------------------------------

    @property
    def rebuilding(self) -> bool:
        return self._job is not None

    def mate_of(self, v: int) -> Optional[int]:
        return self.mate[v]

    def edges(self) -> list[Edge]:
        return [(u, v) for u, v in enumerate(self.mate) if v is not None and u < v]

    def h_edges(self) -> list[Edge]:
        return [(u, v) for u, nbrs in enumerate(self.adj) for v in nbrs if u < v]

    # ---- internals ---------------------------------------------------------

    def _freeze_vertex(self, x: int) -> None:
        job = self._job
        if job is not None and x not in job.frozen_adj:
            job.frozen_adj[x] = self.adj[x]
            self.adj[x] = set(self.adj[x])
            self.ops += len(self.adj[x])

    def _freeze_mate(self, x: int) -> None:
        job = self._job
        if job is not None and x not in job.frozen_mate:
            job.frozen_mate[x] = self.mate[x]

    def _add(self, u: int, v: int) -> None:
        self._freeze_vertex(u)
        self._freeze_vertex(v)
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.ops += 1

    def _remove(self, u: int, v: int) -> None:
        self._freeze_vertex(u)
        self._freeze_vertex(v)
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.ops += 1
        if self.mate[u] == v:
            self._freeze_mate(u)
            self._freeze_mate(v)
            self.mate[u] = None
            self.mate[v] = None
            self.size -= 1

    def _run_slice(self, budget: int) -> None:
        job = self._job
        job.slots += 1
        for _ in range(budget):
            self.ops += 1
            if next(job.steps, None) is None:
                self._install(job)
                return

    def _install(self, job: _Rebuild) -> None:
        # Vertices the kernel re-mated are closed under both the old and the new
        # pairing, so the size changes by half the difference of matched counts.
        changed = list(job.kmate.items())
        before = after = augmented = 0
        for x, y in changed:
            self.ops += 1
            if job.snapshot_mate(x) is None:
                augmented += 1
            before += self.mate[x] is not None
            # Edges deleted from H mid-rebuild are dropped, freeing both ends.
            self.mate[x] = y if y in self.adj[x] else None
            after += self.mate[x] is not None
        self.size += (after - before) // 2
        self.base_size = job.start_size + augmented // 2
        self.changes_since -= job.start_changes
        self.threshold = max(1, math.floor(self.eps * self.base_size / 8))
        self.rebuilds += 1
        self.longest_rebuild = max(self.longest_rebuild, job.slots)
        self._job = None
