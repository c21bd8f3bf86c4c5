"""Fast whole-graph EDCS scans for online checking.

``EdgeTable`` mirrors G and H in flat numpy arrays, updated in O(1) per
event, so a full scan of every edge is a handful of vectorized operations
instead of a Python loop. ``oracle.verify_edcs`` is the slow reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import ChangeSet, Edge, edge


@dataclass
class ScanResult:
    p1: int
    p2: int
    first_p1: Optional[Edge]
    first_p2: Optional[Edge]
    max_in_h: Optional[int]
    min_outside: Optional[int]

    @property
    def ok(self) -> bool:
        return self.p1 == 0 and self.p2 == 0


class EdgeTable:
    """Edges of G in dense slots, each flagged with membership in H."""

    def __init__(self, n: int, capacity: int = 1024):
        self.n = n
        self.u = np.zeros(capacity, dtype=np.int64)
        self.v = np.zeros(capacity, dtype=np.int64)
        self.in_h = np.zeros(capacity, dtype=bool)
        self.slot: dict[Edge, int] = {}
        self.m = 0

    def _grow(self):
        cap = 2 * len(self.u)
        for name in ("u", "v", "in_h"):
            old = getattr(self, name)
            new = np.zeros(cap, dtype=old.dtype)
            new[: len(old)] = old
            setattr(self, name, new)

    def insert(self, a: int, b: int) -> None:
        e = edge(a, b)
        if self.m == len(self.u):
            self._grow()
        i = self.m
        self.u[i], self.v[i] = e
        self.in_h[i] = False
        self.slot[e] = i
        self.m += 1

    def delete(self, a: int, b: int) -> None:
        i = self.slot.pop(edge(a, b))
        last = self.m - 1
        if i != last:
            e = (int(self.u[last]), int(self.v[last]))
            self.u[i], self.v[i], self.in_h[i] = self.u[last], self.v[last], self.in_h[last]
            self.slot[e] = i
        self.m = last

    def apply_changes(self, cs: ChangeSet) -> None:
        # Removals of edges already deleted from G are skipped.
        for c in cs.ops:
            i = self.slot.get(edge(c.u, c.v))
            if i is not None:
                self.in_h[i] = c.added

    def h_degrees(self) -> np.ndarray:
        m = self.m
        ends = np.concatenate([self.u[:m][self.in_h[:m]], self.v[:m][self.in_h[:m]]])
        return np.bincount(ends, minlength=self.n)

    def scan(self, bound_hi: float, bound_lo: float,
             deg: Optional[np.ndarray] = None) -> ScanResult:
        """Check both properties over every edge; degrees are recounted unless given."""
        m = self.m
        if deg is None:
            deg = self.h_degrees()
        u, v, h = self.u[:m], self.v[:m], self.in_h[:m]
        w = deg[u] + deg[v]
        bad1 = np.flatnonzero(h & (w > bound_hi))
        bad2 = np.flatnonzero(~h & (w < bound_lo))
        wh, wo = w[h], w[~h]

        def first(idx):
            return (int(u[idx[0]]), int(v[idx[0]])) if len(idx) else None

        return ScanResult(
            len(bad1), len(bad2), first(bad1), first(bad2),
            int(wh.max()) if len(wh) else None,
            int(wo.min()) if len(wo) else None,
        )

    def h_edges(self) -> list[Edge]:
        m = self.m
        idx = np.flatnonzero(self.in_h[:m])
        return sorted((int(self.u[i]), int(self.v[i])) for i in idx)
