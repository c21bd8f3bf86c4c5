"""Marked-edge matching sparsifier with constant worst-case update cost.

Every vertex marks up to ``eta`` incident edges; an edge marked by both
endpoints belongs to the sparsifier G'. In fixed-arboricity mode ``eta`` is
``5 (5/eps + 1) 2 alpha`` for a caller-supplied arboricity bound alpha. In
adaptive mode ``eta = 5 (5/eps + 1) 4 sqrt(m_R)``, where ``m_R`` is the edge
count at the last restart; a restart begins when m doubles or halves and is
carried out a few work units per update.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .graph import ChangeSet, DynamicGraph


def eta_fixed(eps: float, alpha: float) -> int:
    return math.ceil(5 * (5 / eps + 1) * 2 * alpha - 1e-9)


def eta_adaptive(eps: float, m_r: int) -> int:
    return math.ceil(5 * (5 / eps + 1) * 4 * math.sqrt(max(m_r, 1)) - 1e-9)


@dataclass(frozen=True)
class SparsifierConfig:
    eps: float
    alpha: Optional[float] = None
    steps_per_update: int = 8
    # Pins the mark cutoff, bypassing both formulas (small demos and tests).
    eta: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.eps < 0.5:
            raise ValueError(f"eps must lie in (0, 1/2), got {self.eps}")
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.eta is not None and self.eta < 1:
            raise ValueError("eta must be at least 1")
        if self.steps_per_update < 3:
            raise ValueError("steps_per_update must be at least 3")

    @property
    def adaptive(self) -> bool:
        return self.alpha is None and self.eta is None


class _VertexList:
    """Doubly linked list of vertex ids threaded through two index arrays."""

    __slots__ = ("prev", "next", "member", "head", "tail", "size")

    def __init__(self, n: int):
        self.prev = [-1] * n
        self.next = [-1] * n
        self.member = [False] * n
        self.head = -1
        self.tail = -1
        self.size = 0

    def append(self, v: int) -> None:
        self.member[v] = True
        self.prev[v] = self.tail
        self.next[v] = -1
        if self.tail >= 0:
            self.next[self.tail] = v
        else:
            self.head = v
        self.tail = v
        self.size += 1

    def remove(self, v: int) -> None:
        p, q = self.prev[v], self.next[v]
        if p >= 0:
            self.next[p] = q
        else:
            self.head = q
        if q >= 0:
            self.prev[q] = p
        else:
            self.tail = p
        self.member[v] = False
        self.size -= 1

    def __iter__(self):
        v = self.head
        while v >= 0:
            yield v
            v = self.next[v]


class Sparsifier:
    """Maintain G' over the caller's graph G.

    Call :meth:`insert` / :meth:`delete` after mutating G; each returns the
    ChangeSet applied to G' (at most 1 and 3 edges). In adaptive mode also
    call :meth:`restart_tick` once per update.
    """

    def __init__(self, n: int, config: SparsifierConfig):
        self.n = n
        self.config = config
        self.lm: list[dict[int, None]] = [{} for _ in range(n)]
        self.lu: list[dict[int, None]] = [{} for _ in range(n)]
        self.gprime = DynamicGraph(n)
        self.m = 0
        self.m_r = 1
        if config.eta is not None:
            self.eta = config.eta
        elif config.adaptive:
            self.eta = eta_adaptive(config.eps, 1)
        else:
            self.eta = eta_fixed(config.eps, config.alpha)
        self.prev_eta = self.eta
        self._active = _VertexList(n)
        self.cursor: Optional[int] = None
        self.restarts = 0
        self.ops = 0
        self.last_ops = 0

    # ---- updates -----------------------------------------------------------

    def insert(self, u: int, v: int) -> ChangeSet:
        start = self.ops
        self.m += 1
        for x, y in ((u, v), (v, u)):
            if not self.lm[x] and not self.lu[x]:
                self._active.append(x)
            if len(self.lm[x]) < self.eta:
                self.lm[x][y] = None
            else:
                self.lu[x][y] = None
            self.ops += 1
        cs = ChangeSet()
        if v in self.lm[u] and u in self.lm[v]:
            self._gp_add(u, v, cs)
        self.last_ops = self.ops - start
        return cs

    def delete(self, u: int, v: int) -> ChangeSet:
        start = self.ops
        self.m -= 1
        cs = ChangeSet()
        if self.gprime.has_edge(u, v):
            self._gp_remove(u, v, cs)
        for x, y in ((u, v), (v, u)):
            self.ops += 1
            if y in self.lm[x]:
                del self.lm[x][y]
                if self.lu[x] and len(self.lm[x]) < self.eta:
                    self._promote(x, cs)
            else:
                del self.lu[x][y]
            if not self.lm[x] and not self.lu[x]:
                self._drop_active(x)
        self.last_ops = self.ops - start
        return cs

    def restart_tick(self) -> ChangeSet:
        """Start a restart if m left (m_R/2, 2 m_R), then spend up to c - 1 work units on it."""
        cs = ChangeSet()
        if not self.config.adaptive:
            return cs
        start = self.ops
        target = max(self.m, 1)
        if self.cursor is None and (target >= 2 * self.m_r or 2 * target <= self.m_r):
            self.m_r = target
            self.prev_eta = self.eta
            self.eta = eta_adaptive(self.config.eps, self.m_r)
            self.cursor = self._active.head
            self.restarts += 1
            self.ops += 1
            if self.cursor < 0:
                self._finish_restart()
        budget = self.config.steps_per_update - 1
        while self.cursor is not None and budget > 0:
            budget -= 1
            self.ops += 1
            v = self.cursor
            lm = self.lm[v]
            if len(lm) > self.eta:
                self._demote(v, cs)
            elif len(lm) < self.eta and self.lu[v]:
                self._promote(v, cs)
            else:
                nxt = self._active.next[v]
                if nxt < 0:
                    self._finish_restart()
                else:
                    self.cursor = nxt
        self.last_ops += self.ops - start
        return cs

    # ---- queries -----------------------------------------------------------

    @property
    def restarting(self) -> bool:
        return self.cursor is not None

    def degree_cap(self) -> int:
        """Bound on every G' degree right now (both cutoffs while a restart runs)."""
        return max(self.eta, self.prev_eta) if self.restarting else self.eta

    def marked(self, x: int, y: int) -> bool:
        return y in self.lm[x]

    def non_isolated(self) -> list[int]:
        return list(self._active)

    # ---- internals ---------------------------------------------------------

    def _finish_restart(self) -> None:
        self.cursor = None
        self.prev_eta = self.eta

    def _drop_active(self, x: int) -> None:
        if self.cursor == x:
            nxt = self._active.next[x]
            if nxt < 0:
                self._active.remove(x)
                self._finish_restart()
                return
            self.cursor = nxt
        self._active.remove(x)

    def _promote(self, x: int, cs: ChangeSet) -> None:
        y = next(iter(self.lu[x]))
        del self.lu[x][y]
        self.lm[x][y] = None
        self.ops += 1
        if x in self.lm[y]:
            self._gp_add(x, y, cs)

    def _demote(self, x: int, cs: ChangeSet) -> None:
        y = next(reversed(self.lm[x]))
        del self.lm[x][y]
        self.lu[x][y] = None
        self.ops += 1
        if self.gprime.has_edge(x, y):
            self._gp_remove(x, y, cs)

    def _gp_add(self, u: int, v: int, cs: ChangeSet) -> None:
        self.gprime.insert_edge(u, v)
        cs.add(u, v)
        self.ops += 1

    def _gp_remove(self, u: int, v: int, cs: ChangeSet) -> None:
        self.gprime.delete_edge(u, v)
        cs.remove(u, v)
        self.ops += 1


def sparsifier_degree_cap(s: Sparsifier) -> int:
    return s.degree_cap()
