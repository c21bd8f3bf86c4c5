"""Synthetic update streams.

Every generator is a pure function of its arguments: the same seed always
yields the same events. Each stream is valid against an initially empty
graph (no duplicate inserts, no deletes of absent edges).
"""

from __future__ import annotations

import random
from collections import deque
from typing import Callable

from .graph import UpdateEvent, edge


class InvalidParams(ValueError):
    pass


KINDS = ("uniform", "sliding-window", "bounded-outdegree", "star-adversary")


class _EdgePool:
    """Live edge set with O(1) uniform sampling and removal."""

    def __init__(self):
        self.items: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.items)

    def __contains__(self, e):
        return e in self.pos

    def add(self, e):
        self.pos[e] = len(self.items)
        self.items.append(e)

    def discard(self, e):
        i = self.pos.pop(e)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def sample(self, rng):
        return self.items[rng.randrange(len(self.items))]


def _random_non_edge(rng, n, live, tries=64):
    for _ in range(tries):
        u, v = rng.sample(range(n), 2)
        e = edge(u, v)
        if e not in live:
            return e
    # Dense graph: fall back to an exhaustive pick.
    free = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in live]
    return rng.choice(free) if free else None


def _check_n(n):
    if not isinstance(n, int) or n < 2:
        raise InvalidParams(f"n must be an integer >= 2, got {n!r}")


def uniform(n: int, steps: int, seed: int, target_m: int | None = None,
            max_m: int | None = None) -> list[UpdateEvent]:
    """Random inserts and deletes hovering around ``target_m`` live edges."""
    _check_n(n)
    full = n * (n - 1) // 2
    target_m = target_m if target_m is not None else min(4 * n, full // 2)
    max_m = max_m if max_m is not None else full
    if target_m < 1 or max_m < 1 or max_m > full:
        raise InvalidParams("need 1 <= target_m and 1 <= max_m <= n(n-1)/2")
    rng = random.Random(seed)
    live = _EdgePool()
    out = []
    for _ in range(steps):
        m = len(live)
        delete = m >= max_m or (m > 0 and rng.random() < m / (2 * target_m))
        if delete:
            e = live.sample(rng)
            live.discard(e)
            out.append(UpdateEvent.delete(*e))
        else:
            e = _random_non_edge(rng, n, live)
            live.add(e)
            out.append(UpdateEvent.insert(*e))
    return out


def sliding_window(n: int, steps: int, seed: int, w: int = 100) -> list[UpdateEvent]:
    """Insert random edges; once w are live, the oldest is deleted before the next insert."""
    _check_n(n)
    if w < 1 or w >= n * (n - 1) // 2:
        raise InvalidParams("window must satisfy 1 <= w < n(n-1)/2")
    rng = random.Random(seed)
    window: deque[tuple[int, int]] = deque()
    live: set[tuple[int, int]] = set()
    out = []
    for _ in range(steps):
        if len(window) == w:
            e = window.popleft()
            live.discard(e)
            out.append(UpdateEvent.delete(*e))
        else:
            e = _random_non_edge(rng, n, live)
            window.append(e)
            live.add(e)
            out.append(UpdateEvent.insert(*e))
    return out


def bounded_outdegree(n: int, steps: int, seed: int, k: int = 1,
                      target_m: int | None = None) -> list[UpdateEvent]:
    """Random stream whose every graph has an orientation with out-degree <= k.

    Each inserted edge is oriented away from an endpoint that still has
    spare out-degree, so every subgraph on V' vertices has at most k|V'|
    edges and arboricity is at most k + 1.
    """
    _check_n(n)
    if not isinstance(k, int) or k < 1:
        raise InvalidParams(f"k must be a positive integer, got {k!r}")
    target_m = target_m if target_m is not None else max(1, k * n // 2)
    rng = random.Random(seed)
    live = _EdgePool()
    owner: dict[tuple[int, int], int] = {}
    out_deg = [0] * n
    spare = list(range(n))
    spare_pos = {v: i for i, v in enumerate(spare)}

    def set_spare(v, on):
        if on and v not in spare_pos:
            spare_pos[v] = len(spare)
            spare.append(v)
        elif not on and v in spare_pos:
            i = spare_pos.pop(v)
            last = spare.pop()
            if i < len(spare):
                spare[i] = last
                spare_pos[last] = i

    out = []
    for _ in range(steps):
        m = len(live)
        e = None
        if not (m > 0 and rng.random() < m / (2 * target_m)) and spare:
            u = spare[rng.randrange(len(spare))]
            for _ in range(64):
                v = rng.randrange(n)
                if v != u and edge(u, v) not in live:
                    e = edge(u, v)
                    break
            if e is not None:
                live.add(e)
                owner[e] = u
                out_deg[u] += 1
                set_spare(u, out_deg[u] < k)
                out.append(UpdateEvent.insert(*e))
                continue
        if m == 0:
            raise InvalidParams("no valid update available; n too small for k")
        e = live.sample(rng)
        live.discard(e)
        u = owner.pop(e)
        out_deg[u] -= 1
        set_spare(u, True)
        out.append(UpdateEvent.delete(*e))
    return out


def star_adversary(n: int, steps: int, seed: int, leaf_edges: int | None = None) -> list[UpdateEvent]:
    """A hub (vertex 0) repeatedly fills up to every leaf and drains again.

    Random leaf-leaf edges (about ``leaf_edges`` live) are interleaved so
    that hub edges keep entering and leaving H through alternating paths.
    """
    _check_n(n)
    if n < 3:
        raise InvalidParams("star-adversary needs n >= 3")
    leaves = n - 1
    leaf_edges = leaf_edges if leaf_edges is not None else leaves
    rng = random.Random(seed)
    order = list(range(1, n))
    rng.shuffle(order)
    hub: deque[int] = deque()
    live = _EdgePool()
    filling = True
    out = []
    for _ in range(steps):
        if rng.random() < 0.5 and leaves >= 3:
            if len(live) > 0 and (len(live) >= leaf_edges or rng.random() < 0.3):
                e = live.sample(rng)
                live.discard(e)
                out.append(UpdateEvent.delete(*e))
                continue
            u, v = rng.sample(range(1, n), 2)
            e = edge(u, v)
            if e not in live:
                live.add(e)
                out.append(UpdateEvent.insert(*e))
                continue
        if filling:
            leaf = order[len(hub)]
            hub.append(leaf)
            out.append(UpdateEvent.insert(0, leaf))
            filling = len(hub) < leaves
        else:
            leaf = hub.popleft()
            out.append(UpdateEvent.delete(0, leaf))
            if not hub:
                filling = True
                rng.shuffle(order)
    return out


GENERATORS: dict[str, Callable[..., list[UpdateEvent]]] = {
    "uniform": uniform,
    "sliding-window": sliding_window,
    "bounded-outdegree": bounded_outdegree,
    "star-adversary": star_adversary,
}


def generate_stream(kind: str, n: int, steps: int, seed: int, **params) -> list[UpdateEvent]:
    """Dispatch to a named generator; ``params`` are its keyword options."""
    if kind not in GENERATORS:
        raise InvalidParams(f"unknown stream kind {kind!r}; expected one of {', '.join(KINDS)}")
    if not isinstance(steps, int) or steps < 0:
        raise InvalidParams(f"steps must be a non-negative integer, got {steps!r}")
    try:
        return GENERATORS[kind](n, steps, seed, **params)
    except TypeError as exc:
        raise InvalidParams(str(exc)) from None
