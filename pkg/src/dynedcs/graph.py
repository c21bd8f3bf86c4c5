"""Dynamic simple graph over a fixed vertex universe, plus the update-event model.

Adjacency is a list of insertion-ordered dicts used as ordered sets: the
neighbour id is the handle, so membership tests and removals are O(1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, NamedTuple

Edge = tuple[int, int]


class GraphError(Exception):
    """Base class for violated graph preconditions."""


class SelfLoop(GraphError, ValueError):
    pass


class DuplicateEdge(GraphError, KeyError):
    pass


class MissingEdge(GraphError, KeyError):
    pass


class VertexOutOfRange(GraphError, IndexError):
    pass


class ParseError(ValueError):
    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno
        self.line = line
        self.reason = reason


def edge(u: int, v: int) -> Edge:
    """Canonical (min, max) form of the unordered pair {u, v}."""
    if u == v:
        raise SelfLoop(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Kind(Enum):
    INSERT = "+"
    DELETE = "-"


class UpdateEvent(NamedTuple):
    kind: Kind
    edge: Edge

    @classmethod
    def insert(cls, u: int, v: int) -> UpdateEvent:
        return cls(Kind.INSERT, edge(u, v))

    @classmethod
    def delete(cls, u: int, v: int) -> UpdateEvent:
        return cls(Kind.DELETE, edge(u, v))

    def __str__(self) -> str:
        return f"{self.kind.value} {self.edge[0]} {self.edge[1]}"


class HChange(NamedTuple):
    """One membership flip of an edge in a maintained subgraph."""
    added: bool
    u: int
    v: int


@dataclass
class ChangeSet:
    """Ordered membership flips made to a maintained subgraph by one update.

    The same edge may be flipped twice within one update (non-simple
    alternating paths), so consumers must replay ``ops`` in order.
    """
    ops: list[HChange] = field(default_factory=list)

    def add(self, u: int, v: int) -> None:
        self.ops.append(HChange(True, *edge(u, v)))

    def remove(self, u: int, v: int) -> None:
        self.ops.append(HChange(False, *edge(u, v)))

    def extend(self, other: ChangeSet) -> None:
        self.ops.extend(other.ops)

    @property
    def added(self) -> list[Edge]:
        return [(c.u, c.v) for c in self.ops if c.added]

    @property
    def removed(self) -> list[Edge]:
        return [(c.u, c.v) for c in self.ops if not c.added]

    def __len__(self) -> int:
        return len(self.ops)

    def __bool__(self) -> bool:
        return bool(self.ops)


class DynamicGraph:
    """Simple undirected graph on vertices ``0..n-1`` with O(1) updates.

    ``ops`` counts elementary dictionary operations so that tests can check
    the per-operation cost is independent of n and m.
    """

    __slots__ = ("n", "m", "adj", "ops")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        self.m = 0
        self.adj: list[dict[int, None]] = [{} for _ in range(n)]
        self.ops = 0
        for u, v in edges:
            self.insert_edge(u, v)

    def _check(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside [0, {self.n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")

    def insert_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if v in self.adj[u]:
            raise DuplicateEdge(edge(u, v))
        self.adj[u][v] = None
        self.adj[v][u] = None
        self.m += 1
        self.ops += 3

    def delete_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if v not in self.adj[u]:
            raise MissingEdge(edge(u, v))
        del self.adj[u][v]
        del self.adj[v][u]
        self.m -= 1
        self.ops += 3

    def apply(self, event: UpdateEvent) -> None:
        if event.kind is Kind.INSERT:
            self.insert_edge(*event.edge)
        else:
            self.delete_edge(*event.edge)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> Iterator[int]:
        return iter(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edges(self) -> Iterator[Edge]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def edge_set(self) -> set[Edge]:
        return set(self.edges())

    def copy(self) -> DynamicGraph:
        g = DynamicGraph(self.n)
        g.adj = [dict(a) for a in self.adj]
        g.m = self.m
        return g

    def __len__(self) -> int:
        return self.m

    def __contains__(self, e: tuple[int, int]) -> bool:
        return self.has_edge(*e)

    def __repr__(self) -> str:
        return f"DynamicGraph(n={self.n}, m={self.m})"


_EVENT_RE = re.compile(r"^([+-])\s+(\d+)\s+(\d+)$")
_HEADER_RE = re.compile(r"^n\s+(\d+)$")


def parse_stream(text: str) -> list[UpdateEvent]:
    """Parse the ``+ u v`` / ``- u v`` stream format into events, in file order.

    Whether events are applicable (no duplicate inserts, no deletes of absent
    edges) is checked later, when they are applied to a graph.
    """
    return load_stream(text)[1]


def load_stream(text: str) -> tuple[int, list[UpdateEvent]]:
    """Parse a stream and resolve its vertex count.

    The count comes from the optional ``n <count>`` header, else it is one
    more than the largest vertex id seen.
    """
    n: int | None = None
    events: list[UpdateEvent] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _HEADER_RE.match(line)
        if header:
            if n is not None or events:
                raise ParseError(lineno, raw, "header must come first")
            n = int(header.group(1))
            continue
        match = _EVENT_RE.match(line)
        if not match:
            raise ParseError(lineno, raw, "malformed event")
        sign, u, v = match.group(1), int(match.group(2)), int(match.group(3))
        if u == v:
            raise ParseError(lineno, raw, "self-loop")
        kind = Kind.INSERT if sign == "+" else Kind.DELETE
        if n is not None and max(u, v) >= n:
            raise ParseError(lineno, raw, f"vertex id not below n={n}")
        events.append(UpdateEvent(kind, edge(u, v)))
    if n is None:
        n = infer_vertex_count(events)
    return n, events


def infer_vertex_count(events: Iterable[UpdateEvent]) -> int:
    return 1 + max((max(e.edge) for e in events), default=-1)


def format_stream(events: Iterable[UpdateEvent], n: int | None = None) -> str:
    lines = [] if n is None else [f"n {n}"]
    lines.extend(str(e) for e in events)
    return "\n".join(lines) + ("\n" if lines else "")
