"""Lazy EDCS maintenance: neighbours learn degree changes in bounded batches.

When a vertex x ends an alternating path, only the first ``batch_size``
neighbours in its cyclic queue are told the new degree, and they rotate to
the tail. With ``batch_size >= 10 * degree_cap / (gap * beta)`` no estimate
lags the true degree by more than ``gap * beta / 10``, and H stays a
(gamma, (1 - 2 gap) gamma)-EDCS with ``gamma = beta (1 + gap / 10)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Optional

from .edcs import EdcsMaintainer, EdcsParams
from .graph import DynamicGraph


class InvalidEps(ValueError):
    pass


def _exact(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10**9)


@dataclass(frozen=True)
class CalibratedParams:
    eps: float
    lam: float
    lam_prime: float
    theoretical_beta: int
    beta: int
    gap: float
    degree_cap: int
    engineering: bool

    @property
    def edcs(self) -> EdcsParams:
        return EdcsParams(self.beta, self.gap)

    @property
    def gamma(self) -> float:
        return self.beta * (1 + self.gap / 10)

    @property
    def gamma_low(self) -> float:
        return (1 - 2 * self.gap) * self.gamma

    @property
    def batch_size(self) -> int:
        return batch_size_for(self.degree_cap, self.beta, self.gap)


def engineering_beta(degree_cap: int, gap: float, scale: float = 4.0) -> int:
    """A desk-scale beta growing like sqrt(degree_cap), never too small for ``gap``."""
    return max(math.ceil(scale * math.sqrt(max(degree_cap, 1))), math.ceil(2 / _exact(gap)))


def calibrate(
        eps: float,
        degree_cap: int,
        *,
        beta: Optional[int] = None,
        gap: Optional[float] = None,
        beta_cap: int = 10**6,
        scale: float = 4.0,
        ) -> CalibratedParams:
    """Pick EDCS parameters for a target approximation ``3/2 + eps``.

    The theoretical choice is ``lam = eps/100``, ``lam' = lam/2`` as the gap,
    and ``beta = max(lam' * sqrt(degree_cap), 32 / lam**3)``. That beta is
    billions for any practical eps, so whenever it exceeds ``beta_cap`` (or an
    explicit ``beta``/``gap`` is given) an engineering preset is returned
    instead and flagged with ``engineering=True``.
    """
    if not 0 < eps < 0.5:
        raise InvalidEps(f"eps must lie in (0, 1/2), got {eps}")
    if degree_cap < 1:
        raise ValueError("degree_cap must be at least 1")
    lam = _exact(eps) / 100
    lam_prime = lam / 2
    theoretical = math.ceil(max(float(lam_prime) * math.sqrt(degree_cap), 32 / lam**3))
    if beta is None and gap is None and theoretical <= beta_cap:
        return CalibratedParams(eps, float(lam), float(lam_prime), theoretical,
                                theoretical, float(lam_prime), degree_cap, False)
    gap = 0.25 if gap is None else gap
    if beta is None:
        beta = engineering_beta(degree_cap, gap, scale)
    return CalibratedParams(eps, float(lam), float(lam_prime), theoretical,
                            beta, gap, degree_cap, True)


def batch_size_for(degree_cap: int, beta: int, gap: float) -> int:
    return max(1, math.ceil(10 * degree_cap / (_exact(gap) * beta)))


class LazyEdcs(EdcsMaintainer):
    """EDCS maintenance where each vertex sees only estimates of its neighbours' degrees.

    Path walks consult only the current vertex's own buckets, filed by its
    own estimates. ``degree_cap`` must bound every degree of ``graph``; an
    explicit ``batch_size`` overrides the value derived from it.
    """

    def __init__(self, graph: DynamicGraph, params: EdcsParams, degree_cap: int,
                 batch_size: Optional[int] = None):
        self.queue: list[dict[int, None]] = [{} for _ in range(graph.n)]
        self.degree_cap = degree_cap
        self._fixed_batch = batch_size
        self.batch_size = batch_size or batch_size_for(degree_cap, params.beta, params.gap)
        self.batches = 0
        super().__init__(graph, params)

    @property
    def gamma(self) -> float:
        return self.beta * (1 + self.params.gap / 10)

    @property
    def gamma_low(self) -> float:
        return (1 - 2 * self.params.gap) * self.gamma

    @property
    def discrepancy_bound(self) -> float:
        return self.params.gap * self.beta / 10

    @property
    def path_bound(self) -> float:
        return 5 / (2 * self.params.gap)

    @property
    def recourse_bound(self) -> float:
        return 5 / self.params.gap

    def set_degree_cap(self, degree_cap: int) -> None:
        """Adopt a new degree cap (the sparsifier's cutoff moved)."""
        self.degree_cap = degree_cap
        if self._fixed_batch is None:
            self.batch_size = batch_size_for(degree_cap, self.beta, self.params.gap)

    def notify_batch(self, x: int) -> None:
        """Refresh the first ``batch_size`` neighbours in x's queue and rotate them."""
        q = self.queue[x]
        self.batches += 1
        for w in list(islice(q, self.batch_size)):
            self._refresh(w, x)
            del q[w]
            q[w] = None

    def check_discrepancy(self) -> int:
        """Largest amount by which a true H-degree exceeds a neighbour's estimate of it."""
        worst = 0
        for w, slots in enumerate(self.est):
            for x, guess in slots.items():
                worst = max(worst, self.deg[x] - guess)
        return worst

    def max_abs_discrepancy(self) -> int:
        return max((abs(self.deg[x] - g) for slots in self.est for x, g in slots.items()),
                   default=0)

    def _attach(self, u: int, v: int) -> None:
        self.queue[u][v] = None
        self.queue[v][u] = None
        self.ops += 2

    def _detach(self, u: int, v: int) -> None:
        del self.queue[u][v]
        del self.queue[v][u]
        self.ops += 2

    def _on_permanent_change(self, x: int) -> None:
        self.notify_batch(x)
