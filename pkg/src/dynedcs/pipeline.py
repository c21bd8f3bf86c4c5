"""Run an update stream through sparsifier, EDCS and matching layers.

One G-update becomes at most a few G'-updates (sparsifier), each of which
may flip a bounded number of H-edges (EDCS), which the matching layer then
absorbs. Checks run online and abort on the first violation.
"""

from __future__ import annotations

import csv
import hashlib
import io
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .checks import EdgeTable
from .edcs import EdcsMaintainer
from .graph import ChangeSet, DynamicGraph, Kind, UpdateEvent, load_stream
from .lazy import CalibratedParams, LazyEdcs, calibrate
from .matching import MatchingLayer
from .oracle import (BLOSSOM_VERTEX_CAP, is_matching, max_matching_size, verify_edcs)
from .sparsifier import Sparsifier, SparsifierConfig
from .streams import generate_stream

MODES = ("eager", "lazy", "full")
CHECK_LEVELS = ("none", "invariants", "oracle")

METRIC_COLUMNS = (
    "step", "event", "gprime_recourse", "h_recourse", "path_lengths", "max_path",
    "ops_sparsifier", "ops_edcs", "ops_matching", "ops_total", "matching_size",
    "mu_g", "discrepancy",
)


class CheckFailure(AssertionError):
    """An online check failed; carries the step and a digest of the state."""

    def __init__(self, step: int, what: str, digest: str):
        super().__init__(f"step {step}: {what} [state {digest}]")
        self.step = step
        self.what = what
        self.digest = digest


def parse_sparsifier(spec: str) -> Optional[float]:
    """``off`` -> None, ``adaptive`` -> 0.0, ``alpha:<k>`` -> k."""
    if spec == "off":
        return None
    if spec == "adaptive":
        return 0.0
    if spec.startswith("alpha:"):
        try:
            alpha = float(spec[6:])
        except ValueError:
            alpha = -1.0
        if alpha > 0:
            return alpha
    raise ValueError(f"sparsifier must be off, adaptive or alpha:<k>, got {spec!r}")


@dataclass
class RunConfig:
    mode: str = "lazy"
    eps: float = 0.5
    beta: Optional[int] = None
    gap: Optional[float] = None
    sparsifier: str = "off"
    sparsifier_eps: Optional[float] = None
    gen: str = "uniform"
    n: int = 100
    steps: int = 1000
    seed: int = 0
    gen_params: dict = field(default_factory=dict)
    stream: Optional[str] = None
    events: Optional[Sequence[UpdateEvent]] = None
    check: str = "invariants"
    oracle_every: Optional[int] = None
    metrics: Optional[str] = None
    steps_per_update: int = 8
    batch_size: Optional[int] = None
    work_constant: float = 16.0
    discrepancy_every: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.check not in CHECK_LEVELS:
            raise ValueError(f"check must be one of {CHECK_LEVELS}, got {self.check!r}")
        if not 0 < self.eps <= 1:
            raise ValueError(f"eps must lie in (0, 1], got {self.eps}")
        parse_sparsifier(self.sparsifier)
        if self.mode == "full" and self.sparsifier == "off":
            self.sparsifier = "adaptive"
        if self.oracle_every is not None and self.oracle_every < 1:
            raise ValueError("oracle_every must be positive")

    @property
    def cadence(self) -> int:
        if self.oracle_every is not None:
            return self.oracle_every
        return 1 if self.n <= 16 else 50


@dataclass
class Summary:
    steps: int
    beta: int
    gap: float
    engineering: bool
    max_h_recourse: int
    avg_h_recourse: float
    max_gprime_recourse: int
    max_path: int
    max_ops: int
    max_ops_edcs: int
    max_matching_ops: int
    max_ratio: Optional[float]
    max_discrepancy: Optional[int]
    oracle_checks: int
    rebuilds: int
    longest_rebuild: int
    restarts: int
    h_digest: str
    wall_seconds: float


class Pipeline:
    """The layered structure, fed one G-update at a time."""

    def __init__(self, n: int, cfg: RunConfig):
        self.n = n
        self.cfg = cfg
        self.graph = DynamicGraph(n)
        alpha = parse_sparsifier(cfg.sparsifier)
        self.sparsifier: Optional[Sparsifier] = None
        if alpha is not None:
            seps = cfg.sparsifier_eps if cfg.sparsifier_eps is not None else min(cfg.eps / 4, 0.49)
            self.sparsifier = Sparsifier(n, SparsifierConfig(seps, alpha or None, cfg.steps_per_update))
        self.cal: CalibratedParams = calibrate(
            min(cfg.eps, 0.49), self.degree_cap(), beta=cfg.beta, gap=cfg.gap)
        sub = self.sparsifier.gprime if self.sparsifier else self.graph
        if cfg.mode == "eager":
            self.edcs: EdcsMaintainer = EdcsMaintainer(sub, self.cal.edcs)
            self.bounds = (self.cal.beta, self.cal.edcs.low)
        else:
            self.edcs = LazyEdcs(sub, self.cal.edcs, self.degree_cap(), cfg.batch_size)
            self.bounds = (self.edcs.gamma, self.edcs.gamma_low)
        self.matching = MatchingLayer(n, cfg.eps, self.cal.beta, cfg.work_constant)
        self.table = EdgeTable(n) if cfg.check != "none" else None
        self.hash = hashlib.sha256()

    def degree_cap(self) -> int:
        cap = self.n - 1
        if self.sparsifier is not None:
            cap = min(cap, self.sparsifier.degree_cap())
        return max(cap, 1)

    def apply(self, ev: UpdateEvent) -> dict:
        """Process one G-update; return the raw per-layer numbers."""
        u, v = ev.edge
        if ev.kind is Kind.INSERT:
            self.graph.insert_edge(u, v)
        else:
            self.graph.delete_edge(u, v)
        sp = self.sparsifier
        ops_s = 0
        if sp is not None:
            gcs = sp.insert(u, v) if ev.kind is Kind.INSERT else sp.delete(u, v)
            update_part = len(gcs)
            ops_s = sp.last_ops
            gcs.extend(sp.restart_tick())
            ops_s = sp.last_ops
            if isinstance(self.edcs, LazyEdcs):
                self.edcs.set_degree_cap(self.degree_cap())
        else:
            gcs = ChangeSet()
            (gcs.add if ev.kind is Kind.INSERT else gcs.remove)(u, v)
            update_part = 1
        hcs = ChangeSet()
        paths: list[int] = []
        recourse_per_call: list[int] = []
        ops_e = 0
        for c in gcs.ops:
            if self.table is not None:
                (self.table.insert if c.added else self.table.delete)(c.u, c.v)
            part = self.edcs.insert(c.u, c.v) if c.added else self.edcs.delete(c.u, c.v)
            paths.extend(self.edcs.last.path_lengths)
            recourse_per_call.append(len(part))
            ops_e += self.edcs.last.ops
            hcs.extend(part)
        if self.table is not None:
            self.table.apply_changes(hcs)
        self.matching.apply_changeset(hcs)
        for c in hcs.ops:
            self.hash.update(f"{'+' if c.added else '-'}{c.u},{c.v};".encode())
        self.hash.update(b"\n")
        return dict(gcs=gcs, update_part=update_part, hcs=hcs, paths=paths,
                    recourse_per_call=recourse_per_call, ops_s=ops_s, ops_e=ops_e,
                    ops_m=self.matching.last_ops)

    def state_digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr(sorted(self.graph.edges())).encode())
        h.update(repr(sorted(self.edcs.h_edges())).encode())
        h.update(repr(self.matching.edges()).encode())
        return h.hexdigest()[:16]


def _load_events(cfg: RunConfig) -> tuple[int, list[UpdateEvent]]:
    if cfg.events is not None:
        events = list(cfg.events)
        n = max([cfg.n] + [max(e.edge) + 1 for e in events])
        return n, events
    if cfg.stream is not None:
        n, events = load_stream(Path(cfg.stream).read_text())
        return max(n, 2), events
    return cfg.n, generate_stream(cfg.gen, cfg.n, cfg.steps, cfg.seed, **cfg.gen_params)


def run(cfg: RunConfig, out=None) -> Summary:
    """Process the configured stream; write metrics CSV; return a summary.

    ``out`` may be a text stream that receives the CSV instead of
    ``cfg.metrics``. Raises :class:`CheckFailure` on any failed check.
    """
    t0 = time.perf_counter()
    n, events = _load_events(cfg)
    if cfg.check == "oracle" and n > BLOSSOM_VERTEX_CAP:
        raise ValueError(f"oracle checks need n <= {BLOSSOM_VERTEX_CAP}")
    pipe = Pipeline(n, cfg)
    edcs = pipe.edcs
    lazy = isinstance(edcs, LazyEdcs)
    handle = None
    if out is None and cfg.metrics is not None:
        handle = out = open(cfg.metrics, "w", newline="")
    writer = None
    if out is not None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(METRIC_COLUMNS)

    max_hr = max_gr = max_path = max_ops = max_ops_e = max_ops_m = 0
    total_hr = 0
    max_ratio: Optional[float] = None
    max_dis: Optional[int] = None
    oracle_checks = 0
    cadence = cfg.cadence

    def fail(step, what):
        raise CheckFailure(step, what, pipe.state_digest())

    try:
        for step, ev in enumerate(events):
            r = pipe.apply(ev)
            hr = len(r["hcs"])
            ops_total = r["ops_s"] + r["ops_e"] + r["ops_m"]
            total_hr += hr
            max_hr = max(max_hr, hr)
            max_gr = max(max_gr, r["update_part"])
            step_path = max(r["paths"], default=0)
            max_path = max(max_path, step_path)
            max_ops = max(max_ops, ops_total)
            max_ops_e = max(max_ops_e, r["ops_e"])
            max_ops_m = max(max_ops_m, r["ops_m"])
            mu_g: Optional[int] = None
            dis: Optional[int] = None

            if cfg.check != "none":
                if r["update_part"] > 3:
                    fail(step, f"sparsifier changed {r['update_part']} edges of G'")
                if step_path > edcs.path_bound:
                    fail(step, f"alternating path of length {step_path} > {edcs.path_bound:g}")
                worst = max(r["recourse_per_call"], default=0)
                if worst > edcs.recourse_bound:
                    fail(step, f"H recourse {worst} > {edcs.recourse_bound:g}")
                scan = pipe.table.scan(*pipe.bounds)
                if not scan.ok:
                    fail(step, f"EDCS violated: {scan.p1} heavy H-edges (e.g. {scan.first_p1}), "
                               f"{scan.p2} light non-H edges (e.g. {scan.first_p2})")
                if lazy and step % cfg.discrepancy_every == 0:
                    dis = edcs.check_discrepancy()
                    max_dis = dis if max_dis is None else max(max_dis, dis)
                    if dis > edcs.discrepancy_bound:
                        fail(step, f"discrepancy {dis} > {edcs.discrepancy_bound:g}")
                if pipe.sparsifier is not None and step % cadence == 0:
                    cap = pipe.sparsifier.degree_cap()
                    if pipe.sparsifier.gprime.max_degree() > cap:
                        fail(step, f"G' degree exceeds cap {cap}")

            if cfg.check == "oracle" and step % cadence == 0:
                oracle_checks += 1
                h = edcs.h_edges()
                m_edges = pipe.matching.edges()
                if not is_matching(m_edges, h):
                    fail(step, "served matching is not a matching inside H")
                rep = verify_edcs(edcs.graph.edges(), h, *pipe.bounds)
                if not rep.ok:
                    fail(step, "reference EDCS check disagrees with the fast scan")
                mu_g = max_matching_size(pipe.graph.edges())
                size = pipe.matching.size
                if mu_g:
                    ratio = float("inf") if size == 0 else mu_g / size
                    max_ratio = ratio if max_ratio is None else max(max_ratio, ratio)
                    if ratio > 1.5 + cfg.eps:
                        fail(step, f"approximation ratio {ratio:.4f} > {1.5 + cfg.eps:g}")

            if writer is not None:
                writer.writerow((
                    step, str(ev), r["update_part"], hr, ";".join(map(str, r["paths"])),
                    step_path, r["ops_s"], r["ops_e"], r["ops_m"], ops_total,
                    pipe.matching.size, "" if mu_g is None else mu_g,
                    "" if dis is None else dis,
                ))
    finally:
        if handle is not None:
            handle.close()

    sp = pipe.sparsifier
    return Summary(
        steps=len(events), beta=pipe.cal.beta, gap=pipe.cal.gap,
        engineering=pipe.cal.engineering,
        max_h_recourse=max_hr, avg_h_recourse=total_hr / len(events) if events else 0.0,
        max_gprime_recourse=max_gr, max_path=max_path, max_ops=max_ops,
        max_ops_edcs=max_ops_e, max_matching_ops=max_ops_m,
        max_ratio=max_ratio, max_discrepancy=max_dis, oracle_checks=oracle_checks,
        rebuilds=pipe.matching.rebuilds, longest_rebuild=pipe.matching.longest_rebuild,
        restarts=sp.restarts if sp else 0, h_digest=pipe.hash.hexdigest(),
        wall_seconds=time.perf_counter() - t0,
    )


def metrics_text(cfg: RunConfig) -> str:
    """The metrics CSV of a run as a string (handy for determinism checks)."""
    buf = io.StringIO()
    run(cfg, out=buf)
    return buf.getvalue()
