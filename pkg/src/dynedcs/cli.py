"""Command-line driver: ``dynedcs --mode lazy --gen uniform --n 200 --steps 10000``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .graph import GraphError, ParseError
from .pipeline import CHECK_LEVELS, MODES, CheckFailure, RunConfig, parse_sparsifier, run
from .streams import KINDS, InvalidParams


def _sparsifier_arg(text: str) -> str:
    try:
        parse_sparsifier(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _gen_param(text: str) -> tuple[str, int]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.replace("-", "_"), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{key} must be an integer") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dynedcs",
        description="Run a dynamic matching pipeline over a generated or loaded update stream.")
    p.add_argument("--mode", choices=MODES, default="lazy",
                   help="EDCS variant; 'full' adds the sparsifier in front of the lazy variant")
    p.add_argument("--eps", type=float, default=0.5, help="approximation slack (target 3/2 + eps)")
    p.add_argument("--beta", type=int, help="override the EDCS degree bound")
    p.add_argument("--gap", type=float, help="override the EDCS gap parameter")
    p.add_argument("--sparsifier", type=_sparsifier_arg, default="off",
                   help="off, adaptive, or alpha:<k> for a known arboricity bound")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--gen", choices=KINDS, default="uniform", help="stream generator")
    src.add_argument("--stream", metavar="FILE", help="read updates from FILE instead")
    p.add_argument("--n", type=int, default=100, help="vertex count for generated streams")
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--param", type=_gen_param, action="append", default=[], metavar="KEY=INT",
                   help="generator option, e.g. target_m=500, w=100, k=2 (repeatable)")
    p.add_argument("--check", choices=CHECK_LEVELS, default="invariants")
    p.add_argument("--oracle-every", type=int, metavar="K",
                   help="oracle cadence (default: every step for n <= 16, else every 50)")
    p.add_argument("--metrics", metavar="FILE", help="write per-update metrics CSV")
    p.add_argument("--steps-per-update", type=int, default=8, metavar="C",
                   help="sparsifier work units per update (restart gets C - 1)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            mode=args.mode, eps=args.eps, beta=args.beta, gap=args.gap,
            sparsifier=args.sparsifier, gen=args.gen, n=args.n, steps=args.steps,
            seed=args.seed, gen_params=dict(args.param), stream=args.stream,
            check=args.check, oracle_every=args.oracle_every, metrics=args.metrics,
            steps_per_update=args.steps_per_update,
        )
        summary = run(cfg)
    except CheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (ParseError, GraphError, InvalidParams, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(dataclasses.asdict(summary), indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
