"""Command-line entry point: ``streamcomm {run,gen,communities,vertices}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .exceptions import StreamCommError
from .gen import GenConfig, generate
from .runner import ALGORITHMS, RunConfig, run
from .streamio import ensure_dir, parse_stream, read_mapping, write_ground_truth, write_stream
from .temporal import WindowKind, WindowMode, WindowPolicy

__all__ = ["main", "parse_stream"]

log = logging.getLogger("streamcomm")


def _window(args) -> WindowPolicy:
    if args.window == "landmark":
        return WindowPolicy.landmark()
    if args.window_size is None:
        raise StreamCommError("--window sliding needs --window-size")
    stride = args.stride if args.stride is not None else 1
    return WindowPolicy(WindowKind.SLIDING, args.window_size, WindowMode(args.window_mode), stride)


def cmd_run(args) -> int:
    cfg = RunConfig(
        input=Path(args.input),
        out=Path(args.out),
        algorithm=args.algorithm,
        window=_window(args),
        lenient_removes=args.lenient_removes,
        emit_every=args.emit_every,
        densopt=args.densopt,
        seed=args.seed,
    )
    result = run(cfg)
    log.info("processed stream in %.3fs; %d communities", result.elapsed,
             len(set(result.mapping.values())))
    return 0


def cmd_gen(args) -> int:
    cfg = GenConfig(
        n_vertices=args.n,
        degree_exponent=args.gamma,
        size_exponent=args.size_exponent,
        p_in=args.p_in,
        p_out=args.p_out,
        decay_ttl=args.ttl,
        event_probability=args.event_probability,
        iterations=args.iterations,
        seed=args.seed,
    )
    timeline = generate(cfg)
    out = ensure_dir(args.out)
    write_stream(out / "events.csv", timeline.events)
    write_ground_truth(out / "ground_truth.csv", timeline.stable_points)
    log.info("wrote %d events and %d stable points to %s", len(timeline.events),
             len(timeline.stable_points), out)
    return 0


def _load_mapping(out):
    path = Path(out) / "mapping.csv"
    if not path.exists():
        raise StreamCommError(f"{path} not found; run the 'run' subcommand first")
    return read_mapping(path)


def cmd_communities(args) -> int:
    for c in sorted(set(_load_mapping(args.out).values())):
        print(c)
    return 0


def cmd_vertices(args) -> int:
    members = sorted(v for v, c in _load_mapping(args.out).items() if c == args.community)
    if not members:
        print(f"community {args.community} not found", file=sys.stderr)
        return 3
    for v in members:
        print(v)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streamcomm", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="detect communities over an edge-event stream")
    p.add_argument("input", help="event file: op,src,dst[,weight[,timestamp]] per line")
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="dynlouvain")
    p.add_argument("--window", choices=["landmark", "sliding"], default="landmark")
    p.add_argument("--window-size", type=int)
    p.add_argument("--window-mode", choices=["count", "time"], default="count")
    p.add_argument("--stride", type=int, help="1 = overlapping, = window size: non-overlapping")
    p.add_argument("--densopt", action="store_true", help="apply density post-processing")
    p.add_argument("--lenient-removes", action="store_true",
                   help="log and skip removals of absent edges")
    p.add_argument("--emit-every", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="seed for the static-rerun baseline")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("gen", help="generate a synthetic stream with ground truth")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--gamma", type=float, default=2.5, help="degree power-law exponent")
    p.add_argument("--size-exponent", type=float, default=2.0)
    p.add_argument("--p-in", type=float, default=0.8)
    p.add_argument("--p-out", type=float, default=0.05)
    p.add_argument("--ttl", type=int, default=10, help="iterations an interaction survives")
    p.add_argument("--event-probability", type=float, default=0.1)
    p.add_argument("--iterations", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("communities", help="list community ids of a finished run")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("vertices", help="list the members of one community")
    p.add_argument("community", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_vertices)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (StreamCommError, ValueError, OSError) as exc:
        print(f"streamcomm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
