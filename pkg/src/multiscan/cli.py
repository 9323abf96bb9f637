"""Command-line entry point: ``multiscan {search,bench,genpatterns,worker,coordinate}``.

Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

from . import bench as bench_mod
from .cluster import LISTEN_ENV, ClusterError, coordinate, serve_worker
from .engine import ALGORITHMS, Engine, make_matcher, warm_up
from .ingest import generate_patterns, load_text, read_patterns, write_patterns
from .partition import DEFAULT_TILE_SIZE
from .wu_manber import WmParams

log = logging.getLogger("multiscan")


class UsageError(Exception):
    pass


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _params(args) -> WmParams:
    return WmParams(args.B, args.B_prime, args.bitshift)


def _load_inputs(args):
    try:
        text = load_text(args.text, limit=args.limit)
        patterns = read_patterns(args.patterns)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(f"{args.patterns}: {exc}") from exc
    return text, patterns


def cmd_search(args, out) -> int:
    t0 = time.perf_counter()
    text, patterns = _load_inputs(args)
    t1 = time.perf_counter()
    try:
        matcher = make_matcher(args.algo, patterns, _params(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t2 = time.perf_counter()
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    if args.tile is not None and args.tile < patterns.m:
        raise UsageError(f"--tile {args.tile} is smaller than pattern length {patterns.m}")
    warm_up()
    with Engine(args.workers) as eng:
        t3 = time.perf_counter()
        per_worker, plan = eng.scan(matcher, text, args.tile)
        t4 = time.perf_counter()
        total = int(per_worker.sum())
        t5 = time.perf_counter()
        print(f"total: {total}", file=out)
        print(f"n: {text.size}  d: {patterns.d}  m: {patterns.m}  algo: {args.algo}  "
              f"workers: {args.workers}", file=out)
        print(f"load: {t1 - t0:.6f}s  preprocess: {t2 - t1:.6f}s  search: {t4 - t3:.6f}s  "
              f"reduce: {t5 - t4:.6f}s", file=out)
        print("per-worker: " + " ".join(str(int(c)) for c in per_worker), file=out)
        if args.positions:
            res = eng.count(matcher, text, args.tile, positions=True)
            for pos, r in res.positions:
                print(f"{pos}\t{r}\t{patterns[r].decode('latin-1')}", file=out)
    return 0


def cmd_bench(args, out) -> int:
    try:
        text = load_text(args.text, limit=args.limit)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    try:
        rows = bench_mod.run_bench(text, args.pattern_sizes, args.set_sizes, args.workers,
                                   args.repeats, args.algos, args.seed, args.tile)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.csv == "-":
        bench_mod.write_csv(rows, out)
    else:
        with open(args.csv, "w", newline="") as fh:
            bench_mod.write_csv(rows, fh)
        out.write(bench_mod.format_table(rows))
    ratios = bench_mod.ac_wm_ratios(rows)
    for r in ratios:
        ref = f"{r['reference']:.2f}x" if r["reference"] else "n/a"
        print(f"# AC faster than WM by {r['ratio']:.2f}x at d={r['d']} m={r['m']} "
              f"(GPU cluster reference: {ref})", file=sys.stderr if args.csv == "-" else out)
    return 0


def cmd_genpatterns(args, out) -> int:
    try:
        text = load_text(args.text, limit=args.limit)
        patterns = generate_patterns(text, args.count, args.length, args.seed)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    write_patterns(args.out, patterns)
    print(f"wrote {patterns.d} patterns of length {patterns.m} to {args.out}", file=out)
    return 0


def cmd_worker(args, out) -> int:
    serve_worker(args.listen)
    return 0


def cmd_coordinate(args, out) -> int:
    if args.inline:
        text, patterns = _load_inputs(args)
        source = {"text": text}
    else:
        if not os.path.isfile(args.text):
            raise UsageError(f"{args.text}: no such file")
        try:
            patterns = read_patterns(args.patterns)
        except (OSError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        source = {"path": args.text}
    endpoints = [e.strip() for e in args.workers.split(",") if e.strip()]
    try:
        res = coordinate(endpoints, args.algo, patterns, params=_params(args),
                         local_workers=args.local_workers, tile_size=args.tile, **source)
    except ClusterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for node in res.nodes:
        print(f"node {node.rank} {node.endpoint} [{node.start}, {node.stop}) "
              f"count={node.count} load={node.load:.6f}s preprocess={node.preprocess:.6f}s "
              f"search={node.search:.6f}s wall={node.wall:.6f}s", file=out)
    print(f"total: {res.total}", file=out)
    return 0


def _add_algo_flags(p):
    p.add_argument("--algo", choices=ALGORITHMS, default="ac")
    p.add_argument("--B", type=int, default=3, help="WM suffix block size")
    p.add_argument("--B-prime", type=int, default=2, help="WM prefix block size")
    p.add_argument("--bitshift", type=int, default=2, help="WM hash shift per character")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multiscan",
                                     description="Multi-pattern exact string counting.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="count pattern occurrences in a text")
    _add_algo_flags(p)
    p.add_argument("--text", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tile", type=int, default=None, nargs="?", const=DEFAULT_TILE_SIZE,
                   help=f"scan in tiles of SIZE characters (default {DEFAULT_TILE_SIZE})")
    p.add_argument("--positions", action="store_true", help="also list every match")
    p.add_argument("--limit", type=int, default=None, help="read at most N characters")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bench", help="time the algorithms over a parameter grid")
    p.add_argument("--text", required=True)
    p.add_argument("--pattern-sizes", type=_int_list, default=[8])
    p.add_argument("--set-sizes", type=_int_list, default=[1000, 8000, 16000])
    p.add_argument("--workers", type=_int_list, default=[1, 2, 4])
    p.add_argument("--algos", type=lambda s: s.split(","), default=list(ALGORITHMS))
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tile", type=int, default=None)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--csv", default="-", help="output CSV path, '-' for stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("genpatterns", help="sample a pattern set from a text")
    p.add_argument("--text", required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--length", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_genpatterns)

    p = sub.add_parser("worker", help="serve cluster assignments")
    p.add_argument("--listen", default=None,
                   help=f"HOST:PORT (default ${LISTEN_ENV} or 127.0.0.1:7878)")
    p.set_defaults(func=cmd_worker)

    p = sub.add_parser("coordinate", help="run a search across cluster workers")
    _add_algo_flags(p)
    p.add_argument("--workers", required=True, help="comma-separated HOST:PORT list")
    p.add_argument("--text", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--inline", action="store_true",
                   help="ship each node its byte range instead of the shared path")
    p.add_argument("--local-workers", type=int, default=1)
    p.add_argument("--tile", type=int, default=None)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_coordinate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 130
    except Exception as exc:
        log.debug("unhandled error", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
