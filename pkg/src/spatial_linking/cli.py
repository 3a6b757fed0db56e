"""Command line front end.

Exit status: 0 success, 1 violated claims (``verify``) or failed criteria
(``selftest``), 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import datetime
import sys
from fractions import Fraction
from typing import Sequence

from . import acceptance
from .aggregate import (
    PAIR_STATISTICS,
    Analysis,
    default_jobs,
    verify_all,
)
from .generators import DEFAULT_BOUND, GenerationError, moment_curve, random_embedding
from .geometry import GenericityError, InvalidEmbeddingError
from .graph import InvalidClassError, pair_classes
from .io import EmbeddingFormatError, dumps_embedding, load_embedding, write_reports, write_sums

CLI_STATS = ("lk", "lk2", "a2", "maxlk")


class UsageError(Exception):
    pass


def parse_direction(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("direction must be dx,dy,dz")
    try:
        d = tuple(Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational in direction {text!r}") from None
    if not any(d):
        raise argparse.ArgumentTypeError("direction must be nonzero")
    return d


def parse_class(text: str) -> tuple[int, int | None]:
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad class {text!r}; use P,Q or P") from None
    if len(parts) == 1:
        return parts[0], None
    if len(parts) == 2:
        return parts[0], parts[1]
    raise argparse.ArgumentTypeError(f"bad class {text!r}; use P,Q or P")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spatial-linking",
        description="Linking numbers and a2 over all cycles of embedded complete graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_opts(p):
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True,
                       help="omit the timestamp header (default on)")

    def compute_opts(p):
        p.add_argument("-i", "--input", required=True, help="embedding JSON file")
        p.add_argument("--direction", type=parse_direction, help="projection direction dx,dy,dz (a/b allowed)")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (default $SPATIAL_LINKING_JOBS or 1)")

    g = sub.add_parser("gen", help="write an embedding file")
    kind = g.add_mutually_exclusive_group(required=True)
    kind.add_argument("--moment", action="store_true", help="vertices on the moment curve (t, t^2, t^3)")
    kind.add_argument("--random", action="store_true", help="seeded random rectilinear embedding")
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--seed", type=int, help="required with --random")
    g.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="coordinate bound B for --random")
    g.add_argument("-o", "--output", help="output file (default: stdout)")

    s = sub.add_parser("sums", help="class sums of lk, lk^2, max|lk| and a2")
    compute_opts(s)
    s.add_argument("--stat", action="append", choices=CLI_STATS,
                   help="statistic (repeatable; default: all)")
    s.add_argument("--pq", action="append", type=parse_class,
                   help="class P,Q for pair statistics or P for a2 (repeatable; default: all)")
    output_opts(s)

    v = sub.add_parser("verify", help="check every identity, congruence and bound")
    compute_opts(v)
    output_opts(v)

    t = sub.add_parser("selftest", help="run the built-in acceptance suite")
    t.add_argument("--quick", action="store_true", help="fewer random embeddings per criterion")
    return parser


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _stamp(args) -> str | None:
    if args.deterministic:
        return None
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def _analysis(args) -> Analysis:
    e = load_embedding(args.input)
    jobs = default_jobs() if args.jobs is None else args.jobs
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return Analysis(e, args.direction, jobs)


def cmd_gen(args) -> int:
    if args.random:
        if args.seed is None:
            raise UsageError("--random needs --seed")
        e = random_embedding(args.n, args.seed, args.bound)
    else:
        e = moment_curve(args.n)
    fh, close = _open_out(args.output)
    try:
        fh.write(dumps_embedding(e))
    finally:
        if close:
            fh.close()
    return 0


def cmd_sums(args) -> int:
    a = _analysis(args)
    stats = args.stat or list(CLI_STATS)
    if args.pq:
        pairs = [(p, q) for p, q in args.pq if q is not None]
        knots = [p for p, q in args.pq if q is None]
    else:
        pairs = pair_classes(a.n)
        knots = list(range(3, a.n + 1))
    rows = []
    for stat in CLI_STATS:
        if stat not in stats:
            continue
        if stat in PAIR_STATISTICS:
            rows += [a.class_sum(p, q, stat) for p, q in pairs]
        else:
            rows += [a.class_sum(p, None, stat) for p in knots]
    fh, close = _open_out(args.output)
    try:
        write_sums(rows, fh, args.format, _stamp(args))
    finally:
        if close:
            fh.close()
    return 0


def cmd_verify(args) -> int:
    a = _analysis(args)
    if a.n < 6:
        raise UsageError(f"verify needs n >= 6, file has n = {a.n}")
    reports = verify_all(a)
    fh, close = _open_out(args.output)
    try:
        write_reports(reports, fh, args.format, _stamp(args))
    finally:
        if close:
            fh.close()
    return 1 if any(r.status == "violated" for r in reports) else 0


def cmd_selftest(args) -> int:
    results = acceptance.run_all(quick=args.quick, echo=print)
    passed = sum(r.passed for r in results)
    print(f"{passed} passed, {len(results) - passed} failed")
    return 0 if passed == len(results) else 1


COMMANDS = {"gen": cmd_gen, "sums": cmd_sums, "verify": cmd_verify, "selftest": cmd_selftest}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidEmbeddingError as exc:
        for v in exc.violations:
            print(f"error: {v.kind}: {v.witness}", file=sys.stderr)
        return 2
    except GenericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EmbeddingFormatError, InvalidClassError, GenerationError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
