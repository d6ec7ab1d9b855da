"""Command-line front end.

    ffdesign construct --runs 16 --factors 12 --format generators
    ffdesign wlp --design A,B,C,D,ABC,ABD,ACD,BCD,ABCD --method both
    ffdesign compare A,B,C,D,ABC,ABD,ACD,BCD,ABCD A,BC,BD,CD,ABC,ABD,ACD,BCD,ABCD
    ffdesign rank --runs 16 --factors 9
    ffdesign enumerate --runs 16
    ffdesign verify --seed 1
    ffdesign matrix --design A,B,AB

Exit status: 0 success, 1 domain error, 2 capability limit, 3 failed check.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .construct import contains_odd_set_image, ma_design
from .enumerate import build_lattice, enumerate_classes, verify_all
from .errors import CapabilityError, DesignError, InvariantViolation
from .gf2 import Design, log2_runs, min_rank_for_size, parity, rank
from .polynomial import compose_wlpp, poly_from_wlp
from .wlp import first_difference, format_wlp, wlp

EXIT_OK, EXIT_DOMAIN, EXIT_CAPABILITY, EXIT_VERIFY = 0, 1, 2, 3


class VerificationFailed(Exception):
    pass


def _m(args) -> int | None:
    return log2_runs(args.runs) if getattr(args, "runs", None) else None


def _design(args) -> Design:
    if not args.design:
        raise DesignError("give a design with --design (columns, I=... generators, or @file)")
    return io.read_design(args.design, _m(args))


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise DesignError(f"{args.command} needs {' and '.join(missing)}")


def poly_wlp(d: Design) -> tuple[int, ...]:
    """WLP of a design holding a copy of O_m, via the composition polynomial."""
    f = contains_odd_set_image(d) if d.m >= 3 else None
    if f is None:
        raise DesignError("the polynomial method needs a design that contains a copy of O_m (k >= n/2)")
    e = Design(d.m, tuple(c for c in d.columns if not parity(f & c)))
    pd = compose_wlpp(d.m, poly_from_wlp(wlp(e)), e.k)
    return tuple(pd[i] for i in range(1, d.k + 1))


def cmd_construct(args, out) -> int:
    _need(args, "runs", "factors")
    result = ma_design(args.factors, args.runs)
    print(io.render(result.design, args.format or "generators", result), file=out)
    return EXIT_OK


def cmd_wlp(args, out) -> int:
    d = _design(args)
    method = args.method
    counted = wlp(d) if method in ("count", "both") else None
    composed = poly_wlp(d) if method in ("poly", "both") else None
    if counted is not None and composed is not None and counted != composed:
        print(f"count {format_wlp(counted)} != poly {format_wlp(composed)}", file=out)
        raise VerificationFailed("counting and polynomial patterns disagree")
    w = counted if counted is not None else composed
    print(format_wlp(w), file=out)
    print(poly_from_wlp(w), file=out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    d1, d2 = (io.read_design(s, _m(args)) for s in args.designs)
    if d1.k != d2.k or d1.m != d2.m:
        raise DesignError(
            f"aberration compares designs with equal k and n (got k={d1.k}, n={d1.n} vs k={d2.k}, n={d2.n})"
        )
    w1, w2 = wlp(d1), wlp(d2)
    r = first_difference(w1, w2)
    if r is None:
        print(f"equal word-length patterns {format_wlp(w1)}", file=out)
    elif w1[r - 1] < w2[r - 1]:
        print(f"d1 smaller aberration (a_{r}: {w1[r - 1]} < {w2[r - 1]})", file=out)
    else:
        print(f"d2 smaller aberration (a_{r}: {w2[r - 1]} < {w1[r - 1]})", file=out)
    return EXIT_OK


def cmd_rank(args, out) -> int:
    if args.design:
        d = _design(args)
        h = d.n - 1 - d.k
        comp = rank(d.complement().columns)
        print(f"rank {d.rank}, complement rank {comp} (least possible for h={h}: {min_rank_for_size(h)})", file=out)
        return EXIT_OK
    _need(args, "runs", "factors")
    classes = enumerate_classes(log2_runs(args.runs), args.factors)
    ranked = sorted(classes, key=lambda d: (wlp(d), d.columns))
    for i, d in enumerate(ranked, 1):
        comp = rank(d.complement().columns)
        print(f"{i} {format_wlp(wlp(d))} {d} complement-rank={comp}", file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    _need(args, "runs")
    m = log2_runs(args.runs)
    if args.edges:
        for line in build_lattice(m).edge_lines():
            print(line, file=out)
        return EXIT_OK
    classes = enumerate_classes(m, args.factors)
    print(f"{len(classes)} classes", file=out)
    if args.factors is None:
        sizes = {}
        for d in classes:
            sizes[d.k] = sizes.get(d.k, 0) + 1
        for k, count in sorted(sizes.items()):
            print(f"k={k}: {count}", file=out)
    else:
        for d in classes:
            print(f"{d} {format_wlp(wlp(d))}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = verify_all(sink=lambda line: print(line, file=out, flush=True), seed=args.seed)
    failed = sum(not r.passed for r in report.results)
    print(f"{len(report.results) - failed} passed, {failed} failed", file=out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_matrix(args, out) -> int:
    if args.design:
        d = _design(args)
    else:
        _need(args, "runs", "factors")
        d = ma_design(args.factors, args.runs).design
    print(io.render_matrix_csv(d), end="", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffdesign", description="Minimum-aberration two-level fractional factorials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("construct", cmd_construct, "build a minimum-aberration design (n/2 <= k <= n-1)")
    p.add_argument("--runs", type=int)
    p.add_argument("--factors", type=int)
    p.add_argument("--format", choices=io.FORMATS)

    p = add("wlp", cmd_wlp, "word-length pattern of a design")
    p.add_argument("--design")
    p.add_argument("--runs", type=int, help="fixes n when the columns do not use every basic factor")
    p.add_argument("--method", choices=("count", "poly", "both"), default="count")

    p = add("compare", cmd_compare, "which of two designs has smaller aberration")
    p.add_argument("designs", nargs=2, metavar="DESIGN")
    p.add_argument("--runs", type=int)

    p = add("rank", cmd_rank, "rank a design's complement, or rank all classes for given n and k")
    p.add_argument("--design")
    p.add_argument("--runs", type=int)
    p.add_argument("--factors", type=int)

    p = add("enumerate", cmd_enumerate, "isomorphism classes of designs")
    p.add_argument("--runs", type=int)
    p.add_argument("--factors", type=int)
    p.add_argument("--edges", action="store_true", help="print the class lattice as k,parent,child lines")

    p = add("verify", cmd_verify, "re-check the theory by brute force")
    p.add_argument("--seed", type=int, default=0)

    p = add("matrix", cmd_matrix, "design matrix as +1/-1 CSV")
    p.add_argument("--design")
    p.add_argument("--runs", type=int)
    p.add_argument("--factors", type=int)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (VerificationFailed, InvariantViolation) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except CapabilityError as exc:
        print(f"capability limit: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
