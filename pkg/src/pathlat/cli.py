"""Command-line entry point: ``pathlat <command> [options]``.

Exit codes: 0 success, 1 consistency failure or guard violation, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import characteristic as ch
from . import export
from . import rankpoly as rp
from .errors import NoClosedForm, SizeLimitExceeded
from .order import build_lattice
from .paths import GUARD_ENV, PathFamily, area, enumerate_paths, rank
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _family(text: str) -> PathFamily:
    try:
        return PathFamily.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _size(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("size must be non-negative")
    return value


def _shown(steps: str) -> str:
    return steps or "(empty)"


def cmd_enumerate(args) -> int:
    paths = enumerate_paths(args.family, args.n, guard=args.max_elements)
    for p in paths:
        args.out.write(f"{_shown(p.steps)}\t{rank(p)}\t{area(p)}\n")
    args.out.write(f"{len(paths)}\n")
    return EXIT_OK


def cmd_lattice(args) -> int:
    lat = build_lattice(args.family, args.n, guard=args.max_elements)
    chi = ch.chi_table(lat) if args.annotate == "chi" else None
    if args.format == "json":
        doc = json.loads(export.lattice_to_json(lat))
        if chi is not None:
            for e in doc["elements"]:
                e["chi"] = chi[e["id"]]
        args.out.write(json.dumps(doc, indent=1) + "\n")
    else:
        args.out.write(export.lattice_to_dot(lat, chi))
    return EXIT_OK


def cmd_chi(args) -> int:
    lat = build_lattice(args.family, args.n, guard=args.max_elements)
    rows = ch.chi_rows(lat)
    if args.path is not None:
        rows = [rows[lat.index(args.path)]]
    status = EXIT_OK
    for r in rows:
        if r["chi_combinatorial"] is not None and r["chi_combinatorial"] != r["chi"]:
            print(f"mismatch at {_shown(r['path'])}: valuation chi {r['chi']}, "
                  f"combinatorial chi {r['chi_combinatorial']}", file=sys.stderr)
            status = EXIT_FAIL
    if args.format == "csv":
        args.out.write(export.chi_csv(rows))
    elif args.format == "json":
        doc = [dict(r, tunnel_list=[list(t.as_triple()) for t in _tunnels(lat, r["id"])]) for r in rows]
        args.out.write(json.dumps(doc, indent=1) + "\n")
    else:
        for r in rows:
            prof = " ".join(f"t{k}={v}" for k, v in enumerate(r["tunnels"]))
            combo = "n/a" if r["chi_combinatorial"] is None else r["chi_combinatorial"]
            args.out.write(f"id={r['id']} path={_shown(r['path'])} rank={r['rank']} "
                           f"chi={r['chi']} combinatorial={combo} {prof}".rstrip() + "\n")
    return status


def _tunnels(lat, i):
    try:
        return ch.tunnels(lat.paths[i])
    except NoClosedForm:
        return []


def cmd_poly(args) -> int:
    try:
        rows = rp.whitney_rows(args.family, args.max_n)
    except ValueError:
        # no recurrence for this family: count ranks directly
        rows = [(n, rp.rank_polynomial_enumerated(build_lattice(args.family, n, guard=args.max_elements)))
                for n in range(args.max_n + 1)]
    if args.format == "csv":
        args.out.write(export.whitney_csv(rows))
    else:
        args.out.write(export.whitney_triangle(rows))
    if args.series_order is not None:
        ok = rp.verify_series_identity(args.family, args.series_order, guard=args.max_order)
        print(f"series-identity {args.family} order {args.series_order}: {'PASS' if ok else 'FAIL'}",
              file=args.out)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    # the suites build lattices internally, so the guard travels through the environment
    saved = os.environ.get(GUARD_ENV)
    if args.max_elements is not None:
        os.environ[GUARD_ENV] = str(args.max_elements)
    try:
        results = run_suites(args.suite)
    finally:
        if saved is None:
            os.environ.pop(GUARD_ENV, None)
        else:
            os.environ[GUARD_ENV] = saved
    failed = 0
    for name, checks in results:
        args.out.write(f"[{name}]\n")
        for c in checks:
            args.out.write(c.line() + "\n")
            failed += not c.ok
    args.out.write(f"{failed} failing check(s)\n")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathlat", description="Lattices of Dyck-like, Motzkin and Schröder paths.")
    parser.add_argument("--max-elements", type=_positive, default=None,
                        help=f"lattice size guard (default 20000, or ${GUARD_ENV})")
    parser.add_argument("--max-order", type=_positive, default=rp.DEFAULT_SERIES_ORDER,
                        help="largest truncation order for series identities (default 16)")
    parser.add_argument("-o", "--output", default=None, help="write to this file instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(p, with_n=True):
        p.add_argument("--family", type=_family, required=True, help="dyck | dycklike:a,b | motzkin | schroder")
        if with_n:
            p.add_argument("-n", type=_size, required=True, help="path size")

    p = sub.add_parser("enumerate", help="list paths with rank and area")
    family_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("lattice", help="export the Hasse diagram")
    family_args(p)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--annotate", choices=["chi"], default=None)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("chi", help="Euler characteristic table")
    family_args(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--path", help="a single element, as a step word")
    which.add_argument("--all", action="store_true", help="every element")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("poly", help="rank polynomials and Whitney triangle")
    family_args(p, with_n=False)
    p.add_argument("--max-n", type=_size, required=True)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--series-order", type=_size, default=None,
                   help="also check the generating-series identity to this order")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", nargs="+", choices=list(SUITES) + ["all"], default=["all"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "suite", None) and "all" in args.suite:
        args.suite = ["all"]
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    args.out = out
    try:
        return args.func(args)
    except SizeLimitExceeded as exc:
        print(f"pathlat: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        # bad path words, paths of the wrong size, families without a recurrence
        print(f"pathlat: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
