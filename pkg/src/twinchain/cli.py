"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 verification or golden failure,
4 size guard.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import census, hull
from .errors import BoundViolation, SizeError
from .io import InputError, format_pair, read_pair
from .twinned import bound, facet_chains, facet_count

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_SIZE = 0, 2, 3, 4


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("TWINCHAIN_JOBS", "1")))
    except ValueError:
        return 1


def cmd_count(args) -> int:
    P, Q = read_pair(args.pair_file)
    if args.chains:
        fam = facet_chains(P, Q)
        print(f"N = {len(fam)}")
        for c in fam:
            print(json.dumps(c.as_record()))
    else:
        print(f"N = {facet_count(P, Q)}")
    return EXIT_OK


def cmd_verify_geometry(args) -> int:
    P, Q = read_pair(args.pair_file)
    d = P.d
    if args.level == "complete" and d > hull.BRUTE_FORCE_MAX_D:
        raise SizeError(f"level 'complete' needs d <= {hull.BRUTE_FORCE_MAX_D}, got d = {d}")
    pts = hull.point_cloud(P, Q)
    fam = facet_chains(P, Q)
    hrep = hull.hrep_from_chains(fam)
    support = args.level != "validity"
    rep = hull.validate_hrep(pts, hrep, validity=True, facet_support=support,
                             completeness=args.level == "complete")
    failed = False
    for k, p in rep.violations:
        print(f"FAIL validity: row {k} [{hull.format_hrep(hull.HRep(d, (hrep.rows[k],))).strip()}] "
              f"violated by point {p}")
        failed = True
    for k in rep.unsupported_rows:
        print(f"FAIL facet-support: row {k} [{hull.format_hrep(hull.HRep(d, (hrep.rows[k],))).strip()}]")
        failed = True
    if rep.complete is False:
        print(f"FAIL completeness: H-polytope has {rep.hrep_vertices} vertices, cloud has {rep.n_vertices}")
        failed = True
    if args.level in ("facets", "complete"):
        if d <= hull.BRUTE_FORCE_MAX_D:
            bf = hull.brute_force_facets(pts)
            if bf.row_set() != hrep.row_set():
                missing = sorted(bf.row_set() - hrep.row_set())
                extra = sorted(hrep.row_set() - bf.row_set())
                print(f"FAIL brute-force facets: {len(bf)} vs {len(hrep)} from chains; "
                      f"missing {missing}, extra {extra}")
                failed = True
        else:
            print(f"note: brute-force facet comparison skipped for d = {d}")
    nv = rep.n_vertices if rep.n_vertices is not None else len(hull.vertices(pts))
    line = f"{len(hrep)} facets, {nv} vertices"
    if rep.hrep.validated:
        line += f", reflexive: {str(hull.is_reflexive(rep.hrep)).lower()}"
    print(("pass: " if not failed else "fail: ") + line)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_census(args) -> int:
    try:
        report = census.verify_theorem(args.d, exhaustive_labels=True, extended=args.extended,
                                       jobs=args.jobs, out_dir=args.out)
    except BoundViolation as e:
        print(f"BOUND VIOLATION: {e}")
        print(format_pair(e.P, e.Q), end="")
        return EXIT_VERIFY
    print(report.summary())
    if report.equality_verified is False:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_tables(args) -> int:
    reports = census.reproduce_tables(args.which, long=args.long)
    for r in reports:
        print(r.render())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_bound(args) -> int:
    if args.d < 1:
        raise InputError("d", "must be >= 1")
    print(bound(args.d))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twinchain", description="Facet counts of twinned chain polytopes.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="facet count of Gamma(P, Q) for a pair file")
    p.add_argument("pair_file")
    p.add_argument("--chains", action="store_true", help="also print the signed chains, one JSON record per line")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify-geometry", help="check the chain H-representation against the hull")
    p.add_argument("pair_file")
    p.add_argument("--level", choices=["validity", "facets", "complete"], default="facets")
    p.set_defaults(func=cmd_verify_geometry)

    p = sub.add_parser("census", help="exhaustive check of the facet bound at dimension d")
    p.add_argument("d", type=int)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--out", help="directory for shard files, manifest and records (enables resume)")
    p.add_argument("--extended", action="store_true", help="allow d = 6")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("tables", help="recompute the reference tables")
    p.add_argument("which", nargs="?", default="all", choices=["T1", "T3", "T4", "D2", "EX23", "all"])
    p.add_argument("--long", action="store_true", help="include d = 7, 8 in T1")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("bound", help="print the facet bound for dimension d")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_bound)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SizeError as e:
        print(f"size guard: {e}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
