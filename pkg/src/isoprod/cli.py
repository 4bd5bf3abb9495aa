"""Command-line front end.

Exit codes: 0 success, 1 mismatch against the golden table or a known
construction, 2 usage or input error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys
import time
import warnings

from .catalog import catalog_description
from .classify import (THREADS_ENV, KnownExampleError, classify_abelian, search_nonabelian,
                       verify_known_examples)
from .fuchsian import SignatureError, parse_signature, riemann_hurwitz_genus
from .genvec import (BuildingDataError, enumerate_generating_vectors, is_free_diagonal_action,
                     validate_building_data)
from .groups import GroupError, parse_group_spec
from .moves import MoveError, r_classes
from .replay import replay_moduli_claims
from .report import Report, compare_abelian, compare_nonabelian, to_csv, to_json, to_table

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
ORDER_CAP = 60


class UsageError(Exception):
    pass


def _emit(report: Report, fmt: str, output: str | None):
    if fmt == "json":
        text = to_json(report)
    elif fmt == "csv":
        text = to_csv(report.records)
    else:
        text = to_table(report)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify_abelian(args, argv) -> int:
    t0 = time.perf_counter()
    records = classify_abelian(max_genus=args.max_genus, jobs=args.jobs)
    report = Report(command=argv, catalog=catalog_description(), records=records)
    status = EXIT_OK
    if args.replay_moduli:
        for label in ("I", "II", "III", "IV"):
            report.replay += [r.to_dict() for r in replay_moduli_claims(label, strict=False)]
        if not all(t["ok"] for t in report.replay):
            status = EXIT_MISMATCH
    if not args.no_golden:
        problems = compare_abelian(records)
        report.golden = {"match": not problems, "problems": problems}
        if problems:
            status = EXIT_MISMATCH
    report.seconds = time.perf_counter() - t0
    _emit(report, args.format, args.output)
    return status


def cmd_nonabelian(args, argv) -> int:
    if args.max_order > ORDER_CAP and not args.no_cap:
        raise UsageError(f"--max-order above {ORDER_CAP} needs --no-cap (the catalog stops at {ORDER_CAP})")
    t0 = time.perf_counter()
    status = EXIT_OK
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.verify_known:
            records = verify_known_examples()
            max_order = None
        else:
            records = search_nonabelian(args.max_order, jobs=args.jobs)
            max_order = args.max_order
    report = Report(command=argv, catalog=catalog_description(), records=records,
                    warnings=[str(w.message) for w in caught])
    if args.max_order > ORDER_CAP and not args.verify_known:
        report.warnings.append(f"no catalog groups above order {ORDER_CAP}")
    if not args.no_golden:
        problems = compare_nonabelian(records, max_order=max_order)
        report.golden = {"match": not problems, "problems": problems}
        if problems:
            status = EXIT_MISMATCH
    report.seconds = time.perf_counter() - t0
    _emit(report, args.format, args.output)
    return status


def cmd_orbits(args, argv) -> int:
    t0 = time.perf_counter()
    G = parse_group_spec(args.group)
    sigV = parse_signature(args.signature)
    sigW = parse_signature(args.base_signature)
    if sigV.orbit_genus != 0 or sigW.orbit_genus != 1:
        raise UsageError("the fibre signature needs orbit genus 0 and the base signature orbit genus 1")
    g_F = riemann_hurwitz_genus(G.order, sigV)
    g_C = riemann_hurwitz_genus(G.order, sigW)
    note = ""
    pairs = []
    if g_C < 3 or g_F < 3 or G.order != (g_C - 1) * (g_F - 1):
        note = f"genera g_C={g_C}, g_F={g_F} do not satisfy g >= 3 and |G| = (g_C-1)(g_F-1)"
    else:
        Vs = enumerate_generating_vectors(G, sigV)
        Ws = enumerate_generating_vectors(G, sigW)
        pairs = [(V, W) for W in Ws for V in Vs if is_free_diagonal_action(G, V, W)]
    classes = r_classes(G, pairs, max_visited=args.max_visited) if pairs else []
    for c in classes:
        validate_building_data(G, *c.representative)
    exact = G.is_abelian
    if not exact and classes:
        note = "nonabelian group: class count is a lower bound"
    orbits = {
        "group": G.name, "signature": str(sigV), "base_signature": str(sigW),
        "valid_pairs": len(pairs), "num_classes": len(classes), "exact": exact,
        "classes": [{"size": c.size, "V": c.representative[0].format(G), "W": c.representative[1].format(G)}
                    for c in classes],
    }
    if note:
        orbits["note"] = note
    report = Report(command=argv, catalog=catalog_description(), records=[], orbits=orbits)
    report.seconds = time.perf_counter() - t0
    _emit(report, args.format, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="isoprod",
        description="Classify surfaces with p_g = q = 1 isogenous to an unmixed product.",
        epilog=f"Set {THREADS_ENV} to run independent jobs in parallel processes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv", "table"), default="table")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--jobs", type=int, default=None,
                        help=f"worker processes (default: ${THREADS_ENV} or 1)")

    a = sub.add_parser("classify-abelian", help="families with abelian G")
    common(a)
    a.add_argument("--no-golden", action="store_true", help="skip the golden-table comparison")
    a.add_argument("--replay-moduli", action="store_true",
                   help="append the machine-checked move chains and automorphism maps for I-IV")
    a.add_argument("--max-genus", type=int, default=64, help="search bound for g(C)")
    a.set_defaults(func=cmd_classify_abelian)

    n = sub.add_parser("nonabelian", help="search the nonabelian catalog")
    common(n)
    n.add_argument("--max-order", type=int, default=ORDER_CAP)
    n.add_argument("--no-cap", action="store_true", help=f"allow --max-order above {ORDER_CAP}")
    n.add_argument("--verify-known", action="store_true",
                   help="validate the six explicit nonabelian constructions instead of searching")
    n.add_argument("--no-golden", action="store_true", help="do not require the known rows")
    n.set_defaults(func=cmd_nonabelian)

    o = sub.add_parser("orbits", help="classes of building data for one (G, m, n)")
    common(o)
    o.add_argument("group", help="e.g. 'Z2xZ4', 'S4', 'D4 x Z2'")
    o.add_argument("signature", help="fibre signature, e.g. '(0|2^2,4^2)'")
    o.add_argument("base_signature", help="base signature, e.g. '(1|2^2)'")
    o.add_argument("--max-visited", type=int, default=10_000_000)
    o.set_defaults(func=cmd_orbits)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args, ["isoprod"] + argv)
    except (UsageError, GroupError, SignatureError, MoveError, OSError, ValueError) as e:
        if isinstance(e, BuildingDataError):
            print(f"internal error: {e}", file=sys.stderr)
            return EXIT_INTERNAL
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KnownExampleError as e:
        print(f"known construction failed: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
