"""Command-line interface: census, catalog, verify, density, export-spec.

Exit codes: 0 success, 1 usage or data errors (including a refused
enumeration), 2 a violated census identity, which would mean either a
bug or a counterexample and is treated as a build-breaking event.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog, census, density
from .permutations import (DEFAULT_ELEMENT_CAP, CapExceeded,
                           NotTransitiveError)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

FAMILIES = ("cyclic", "holomorph", "sym", "alt", "wreath", "pgl", "pgammal",
            "duality", "sharpness", "spec")


def _require(args, names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ValueError(f"--family {args.family} requires --{name.replace('_', '-')}")


def build_group(args):
    """Resolve the group source flags into (name, PermGroup)."""
    family = args.family
    if family == "cyclic":
        _require(args, ["n"])
        return f"cyclic({args.n})", catalog.cyclic_regular(args.n)
    if family == "holomorph":
        _require(args, ["m"])
        return f"holomorph({args.m})", catalog.holomorph_cyclic(args.m)
    if family == "sym":
        _require(args, ["n"])
        return f"sym({args.n})", catalog.symmetric(args.n)
    if family == "alt":
        _require(args, ["n"])
        return f"alt({args.n})", catalog.alternating(args.n)
    if family == "wreath":
        _require(args, ["inner", "outer"])
        inner = catalog.family_instance(args.inner)
        outer = catalog.family_instance(args.outer)
        return (f"wreath({args.inner},{args.outer})",
                catalog.wreath_imprimitive(inner, outer))
    if family == "pgl":
        _require(args, ["d", "q"])
        return f"pgl({args.d},{args.q})", catalog.pgl(args.d, args.q)
    if family == "pgammal":
        _require(args, ["d", "q"])
        return f"pgammal({args.d},{args.q})", catalog.pgammal(args.d, args.q)
    if family == "duality":
        _require(args, ["d", "q"])
        return f"duality({args.d},{args.q})", catalog.duality_extension(args.d, args.q)
    if family == "sharpness":
        _require(args, ["k"])
        return f"sharpness({args.k})", catalog.sharpness_group(args.k)
    if family == "spec":
        _require(args, ["spec_file"])
        return args.spec_file, catalog.load_group_spec(args.spec_file)
    raise ValueError(f"unknown family {family!r}")


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _print_report_text(name: str, report, out):
    print(f"group: {name}", file=out)
    d = report.to_json_dict()
    d["bound"] = _fmt_fraction(report.bound)
    d["tower"] = ("none" if report.tower is None
                  else "*".join(str(p) for p in report.tower))
    for key in ("degree", "order", "n_cycle_count", "class_count",
                "cyclic_transitive_count", "bound", "phi_n", "equality",
                "solvable", "structure_verdict", "count_divides_order", "tower"):
        print(f"  {key}: {d[key]}", file=out)


def cmd_census(args, out) -> int:
    name, group = build_group(args)
    report = census.theorem_verdict(group, cap=args.cap, workers=args.workers)
    problems = census.validate_report(report)
    if args.format == "json":
        payload = {"name": name, **report.to_json_dict()}
        print(json.dumps(payload, indent=2), file=out)
    else:
        _print_report_text(name, report, out)
    if problems:
        print("BOUND VIOLATION: " + "; ".join(problems), file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    print("constructible families (flags in parentheses):", file=out)
    lines = [
        "cyclic     (--n N)           regular cyclic group on N points",
        "holomorph  (--m M)           all maps i -> u*i + t on Z/M",
        "sym        (--n N)           symmetric group",
        "alt        (--n N)           alternating group, N >= 3",
        "wreath     (--inner C --outer C)  imprimitive wreath product; codes c<N>, s<N>, a<N>, hol<N>, sharp<K>",
        "pgl        (--d D --q Q)     projective linear group on (Q^D-1)/(Q-1) points",
        "pgammal    (--d D --q Q)     pgl extended by field automorphisms",
        "duality    (--d 3 --q 2|3)   pgl(3,q) extended by point-hyperplane duality",
        "sharpness  (--k K)           degree 2*3^K group attaining the subgroup bound",
        "spec       (--spec-file F)   group loaded from a .grp file",
    ]
    for line in lines:
        print("  " + line, file=out)
    data = catalog.data_dir()
    print(f"data directory: {data}", file=out)
    for path in sorted(data.glob("*.grp")) if data.is_dir() else []:
        print(f"  {path.name}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.suite != "feit-jones":
        raise ValueError(f"unknown suite {args.suite!r} (available: feit-jones)")
    rows = census.run_sweep(instance_cap=args.instance_cap,
                            subgroup_count=args.random_subgroups,
                            subgroup_order_cap=args.subgroup_order_cap,
                            seed=args.seed, workers=args.workers,
                            include_m23=args.include_m23)
    violations = [r for r in rows if r.status == "violation"]
    if args.format == "json":
        payload = []
        for r in rows:
            payload.append({
                "name": r.name, "degree": r.degree, "order": r.order,
                "status": r.status, "detail": r.detail,
                "report": r.report.to_json_dict() if r.report else None,
            })
        print(json.dumps(payload, indent=2), file=out)
    else:
        header = (f"{'name':<24} {'deg':>4} {'order':>10} {'#ncyc':>7} "
                  f"{'cls':>4} {'phi':>4} {'subs':>6} {'bound':>8} eq struct")
        print(header, file=out)
        for r in rows:
            if r.report is None:
                print(f"{r.name:<24} {r.degree:>4} {r.order:>10} "
                      f"{r.status.upper()}: {r.detail}", file=out)
                continue
            rep = r.report
            print(f"{r.name:<24} {r.degree:>4} {r.order:>10} "
                  f"{rep.n_cycle_count:>7} {rep.class_count:>4} {rep.phi_n:>4} "
                  f"{rep.cyclic_transitive_count:>6} {_fmt_fraction(rep.bound):>8} "
                  f"{'=' if rep.equality else '<'}  {rep.structure_verdict}",
                  file=out)
        censused = sum(1 for r in rows if r.status == "ok")
        skipped = sum(1 for r in rows if r.status == "skipped")
        print(f"censused {censused}, skipped {skipped}, "
              f"violations {len(violations)}", file=out)
    if violations:
        for r in violations:
            print(f"BOUND VIOLATION in {r.name}: {r.detail}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_density(args, out) -> int:
    coeffs = density.parse_polynomial(args.poly)
    predicted = None
    if args.predict:
        group = catalog.family_instance(args.predict)
        predicted = density.predicted_density(group, cap=args.cap)
    report = density.density_report(coeffs, bound=args.bound, floor=args.floor,
                                    predicted=predicted, workers=args.workers)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2), file=out)
    else:
        d = report.to_json_dict()
        d["empirical_density"] = (_fmt_fraction(report.empirical_density)
                                  + f" ~ {float(report.empirical_density):.6f}")
        d["ceiling"] = (_fmt_fraction(report.ceiling)
                        + f" ~ {float(report.ceiling):.6f}")
        if report.predicted is not None:
            d["predicted"] = _fmt_fraction(report.predicted)
        for key in ("polynomial", "degree", "bound", "floor", "primes_tested",
                    "primes_skipped", "inert_count", "empirical_density",
                    "ceiling", "predicted"):
            print(f"  {key}: {d[key]}", file=out)
    return EXIT_OK


def cmd_export_spec(args, out) -> int:
    name, group = build_group(args)
    text = catalog.write_group_spec(group, name, comment=name)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=out)
    else:
        print(text, end="", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycle-census",
        description="census of n-cycles and cyclic transitive subgroups, "
                    "and prime-density experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_group_flags(p):
        p.add_argument("--family", required=True, choices=FAMILIES)
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--inner")
        p.add_argument("--outer")
        p.add_argument("--spec-file")

    def add_common(p, default_format="text"):
        p.add_argument("--cap", type=int, default=DEFAULT_ELEMENT_CAP,
                       help="maximum group order for exhaustive enumeration")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=("text", "json"),
                       default=default_format)

    p = sub.add_parser("census", help="census one group")
    add_group_flags(p)
    add_common(p, default_format="json")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("catalog", help="list constructible families")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("--suite", default="feit-jones")
    p.add_argument("--instance-cap", type=int, default=200_000)
    p.add_argument("--random-subgroups", type=int, default=200)
    p.add_argument("--subgroup-order-cap", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=20240809)
    p.add_argument("--include-m23", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("density", help="prime-density experiment for a polynomial")
    p.add_argument("--poly", required=True,
                   help="integer or rational polynomial, e.g. x^6+x^3+1")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--floor", type=int, default=0,
                   help="ignore primes at or below this value")
    p.add_argument("--predict",
                   help="family code whose n-cycle fraction to attach "
                        "(c<N>, s<N>, a<N>, hol<N>, sharp<K>)")
    add_common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("export-spec", help="write a catalog group as a .grp file")
    add_group_flags(p)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.set_defaults(func=cmd_export_spec)

    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except CapExceeded as exc:
        print(f"error: {exc}; raise --cap to enumerate anyway", file=sys.stderr)
        return EXIT_ERROR
    except census.CensusInvariantError as exc:
        print(f"CENSUS INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, NotTransitiveError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def console_main() -> None:
    sys.exit(main())
