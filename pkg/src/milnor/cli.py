"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 validation or verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .catalog import (
    Catalog,
    SampleFormatError,
    SampleValidationError,
    builtin_catalog,
    consistency_problems,
    interpolation_rows,
    load_samples,
    verify_catalog,
)
from .core import PolynomialError
from .germs import (
    GermError,
    GradingCone,
    MapGerm,
    check_weighted_homogeneous,
    emit_ideal,
    infer_grading,
    multiple_point_ideal,
)
from .grading import Grading, GradingError, chern_data
from .interpolation import (
    MAX_DEGREE,
    InterpolationError,
    enumerate_multi_indices,
    paper_b_table,
    render_formula,
    solve_coefficients,
)
from .invariants import MU_I, invariant_report

log = logging.getLogger("milnor")

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2


class UsageError(ValueError):
    """Bad input detected by a command; reported with exit code 2."""


def _fmt(v) -> str:
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _names(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def _catalog(path: str | None) -> Catalog:
    return Catalog(load_samples(path)) if path else builtin_catalog()


# eval

def cmd_eval(args) -> int:
    g = Grading(args.weights, args.degrees)
    data = chern_data(g)
    report = invariant_report(g, slices=args.slices)
    kv = [("n", g.n), ("weights", ",".join(map(str, g.w))), ("degrees", ",".join(map(str, g.d)))]
    kv += [(f"sigma{k}", data.sigma[k]) for k in range(1, g.n + 1)]
    kv += [(f"delta{k}", data.delta[k]) for k in range(1, g.n + 2)]
    kv += [(f"c{k}", data.c[k]) for k in range(1, g.n + 1)]
    kv += [("s0", data.s0), ("mu_I", report.mu)]
    for e in report.entries:
        key = f"#{e.label}" + (" (slice)" if e.via_slice else "")
        kv.append((key, e.error and "n/a" or e.value))
    kv += [("flag", f) for f in report.flags]
    if args.format == "kv":
        for k, v in kv:
            print(f"{k} = {_fmt(v)}")
        return EXIT_OK
    print(f"grading {g}  (n = {g.n})")
    print("  sigma: " + " ".join(_fmt(x) for x in data.sigma[1:]))
    print("  delta: " + " ".join(_fmt(x) for x in data.delta[1:]))
    print("  c:     " + " ".join(_fmt(x) for x in data.c[1:]))
    print(f"  s0:    {_fmt(data.s0)}")
    print(f"{'invariant':<12} {'value':>10}  note")
    print(f"{'mu_I':<12} {_fmt(report.mu):>10}")
    for e in report.entries:
        note = "slice, caveat: value of the sliced germ" if e.via_slice else ""
        if e.error:
            note = e.error
        print(f"{'#' + e.label:<12} {_fmt(e.value):>10}  {note}".rstrip())
    for f in report.flags:
        print(f"flag: {f}")
    return EXIT_OK


# interpolate

def cmd_interpolate(args) -> int:
    catalog = _catalog(args.samples)
    if args.only:
        catalog = catalog.only(_names(args.only))
    if args.exclude:
        catalog = catalog.without(_names(args.exclude))
    deg = args.max_degree
    rows = interpolation_rows(catalog, max_n=deg)
    result = solve_coefficients(rows, deg)
    n_unknowns = len(result.unknowns)
    print(f"rows: {len(rows)}  unknowns: {n_unknowns}  rank: {result.rank}")
    if args.trace:
        for t in result.trace:
            print(f"  {'+' if t.independent else '.'} rank {t.rank_after:>2}  n={t.n}  {t.row}")
    if result.unique:
        print("solution: unique")
        for n in range(2, deg + 1):
            print(f"n={n}: {render_formula(result.table, n)}")
    else:
        print(f"solution: underdetermined ({n_unknowns - result.rank} free)")
        print("free unknowns: " + ", ".join(str(a) for a in result.free))
        for i, vec in enumerate(result.kernel, 1):
            terms = ", ".join(f"{a}: {_fmt(v)}" for a, v in vec.items() if v)
            print(f"kernel {i}: {terms}")
    if not args.verify:
        return EXIT_OK
    reference = paper_b_table().restrict(deg)
    if not result.unique:
        print(f"verify: cannot compare, {n_unknowns - result.rank} coefficients undetermined")
        return EXIT_INVALID
    diffs = result.table.diff(reference)
    total = len(enumerate_multi_indices(deg))
    print(f"{total - len(diffs)}/{total} coefficients match")
    for a, got, want in diffs:
        print(f"  {a}: solved {_fmt(got)}, reference {_fmt(want)}")
    return EXIT_OK if not diffs else EXIT_INVALID


# germ

def _read_germ_file(path: str) -> tuple[MapGerm, Grading | None]:
    """Germ file: ``vars = ...``, ``map = ...`` and optional ``weights``/``degrees``.

    A single ``[sample]`` block of the sample format is accepted too.
    """
    fields: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line == "[sample]":
            continue
        if "=" not in line:
            raise SampleFormatError(f"expected 'key = value', got {line!r}", lineno, path)
        key, value = (s.strip() for s in line.split("=", 1))
        fields[key] = (lineno, value)
    for key in ("vars", "map"):
        if key not in fields:
            raise SampleFormatError(f"germ file needs a {key!r} line", None, path)
    germ = MapGerm.from_text(fields["vars"][1], fields["map"][1])
    grading = None
    if "weights" in fields and "degrees" in fields:
        grading = Grading(_int_list(fields["weights"][1]), _int_list(fields["degrees"][1]))
    return germ, grading


def _germ_from_args(args) -> tuple[MapGerm, Grading | None, str]:
    if args.name:
        s = builtin_catalog().germ_sample(args.name)
        return s.germ, s.grading, s.name
    germ, grading = _read_germ_file(args.file)
    return germ, grading, args.file


def cmd_germ(args) -> int:
    germ, grading, label = _germ_from_args(args)
    if args.weights or args.degrees:
        if not (args.weights and args.degrees):
            raise UsageError("--weights and --degrees go together")
        grading = Grading(args.weights, args.degrees)
    if args.action == "check":
        if grading is None:
            raise UsageError("no grading: give --weights/--degrees or put them in the germ file")
        result = check_weighted_homogeneous(germ, grading)
        print(f"{label}: {germ}")
        print(f"grading {grading}: {result}")
        return EXIT_OK if result else EXIT_INVALID
    if args.action == "grading":
        inferred = infer_grading(germ)
        if isinstance(inferred, GradingCone):
            print(f"{label}: gradings form a cone of dimension {inferred.dimension}")
            for vec in inferred.basis:
                print("  basis " + " ".join(_fmt(x) for x in vec))
            return EXIT_OK
        print(f"w={','.join(map(str, inferred.w))} d={','.join(map(str, inferred.d))}")
        return EXIT_OK
    if args.k is None:
        raise UsageError("multipoints needs --k")
    ideal = multiple_point_ideal(germ, args.k)
    sys.stdout.write(emit_ideal(ideal, args.style))
    return EXIT_OK


# verify-paper

def cmd_verify_paper(args) -> int:
    catalog = _catalog(args.samples)
    checks = verify_catalog(catalog, n=args.n)
    rows: dict[str, list] = {}
    for c in checks:
        rows.setdefault(c.sample, []).append(c)
    for name, cells in rows.items():
        status = "ok  " if all(c.ok for c in cells) else "FAIL"
        body = "  ".join(
            f"{'mu' if c.label == MU_I else '#' + c.label}={_fmt(c.got)}" + ("" if c.ok else "!")
            for c in cells
        )
        print(f"{status} n={cells[0].n} {name:<16} {body}")
    failures = [c for c in checks if not c.ok]
    for c in failures:
        print(f"mismatch: sample={c.sample} label={c.label} expected={_fmt(c.expected)} got={_fmt(c.got)}")
    for c in checks:
        if c.erratum is not None:
            print(f"erratum: sample={c.sample} label={c.label} printed={_fmt(c.erratum)} computed={_fmt(c.got)}")
    problems = consistency_problems(catalog) if args.n is None else []
    for p in problems:
        print(f"consistency: {p}")
    print(f"{len(checks) - len(failures)}/{len(checks)} cells reproduced")
    return EXIT_OK if not failures and not problems else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="milnor", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate mu_I and the 0-stable invariants of a grading")
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--degrees", type=_int_list, required=True)
    p.add_argument("--slices", action="store_true", help="also evaluate lower-dimensional labels on slices")
    p.add_argument("--format", choices=("table", "kv"), default="table")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("interpolate", help="solve for the universal coefficients from samples")
    p.add_argument("--samples", help="sample file (default: builtin catalog)")
    p.add_argument("--max-degree", type=int, default=MAX_DEGREE, choices=range(1, MAX_DEGREE + 1))
    p.add_argument("--exclude", help="comma-separated sample names to drop")
    p.add_argument("--only", help="comma-separated sample names to keep")
    p.add_argument("--verify", action="store_true", help="compare with the reference table")
    p.add_argument("--trace", action="store_true", help="print per-row independence")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("germ", help="homogeneity, grading inference and multiple point ideals")
    p.add_argument("action", choices=("check", "grading", "multipoints"))
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--name", help="germ from the builtin catalog, e.g. H_2 or A_1")
    src.add_argument("--file", help="germ file with vars/map (and optionally weights/degrees)")
    p.add_argument("--weights", type=_int_list)
    p.add_argument("--degrees", type=_int_list)
    p.add_argument("--k", type=int)
    p.add_argument("--style", choices=("plain", "cas"), default="plain")
    p.set_defaults(func=cmd_germ)

    p = sub.add_parser("verify-paper", help="recompute every stored table value")
    p.add_argument("--samples", help="sample file (default: builtin catalog)")
    p.add_argument("--n", type=int, help="restrict to rows of this dimension")
    p.set_defaults(func=cmd_verify_paper)
    return parser


_INPUT_ERRORS = (
    UsageError,
    GradingError,
    SampleFormatError,
    SampleValidationError,
    PolynomialError,
    GermError,
    InterpolationError,
    KeyError,
    OSError,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
