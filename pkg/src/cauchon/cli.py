"""Command-line surface: censuses, single-diagram reports, identity checks.

All data output is byte-deterministic for a given set of flags: ordering is
fixed and timing goes to stderr, never into the data channel. Exit codes:
0 success, 1 check failure or counterexample, 2 usage error, 3 guardrail
breach, 4 unparseable grid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import census
from .diagram import CauchonDiagram, GridError, enumerate_diagrams, format_grid, parse_grid
from .matching import enumerate_matchings
from .pfaffian import determinant, nullity, pfaffian, skew_adjacency

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARDRAIL = 3
EXIT_PARSE = 4

DEFAULT_MAX_CELLS = 30


class GuardrailError(Exception):
    def __init__(self, cells: int, limit: int):
        super().__init__(
            f"{cells} cells exceeds the guardrail of {limit}; "
            f"raise it with --max-cells or CAUCHON_MAX_CELLS"
        )


class UsageError(Exception):
    pass


def _cell_limit(args: argparse.Namespace) -> int:
    if getattr(args, "max_cells", None) is not None:
        return args.max_cells
    env = os.environ.get("CAUCHON_MAX_CELLS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CAUCHON_MAX_CELLS must be an integer, got {env!r}") from None
    return DEFAULT_MAX_CELLS


def _guard_cells(cells: int, args: argparse.Namespace) -> None:
    limit = _cell_limit(args)
    if cells > limit:
        raise GuardrailError(cells, limit)


def _read_grid(spec: str) -> CauchonDiagram:
    if spec == "-":
        return parse_grid(sys.stdin.read())
    with open(spec, "r", encoding="utf-8") as fh:
        return parse_grid(fh.read())


def _print_elapsed(seconds: float) -> None:
    print(f"elapsed: {seconds:.3f}s", file=sys.stderr)


# --- count / table -------------------------------------------------------------

_CSV_HEADER = "m,n,total,primitive,proportion_num,proportion_den"


def _census_csv_row(record: census.CensusRecord) -> str:
    prop = record.proportion()
    return f"{record.m},{record.n},{record.total},{record.primitive},{prop.numerator},{prop.denominator}"


def _cmd_count(args: argparse.Namespace) -> int:
    if args.rows < 1 or args.cols < 0:
        raise UsageError("--rows must be >= 1 and --cols >= 0")
    mode = census.MODE_FAST if args.mode == "fast" else census.MODE_PFAFFIAN
    if args.histogram and mode == census.MODE_FAST:
        raise UsageError("--histogram is unavailable in fast mode")
    _guard_cells(args.rows * args.cols, args)
    record = census.run_census(args.rows, args.cols, mode=mode, workers=args.workers)
    if args.format == "csv":
        print(_CSV_HEADER)
        print(_census_csv_row(record))
    elif args.format == "json":
        payload = record.to_payload()
        if not args.histogram:
            payload.pop("nullity_histogram")
        print(json.dumps(payload))
    else:
        prop = record.proportion()
        print(f"m: {record.m}")
        print(f"n: {record.n}")
        print(f"mode: {record.mode}")
        print(f"total: {record.total}")
        print(f"primitive: {record.primitive}")
        print(f"proportion: {prop.numerator}/{prop.denominator}")
        if args.histogram and record.nullity_histogram is not None:
            print("nullity histogram:")
            for key in sorted(record.nullity_histogram):
                print(f"  {key}: {record.nullity_histogram[key]}")
    _print_elapsed(record.elapsed)
    return EXIT_OK


def _cmd_table(args: argparse.Namespace) -> int:
    if args.max_rows < 1 or args.max_cols < 1:
        raise UsageError("--max-rows and --max-cols must be >= 1")
    mode = census.MODE_FAST if args.mode == "fast" else census.MODE_PFAFFIAN
    _guard_cells(args.max_rows * args.max_cols, args)
    records = []
    elapsed = 0.0
    for m in range(1, args.max_rows + 1):
        for n in range(1, args.max_cols + 1):
            record = census.run_census(m, n, mode=mode, workers=args.workers)
            records.append(record)
            elapsed += record.elapsed
    if args.format == "csv":
        print(_CSV_HEADER)
        for record in records:
            print(_census_csv_row(record))
    elif args.format == "json":
        rows = []
        for record in records:
            payload = record.to_payload()
            payload.pop("nullity_histogram")
            rows.append(payload)
        print(json.dumps(rows))
    else:
        width = max(len(str(r.primitive)) for r in records) + 2
        header = "m\\n" + "".join(f"{n:>{width}}" for n in range(1, args.max_cols + 1))
        print(header)
        for m in range(1, args.max_rows + 1):
            cells = [r.primitive for r in records if r.m == m]
            print(f"{m:>3}" + "".join(f"{v:>{width}}" for v in cells))
    _print_elapsed(elapsed)
    return EXIT_OK


# --- pfaffian -------------------------------------------------------------------


def _cmd_pfaffian(args: argparse.Namespace) -> int:
    diagram = _read_grid(args.grid)
    pf = pfaffian(diagram)
    det = determinant(diagram)
    primitive = pf != 0
    nul = nullity(diagram) if args.show_nullity else None
    if args.format == "json":
        payload: dict = {
            "rows": diagram.rows,
            "cols": diagram.cols,
            "white_count": diagram.white_count,
            "pfaffian": pf,
            "determinant": det,
        }
        if nul is not None:
            payload["nullity"] = nul
        payload["primitive"] = primitive
        if args.show_matrix:
            payload["matrix"] = [list(row) for row in skew_adjacency(diagram).entries]
        print(json.dumps(payload))
    else:
        print(f"rows: {diagram.rows}")
        print(f"cols: {diagram.cols}")
        print(f"white squares: {diagram.white_count}")
        print(f"pfaffian: {pf}")
        print(f"determinant: {det}")
        if nul is not None:
            print(f"nullity: {nul}")
        print(f"primitive: {'true' if primitive else 'false'}")
        if args.show_matrix:
            print("matrix:")
            for row in skew_adjacency(diagram).entries:
                print("  " + " ".join(f"{v:>2}" for v in row))
    return EXIT_OK


# --- check ----------------------------------------------------------------------

_CHECK_DEFAULTS = {
    "formula-2xn": {"max_n": 9},
    "conjecture-3xn": {"max_n": 7},
    "criterion-2xn": {"max_n": 8},
    "power-of-two": {"max_rows": 4, "max_cols": 4},
    "relation-eqc": {"rows": 2, "max_n": 8},
    "lemma-decomposition": {"max_n": 5},
}

_CONJECTURE_SUBJECTS = {"conjecture-3xn", "power-of-two"}


def _check_arg(args: argparse.Namespace, subject: str, name: str) -> int:
    value = getattr(args, name, None)
    if value is None:
        value = _CHECK_DEFAULTS[subject].get(name)
    if value is None:
        raise UsageError(f"{subject} requires --{name.replace('_', '-')}")
    if value < 1:
        raise UsageError(f"--{name.replace('_', '-')} must be >= 1")
    return value


def _emit_check_rows(rows: list[tuple], header: tuple[str, ...], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps([dict(zip(header, row)) for row in rows]))
    elif fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(str(v) for v in row))
    else:
        for row in rows:
            print("  ".join(f"{k}={v}" for k, v in zip(header, row)))


def _cmd_check(args: argparse.Namespace) -> int:
    subject = args.subject
    fmt = args.format
    failures: list[str] = []
    rows_out: list[tuple] = []
    header: tuple[str, ...]

    if subject in ("formula-2xn", "conjecture-3xn"):
        max_n = _check_arg(args, subject, "max_n")
        grid_rows = 2 if subject == "formula-2xn" else 3
        _guard_cells(grid_rows * max_n, args)
        formula = census.P2_CLOSED if subject == "formula-2xn" else census.P3_CONJECTURED
        result = census.check_formula(formula, range(1, max_n + 1), workers=args.workers)
        header = ("n", "formula", "census", "match")
        for row in result:
            rows_out.append((row.n, str(row.expected), row.actual, row.match))
            if not row.match:
                failures.append(f"n={row.n}: formula={row.expected} census={row.actual}")
    elif subject == "criterion-2xn":
        max_n = _check_arg(args, subject, "max_n")
        _guard_cells(2 * max_n, args)
        result = census.check_criterion_2xn(max_n)
        header = ("n", "diagrams", "mismatches")
        for row in result:
            rows_out.append((row.n, row.diagrams, len(row.mismatches)))
            failures.extend(row.mismatches)
    elif subject == "power-of-two":
        max_rows = _check_arg(args, subject, "max_rows")
        max_cols = _check_arg(args, subject, "max_cols")
        _guard_cells(max_rows * max_cols, args)
        report = census.scan_power_of_two(max_rows, max_cols)
        header = ("checked", "violations")
        rows_out.append((report.checked, len(report.violations)))
        failures.extend(
            f"{v.m}x{v.n} pfaffian={v.pfaffian}\n{v.grid}" for v in report.violations
        )
    elif subject == "relation-eqc":
        m = _check_arg(args, subject, "rows")
        max_n = _check_arg(args, subject, "max_n")
        _guard_cells(m * max_n, args)
        result = census.check_relation_eqc(m, max_n)
        header = ("n", "total", "binomial_sum", "match")
        for row in result:
            rows_out.append((row.n, row.total, row.binomial_sum, row.match))
            if not row.match:
                failures.append(
                    f"n={row.n}: total={row.total} binomial_sum={row.binomial_sum}"
                )
    elif subject == "lemma-decomposition":
        max_n = _check_arg(args, subject, "max_n")
        _guard_cells(2 * max_n, args)
        result = census.check_lemma_decomposition(max_n)
        header = ("n", "diagrams", "subsets", "mismatches")
        for row in result:
            rows_out.append((row.n, row.diagrams, row.subsets, len(row.mismatches)))
            failures.extend(row.mismatches)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown check subject {subject!r}")

    _emit_check_rows(rows_out, header, fmt)
    if failures:
        print("FAIL", file=sys.stdout)
        for failure in failures:
            print(failure)
        return EXIT_CHECK_FAILED
    if fmt == "text":
        if subject in _CONJECTURE_SUBJECTS:
            print("no counterexample found")
        else:
            print("PASS")
    return EXIT_OK


# --- enumerate / matchings -------------------------------------------------------


def _cmd_enumerate(args: argparse.Namespace) -> int:
    if args.rows < 1 or args.cols < 0:
        raise UsageError("--rows must be >= 1 and --cols >= 0")
    _guard_cells(args.rows * args.cols, args)
    for diagram in enumerate_diagrams(args.rows, args.cols):
        pf = pfaffian(diagram)
        nul = nullity(diagram)
        if args.format == "text":
            print(format_grid(diagram))
            print(
                f"d={diagram.white_count} pfaffian={pf} nullity={nul} "
                f"primitive={'true' if pf else 'false'}"
            )
            print()
        else:
            print(
                json.dumps(
                    {
                        "mask": format_grid(diagram).split("\n"),
                        "d": diagram.white_count,
                        "pfaffian": pf,
                        "nullity": nul,
                        "primitive": pf != 0,
                    }
                )
            )
    return EXIT_OK


def _cmd_matchings(args: argparse.Namespace) -> int:
    diagram = _read_grid(args.grid)
    for matching in enumerate_matchings(diagram):
        edges = sorted(tuple(sorted(edge)) for edge in matching.edges)
        sign = matching.sign
        if args.format == "text":
            rendered = "".join(f"({i},{j})" for i, j in edges)
            print(f"sign={'+1' if sign > 0 else '-1'} edges={rendered}")
        else:
            print(json.dumps({"edges": [list(edge) for edge in edges], "sign": sign}))
    return EXIT_OK


# --- parser -----------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, *, workers: bool = False) -> None:
    parser.add_argument("--max-cells", type=int, default=None, help="guardrail on m*n")
    if workers:
        parser.add_argument("--workers", type=int, default=None, help="process count (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchon",
        description="Exact enumeration of Cauchon diagrams and primitivity of the "
        "corresponding torus-invariant primes of quantum matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="census a single grid shape")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--mode", choices=["pfaffian", "fast"], default="pfaffian")
    p.add_argument("--histogram", action="store_true", help="include the nullity histogram")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    _add_common(p, workers=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("table", help="grid of primitive counts, like a P(m,n) table")
    p.add_argument("--max-rows", type=int, required=True)
    p.add_argument("--max-cols", type=int, required=True)
    p.add_argument("--mode", choices=["pfaffian", "fast"], default="pfaffian")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    _add_common(p, workers=True)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("pfaffian", help="exact report for one grid")
    p.add_argument("--grid", required=True, help="grid file path, or - for stdin")
    p.add_argument("--show-matrix", action="store_true")
    p.add_argument("--show-nullity", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_pfaffian)

    p = sub.add_parser("check", help="verify identities and scan conjectures")
    p.add_argument(
        "subject",
        choices=[
            "formula-2xn",
            "conjecture-3xn",
            "criterion-2xn",
            "power-of-two",
            "relation-eqc",
            "lemma-decomposition",
        ],
    )
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-rows", type=int, default=None)
    p.add_argument("--max-cols", type=int, default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    _add_common(p, workers=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("enumerate", help="stream every diagram of a shape")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--format", choices=["jsonl", "text"], default="jsonl")
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("matchings", help="stream the perfect matchings of one grid")
    p.add_argument("--grid", required=True, help="grid file path, or - for stdin")
    p.add_argument("--format", choices=["jsonl", "text"], default="jsonl")
    p.set_defaults(func=_cmd_matchings)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardrailError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARDRAIL
    except GridError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
