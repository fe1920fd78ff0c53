"""Command-line front end: ``uniratio <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

from .client import UniRatio
from .exceptions import ClassificationUnstableError, InvalidSpecError, UniRatioError, exit_code_for
from .family import FamilySpec
from .named import FamilyParams
from .solver import PairSource

logger = logging.getLogger("uniratio")

CONJECTURE_M = 200
CONJECTURE_VALUE = 0.209
DEFAULT_SALEM_RANGE = "1..12"
DEFAULT_HBOUNDS_RANGE = "2..50"

Handler = Callable[[UniRatio, argparse.Namespace], int]


class _ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors become input errors (exit code 1)."""

    def error(self, message: str) -> Any:  # type: ignore[override]
        raise InvalidSpecError(message)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code.

    Exit codes: 0 success, 1 input error, 2 degenerate envelope, 3 numeric-consistency failure.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except InvalidSpecError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exit_code_for(exc)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )

    handler: Handler = args.handler
    try:
        with UniRatio(points=args.points) as ur:
            return handler(ur, args)
    except UniRatioError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exit_code_for(exc)


# -- Commands --


def cmd_limit_ratio(ur: UniRatio, args: argparse.Namespace) -> int:
    source = _resolve_source(ur, args)
    result = ur.solver.limit_ratio(source, method=args.method, mahler=args.mahler and args.method == "exact")
    if args.format == "json":
        _emit(_to_json(result.to_dict()), args.out)
    else:
        meta = {"lc": result.lc, "method": result.method, "mahler": result.mahler}
        rows = [[alpha, beta] for alpha, beta in result.above_set.intervals]
        _emit(_to_csv(["alpha", "beta"], rows, meta), args.out)
    return 0


def cmd_verify(ur: UniRatio, args: argparse.Namespace) -> int:
    source = _resolve_source(ur, args)
    if not isinstance(source, FamilySpec):
        raise InvalidSpecError("verify needs a family spec; bivariate families have no sequence spec")
    n_list = _parse_int_list(args.n_list)
    report = ur.oracle.convergence(source, n_list, lc=args.lc)

    if args.format == "json":
        _emit(_to_json(report.to_dict()), args.out)
    else:
        meta = {
            "spec": json.dumps(source.to_dict(), separators=(",", ":")),
            "mode": "exact" if report.r is not None else "oracle-only",
            "lc": report.lc,
            "r": report.r,
            "D": report.d_constant,
        }
        rows = [[row.n, row.degree, row.c, row.abs_err, row.et_bound, row.status] for row in report.rows]
        _emit(_to_csv(["n", "degree", "C", "abs_err", "et_bound", "status"], rows, meta), args.out)

    if report.unstable:
        flagged = ",".join(str(n) for n in report.unstable)
        unstable = ClassificationUnstableError(f"root census unstable at n={flagged}; rows flagged")
        print(f"error: {unstable.message}", file=sys.stderr)
        return exit_code_for(unstable)
    if not report.within_bound:
        breached = [str(row.n) for row in report.rows if not row.within_bound]
        print(f"error: Erdos-Turan bound exceeded at n={','.join(breached)}", file=sys.stderr)
        return 3
    return 0


def cmd_table2(ur: UniRatio, args: argparse.Namespace) -> int:
    rows = ur.solver.table2()
    if args.format == "json":
        _emit(_to_json([row.to_dict() for row in rows]), args.out)
        return 0
    header = [
        "label",
        "published_measure",
        "computed_measure",
        "published_lc",
        "computed_lc",
        "lc_abs_err",
        "measure_abs_err",
        "status",
    ]
    body = [[row.to_dict()[column] for column in header] for row in rows]
    _emit(_to_csv(header, body, {"source": "bundled transcription of the published table"}), args.out)
    return 0


def cmd_salem(ur: UniRatio, args: argparse.Namespace) -> int:
    m_values = [args.m] if args.m is not None else _parse_range(args.m_range or DEFAULT_SALEM_RANGE)
    if min(m_values) < 1:
        raise InvalidSpecError("m must be >= 1 for the Salem-power family")
    rows = ur.families.salem(m_values)
    header = ["m", "b1", "b2", "lc", "cos_alpha", "cos_beta", "alpha_residual", "beta_residual", "lc_bound"]
    body = [
        [r.m, r.b1, r.b2, r.lc, r.cos_alpha, r.cos_beta, r.alpha_residual, r.beta_residual, r.lc_bound] for r in rows
    ]
    if args.format == "json":
        _emit(_to_json([dict(zip(header, values)) for values in body]), args.out)
    else:
        _emit(_to_csv(header, body, {"family": "T", "a": "(2)", "b": "(1, b1, b2, b1, 1)"}), args.out)
    return 0


def cmd_hbounds(ur: UniRatio, args: argparse.Namespace) -> int:
    m_values = [args.m] if args.m is not None else _parse_range(args.m_range or DEFAULT_HBOUNDS_RANGE)
    if min(m_values) < 2:
        raise InvalidSpecError("m must be >= 2 for the H family")
    with_conjecture = CONJECTURE_M not in m_values and not args.no_conjecture
    rows = ur.families.hbounds(m_values + ([CONJECTURE_M] if with_conjecture else []))

    header = ["m", "lower", "upper", "lc", "inside_bounds", "conjecture_err"]
    body = [
        [r.m, r.lower, r.upper, r.lc, r.inside, abs(r.lc - CONJECTURE_VALUE) if r.m == CONJECTURE_M else None]
        for r in rows
    ]
    if args.format == "json":
        _emit(_to_json([dict(zip(header, values)) for values in body]), args.out)
    else:
        _emit(_to_csv(header, body, {"conjecture": CONJECTURE_VALUE}), args.out)
    return 0


def cmd_gap_scan(ur: UniRatio, args: argparse.Namespace) -> int:
    scan = ur.families.gap_scan(args.bound, args.k_max, args.l_max, args.top)
    header = ["rank", "lc", "k", "l", "a", "b"]
    body = [
        [rank, lc, spec.k, spec.l, " ".join(map(str, spec.a)), " ".join(map(str, spec.b))]
        for rank, (lc, spec) in enumerate(scan.entries, start=1)
    ]
    if args.format == "json":
        entries = [{"rank": rank, "lc": lc, **spec.to_dict()} for rank, (lc, spec) in enumerate(scan.entries, 1)]
        _emit(_to_json({"scanned": scan.scanned, "skipped": scan.skipped, "entries": entries}), args.out)
    else:
        meta = {"bound": args.bound, "scanned": scan.scanned, "skipped": scan.skipped}
        _emit(_to_csv(header, body, meta), args.out)
    return 0


# -- Helpers --


def _build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--points", type=int, default=1_000_000, help="Riemann sample count (default: 1000000)")

    source = _ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", help="family spec as JSON or a path to a JSON file")
    group.add_argument("--family", help="named family as JSON or a path to a JSON file")

    parser = _ArgumentParser(prog="uniratio", description="Limit ratio of nonunimodular roots.")
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Handler, parents: list[argparse.ArgumentParser], fmt: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=parents)
        sub.add_argument("--format", choices=("json", "csv"), default=fmt)
        sub.set_defaults(handler=handler)
        return sub

    limit = add("limit-ratio", cmd_limit_ratio, [common, source], "json")
    limit.add_argument("--method", choices=("exact", "riemann"), default="exact")
    limit.add_argument("--mahler", action="store_true", help="also compute the limit Mahler measure")

    verify = add("verify", cmd_verify, [common, source], "csv")
    verify.add_argument("--n-list", required=True, help="comma-separated values of n")
    verify.add_argument("--lc", type=float, help="known limit ratio (required for a meaningful oracle-only check)")

    add("table2", cmd_table2, [common], "csv")

    for name, handler in (("salem", cmd_salem), ("hbounds", cmd_hbounds)):
        sub = add(name, handler, [common], "csv")
        m_group = sub.add_mutually_exclusive_group()
        m_group.add_argument("--m", type=int)
        m_group.add_argument("--m-range", help="inclusive range a..b")
        if name == "hbounds":
            sub.add_argument("--no-conjecture", action="store_true", help="omit the m=200 conjecture row")

    gap = add("gap-scan", cmd_gap_scan, [common], "csv")
    gap.add_argument("--bound", type=int, default=1)
    gap.add_argument("--k-max", type=int, default=1)
    gap.add_argument("--l-max", type=int, default=3)
    gap.add_argument("--top", type=int, default=10)
    return parser


def _resolve_source(ur: UniRatio, args: argparse.Namespace) -> PairSource:
    if args.spec is not None:
        return ur.families.spec(_load_json(args.spec))
    params: FamilyParams = ur.families.params(_load_json(args.family))
    return ur.families.source(params)


def _load_json(value: str) -> Any:
    """Parse inline JSON, or the contents of the file it names."""
    text = value
    path = Path(value)
    if not value.lstrip().startswith("{") and path.is_file():
        text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpecError(f"malformed JSON input: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidSpecError("JSON input must be an object")
    return data


def _parse_int_list(raw: str) -> list[int]:
    try:
        values = [int(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidSpecError(f"expected comma-separated integers, got {raw!r}") from exc
    if not values:
        raise InvalidSpecError("n list must not be empty")
    return values


def _parse_range(raw: str) -> list[int]:
    start, sep, stop = raw.partition("..")
    try:
        lo, hi = int(start), int(stop if sep else start)
    except ValueError as exc:
        raise InvalidSpecError(f"expected a range a..b, got {raw!r}") from exc
    if hi < lo:
        raise InvalidSpecError(f"empty range {raw!r}")
    return list(range(lo, hi + 1))


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], meta: dict[str, Any] | None = None) -> str:
    buffer = io.StringIO()
    for key, value in (meta or {}).items():
        buffer.write(f"# {key}={_format_cell(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(value) for value in row])
    return buffer.getvalue()


def _to_json(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.debug("wrote %d bytes to %s", len(text), out)


if __name__ == "__main__":
    raise SystemExit(main())
