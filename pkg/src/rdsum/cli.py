"""Command-line front end.

Every subcommand emits one record (``schema_version``, ``command``,
``inputs``, ``rows``, ``generated_at``) as JSON or CSV. Floats are rounded
to 12 significant digits so repeated runs produce identical rows.

Exit codes: 0 success, 2 usage or domain error, 3 numerical failure,
4 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import analytic as an
from . import casimir as cs
from . import lattice as lt
from .checks import run_checks
from .exceptions import DomainError, ExtrapolationDiverged, GuardError, ToleranceNotReached
from .special import Accuracy

SCHEMA_VERSION = "1"
SIG_DIGITS = 12

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_VALIDATION = 4

METHODS = {"analytic": an.DIRECT, "series": an.POWER_SERIES, "brute": an.BRUTE}
DEFAULT_D_RANGE = (2, 5)
DEFAULT_LAMBDAS = (0.1, 1.0, 5.0, 10.0)


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    rows: list[dict]
    schema_version: str = SCHEMA_VERSION
    generated_at: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "rows": self.rows,
            "generated_at": self.generated_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OutputRecord":
        return cls(
            command=data["command"],
            inputs=data["inputs"],
            rows=data["rows"],
            schema_version=data["schema_version"],
            generated_at=data["generated_at"],
        )


def round_sig(x: float, digits: int = SIG_DIGITS) -> float:
    if not math.isfinite(x) or x == 0:
        return float(x)
    return float(f"{x:.{digits}g}")


def _clean(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return round_sig(value)
    if hasattr(value, "item"):  # numpy scalar
        return _clean(value.item())
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    return str(value)


def emit_json(record: OutputRecord) -> str:
    return json.dumps(record.to_dict(), indent=2, allow_nan=True) + "\n"


def emit_csv(record: OutputRecord) -> str:
    buf = io.StringIO()
    columns = list(record.rows[0])
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in record.rows:
        writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    return buf.getvalue()


def _csv_cell(value):
    if isinstance(value, float):
        return repr(value)
    return value


# -- argument parsing --------------------------------------------------------


def parse_lambda_list(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty lambda list")
    return values


def parse_d_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'a..b', got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _eps(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"--eps must lie in (0, 1), got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdsum",
        description="Generating function of r_d(n), lattice-sum oracles and Neumann Casimir energies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default: standard output)")

    p = sub.add_parser("xi", help="evaluate xi_d(lambda) one way")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--method", choices=tuple(METHODS), default="analytic")
    p.add_argument("--eps", type=_eps, default=None)
    common(p)

    p = sub.add_parser("compare", help="formula against brute force on a (d, lambda) grid")
    p.add_argument("--d-range", type=parse_d_range, default=None)
    p.add_argument("--lambdas", type=parse_lambda_list, default=None)
    p.add_argument("--eps", type=_eps, default=None)
    common(p)

    p = sub.add_parser("casimir", help="Neumann Casimir energy per 1/L")
    p.add_argument("--d", type=int, required=True)
    common(p)

    p = sub.add_parser("rd", help="table of r_d(n)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    common(p)

    p = sub.add_parser("validate", help="run the invariant suite")
    common(p)
    return parser


# -- commands ----------------------------------------------------------------


def cmd_xi(args) -> OutputRecord:
    acc = Accuracy(args.eps) if args.eps is not None else None
    method = METHODS[args.method]
    inputs = {"d": args.d, "lambda": args.lam, "method": args.method}
    if args.eps is not None:
        inputs["eps"] = args.eps
    if method == an.BRUTE:
        res = lt.xi_brute(an.EvalConfig(args.d, args.lam, acc or lt.BRUTE_ACCURACY))
        row = {"d": args.d, "lambda": args.lam, "xi": res.value, "n_cut": res.n_cut,
               "tail_bound": res.tail_bound}
    else:
        res = an.xi_formula(an.EvalConfig(args.d, args.lam, acc or Accuracy()), method)
        row = {"d": args.d, "lambda": args.lam, "xi": res.xi, "I_d": res.i_term,
               "C_d": res.c_term}
    return OutputRecord("xi", inputs, [row])


def cmd_compare(args) -> OutputRecord:
    ds = args.d_range or list(range(DEFAULT_D_RANGE[0], DEFAULT_D_RANGE[1] + 1))
    lams = args.lambdas or list(DEFAULT_LAMBDAS)
    acc = Accuracy(args.eps) if args.eps is not None else None
    rows = [
        {
            "d": r.d,
            "lambda": r.lam,
            "xi_formula": r.xi_formula,
            "xi_brute": r.xi_brute,
            "abs_diff": r.abs_diff,
            "pct_diff": r.pct_diff,
            "I_d": r.i_term,
            "C_d": r.c_term,
            "ratio_C_over_I": r.ratio_c_over_i,
        }
        for r in lt.compare(ds, lams, acc)
    ]
    return OutputRecord("compare", {"d_range": ds, "lambdas": lams}, rows)


def cmd_casimir(args) -> OutputRecord:
    res = cs.casimir_closed_form(args.d)
    rows = [{"d": args.d, "p": t.p, "j": t.j, "term": t.value, "E_d": res.energy} for t in res.terms]
    return OutputRecord("casimir", {"d": args.d}, rows)


def cmd_rd(args) -> OutputRecord:
    table = lt.rd_table_convolution(args.d, args.nmax)
    rows = [{"n": n, "r_d": c} for n, c in enumerate(table.tolist())]
    return OutputRecord("rd", {"d": args.d, "nmax": args.nmax}, rows)


def cmd_validate(args) -> OutputRecord:
    rows = [
        {"check": r.name, "passed": r.passed, "deviation": r.deviation, "tolerance": r.tolerance}
        for r in run_checks()
    ]
    return OutputRecord("validate", {}, rows)


COMMANDS = {
    "xi": cmd_xi,
    "compare": cmd_compare,
    "casimir": cmd_casimir,
    "rd": cmd_rd,
    "validate": cmd_validate,
}


def run(argv=None) -> tuple[int, OutputRecord | None]:
    """Parse ``argv`` and run the command; returns the exit code and the record."""
    args = build_parser().parse_args(argv)
    try:
        record = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"rdsum: domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except (ToleranceNotReached, ExtrapolationDiverged, GuardError, OverflowError,
            ArithmeticError) as exc:
        print(f"rdsum: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL, None
    record.inputs = _clean(record.inputs)
    record.rows = _clean(record.rows)
    code = EXIT_OK
    if args.command == "validate" and not all(r["passed"] for r in record.rows):
        code = EXIT_VALIDATION
    text = emit_csv(record) if args.format == "csv" else emit_json(record)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code, record


def main(argv=None) -> int:
    try:
        code, _ = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    return code


if __name__ == "__main__":
    sys.exit(main())
