"""Command line front end.

Every subcommand builds a report dictionary and prints it either as a
plain-text listing (default) or as JSON with sorted keys.

Exit codes: 0 success, 2 usage or domain error, 3 unreadable input file,
4 malformed input row, 5 all-zero incomes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .countries import find_by_gini, graduation_row, load_countries, printed_m_note
from .datafile import InputFormatError, format_sig, read_grouped, read_incomes, write_lorenz
from .distributions import (
    KINDS,
    DistributionSpec,
    gini_of,
    match_to_gini,
    sample,
    variance_of,
    variance_threshold_in_m,
)
from .errors import DomainError, GiniUndefinedError
from .estimators import (
    grouped_gini_bounds,
    gini_sorted,
    lorenz_curve,
)
from .model import (
    asymptotic_gini,
    asymptotic_gini_exact,
    bracket,
    classify,
    exact_gini,
    gini_numeric,
    graduate,
)

EXIT_USAGE = 2
EXIT_UNREADABLE = 3
EXIT_MALFORMED = 4
EXIT_ALL_ZERO = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}") from None


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _digest(inputs: dict) -> str:
    blob = json.dumps(inputs, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


def _report(command: str, inputs: dict, results: dict) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "inputs_digest": _digest(inputs),
        "results": results,
        "version": __version__,
    }


def _matches(g: Fraction) -> list[dict]:
    rows = []
    for kind in KINDS:
        r = match_to_gini(kind, g)
        rows.append(
            {
                "kind": kind,
                "shape": r.spec.shape,
                "gini": gini_of(r.spec),
                "m_equivalent": r.m_equivalent,
                "variance_finite": r.variance_finite,
                "variance_threshold_m": variance_threshold_in_m(kind),
            }
        )
    return rows


def gini_sorted_convention(g: float, n: int, convention: str) -> float:
    return g if convention == "sample" else g * (n - 1) / n


def cmd_exact(args) -> dict:
    if args.m != int(args.m):
        raise CliError(f"exact needs an integer degree, got {args.m}; use 'model' for real m", EXIT_USAGE)
    m = int(args.m)
    if m < 0 or args.n < 2:
        raise CliError("exact needs m >= 0 and n >= 2", EXIT_USAGE)
    g = exact_gini(m, args.n)
    results = {"gini_exact": str(g), "gini": float(g)}
    if m > 0:
        results["asymptotic_exact"] = str(asymptotic_gini_exact(m))
        results["asymptotic"] = asymptotic_gini(m)
    return _report("exact", {"m": m, "n": args.n}, results)


def cmd_model(args) -> dict:
    m = float(args.m)
    g = gini_numeric(m, args.n, args.scale)
    results = {
        "gini": gini_sorted_convention(g, args.n, args.convention),
        "asymptotic": asymptotic_gini(m),
        "classification": classify(m),
        "bracket": bracket(m),
    }
    if m == int(m):
        results["gini_exact"] = str(exact_gini(int(m), args.n))
    return _report("model", {"m": m, "n": args.n, "scale": args.scale, "convention": args.convention}, results)


def cmd_graduate(args) -> dict:
    g = args.gini
    if not 0 <= g < 1:
        raise CliError(f"Gini must lie in [0, 1), got {g}", EXIT_USAGE)
    res = graduate(float(g))
    notes = []
    for rec in find_by_gini(float(g)):
        note = printed_m_note(rec)
        if note:
            notes.append(note)
    results = {
        "gini": float(g),
        "m": res.m,
        "classification": res.classification,
        "bracket": bracket(res.m),
        "notes": notes,
    }
    if res.m > 0:
        results["asymptotic_check"] = asymptotic_gini(res.m)
    if g > 0:
        results["matched"] = _matches(g)
    return _report("graduate", {"gini": str(g)}, results)


def cmd_match(args) -> dict:
    g = args.gini
    if not 0 < g < 1:
        raise CliError(f"Gini must lie in (0, 1), got {g}", EXIT_USAGE)
    rows = _matches(g)
    if args.kind:
        rows = [r for r in rows if r["kind"] == args.kind]
    return _report("match", {"gini": str(g), "kind": args.kind}, {"matched": rows})


def _load_incomes(path: Path):
    try:
        return read_incomes(path), _file_digest(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_UNREADABLE) from None
    except InputFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_MALFORMED) from None


def cmd_sample_gini(args) -> dict:
    path = Path(args.input)
    x, digest = _load_incomes(path)
    if x.size < 2:
        raise CliError(f"{path}: need at least 2 incomes, got {x.size}", EXIT_MALFORMED)
    try:
        g = gini_sorted(x)
        curve = lorenz_curve(x) if args.lorenz else None
    except GiniUndefinedError as exc:
        raise CliError(f"{path}: {exc}", EXIT_ALL_ZERO) from None
    n = int(x.size)
    mean = float(x.mean())
    results = {
        "n": n,
        "mean": mean,
        "mean_difference": 2.0 * mean * g,
        "gini": gini_sorted_convention(g, n, args.convention),
        "gini_sample": g,
        "gini_population": g * (n - 1) / n,
        "m": graduate(g).m if g < 1 else math.inf,
    }
    if curve is not None:
        write_lorenz(curve, args.lorenz)
        results["lorenz_file"] = str(args.lorenz)
    inputs = {"input": str(path), "sha256": digest, "convention": args.convention}
    return _report("sample-gini", inputs, results)


def cmd_grouped(args) -> dict:
    path = Path(args.input)
    try:
        data = read_grouped(path)
        digest = _file_digest(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_UNREADABLE) from None
    except (InputFormatError, DomainError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_MALFORMED) from None
    try:
        lower, upper = grouped_gini_bounds(data)
    except GiniUndefinedError as exc:
        raise CliError(f"{path}: {exc}", EXIT_ALL_ZERO) from None
    results = {
        "bins": len(data.counts),
        "n": data.total_count,
        "gini_lower": lower,
        "gini_upper": upper,
        "m_lower": graduate(lower).m if lower < 1 else math.inf,
        "m_upper": graduate(upper).m if upper < 1 else math.inf,
    }
    return _report("grouped", {"input": str(path), "sha256": digest}, results)


def cmd_countries(args) -> dict:
    return _report("countries", {}, {"rows": [graduation_row(r) for r in load_countries()]})


def cmd_table(args) -> dict:
    if args.max_m < 1:
        raise CliError("max-m must be >= 1", EXIT_USAGE)
    rows = []
    for m in range(1, args.max_m + 1):
        g = asymptotic_gini_exact(m)
        rows.append({"m": m, "gini_exact": str(g), "gini": float(g), "classification": classify(m)})
    return _report("table", {"max_m": args.max_m}, {"rows": rows})


def cmd_simulate(args) -> dict:
    spec = DistributionSpec(args.kind, args.shape, args.scale)
    x = sample(spec, args.count, args.seed)
    g = gini_sorted(x)
    closed = gini_of(spec)
    results = {
        "gini_closed_form": closed,
        "gini_empirical": gini_sorted_convention(g, x.size, args.convention),
        "abs_error": abs(g - closed),
        "m_equivalent": graduate(closed).m,
        "variance": variance_of(spec),
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write("income\n")
            fh.writelines(format_sig(v, 17) + "\n" for v in x.tolist())
        results["sample_file"] = str(args.output)
    inputs = {
        "kind": args.kind,
        "shape": args.shape,
        "scale": args.scale,
        "count": args.count,
        "seed": args.seed,
        "convention": args.convention,
    }
    return _report("simulate", inputs, results)


def _text_value(v: Any) -> str:
    if isinstance(v, float):
        return format_sig(v)
    if v is None:
        return "-"
    if isinstance(v, list) and all(isinstance(s, str) for s in v):
        return "; ".join(v) if v else "-"
    return str(v)


def _render_rows(rows: list[dict]) -> list[str]:
    if not rows:
        return ["(none)"]
    cols = list(rows[0])
    cells = [[_text_value(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return lines


def render_text(doc: dict) -> str:
    lines = [f"gradgini {doc['version']} {doc['command']}"]
    for k, v in doc["inputs"].items():
        lines.append(f"  input {k}: {_text_value(v)}")
    lines.append(f"  inputs digest: {doc['inputs_digest']}")
    for k, v in doc["results"].items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            lines.extend("  " + line for line in _render_rows(v))
        else:
            lines.append(f"{k}: {_text_value(v)}")
    return "\n".join(lines) + "\n"


def _json_safe(v: Any) -> Any:
    # strict JSON has no infinity; thresholds such as the log-normal one are unbounded
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_json_safe(x) for x in v]
    return v


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_json_safe(doc), sort_keys=True, indent=2, allow_nan=False) + "\n"
    return render_text(doc)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--convention", choices=("sample", "population"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="gradgini",
        description="Gini index and graduation degree of power-rank income models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    parser.add_argument("--seed", type=int, default=0, help="seed for simulate")
    parser.add_argument(
        "--convention",
        choices=("sample", "population"),
        default="sample",
        help="Gini denominator: n(n-1) pairs (sample) or n^2 (population)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", parents=[common], help="exact Gini of the integer-degree model")
    p.add_argument("m", type=float)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("model", parents=[common], help="numeric Gini of the model for real m")
    p.add_argument("m", type=float)
    p.add_argument("n", type=int)
    p.add_argument("--scale", type=float, default=1.0)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("graduate", parents=[common], help="degree m for a Gini value")
    p.add_argument("gini", type=_fraction)
    p.set_defaults(func=cmd_graduate)

    p = sub.add_parser("match", parents=[common], help="distribution parameters matching a Gini value")
    p.add_argument("gini", type=_fraction)
    p.add_argument("--kind", choices=KINDS)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("sample-gini", parents=[common], help="Gini of income microdata in a CSV file")
    p.add_argument("input")
    p.add_argument("--lorenz", metavar="PATH", help="write Lorenz vertices as p,L CSV")
    p.set_defaults(func=cmd_sample_gini)

    p = sub.add_parser("grouped", parents=[common], help="Gini bounds for count,mean grouped data")
    p.add_argument("input")
    p.set_defaults(func=cmd_grouped)

    p = sub.add_parser("countries", parents=[common], help="bundled country table with degrees")
    p.set_defaults(func=cmd_countries)

    p = sub.add_parser("table", parents=[common], help="asymptotic Gini for m = 1..max-m")
    p.add_argument("--max-m", type=int, default=10)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", parents=[common], help="sample a distribution and compare Gini")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--shape", type=float, required=True)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--count", type=int, default=100_000)
    p.add_argument("--output", metavar="PATH", help="write the sample as CSV")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except CliError as exc:
        print(f"gradgini: error: {exc}", file=sys.stderr)
        return exc.code
    except (DomainError, OverflowError) as exc:
        print(f"gradgini: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(doc, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
