"""Command line: ``verify``, ``list-cases`` and ``bernoulli``.

Exit codes: 0 all pass/skip, 1 at least one fail, 2 usage error, 3 internal
or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cases import FAMILIES, ParamBounds, Selection, parse_selection
from .exact import bernoulli_exact
from .oracle import DEFAULT_ORACLE_BOUND
from .residues import is_prime
from .suite import run_suite, summarize
from .tables import bernoulli_mod_p

FIELDS = ("prime", "case", "params", "modulus", "lhs", "rhs", "verdict", "skip_reason", "micros")
FORMATS = ("jsonl", "csv", "table")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    lo: int = 5
    hi: int = 997
    cases: Selection = field(default_factory=lambda: parse_selection("all"))
    max_n: int = 4
    max_m: int = 8
    oracle_upto: int = DEFAULT_ORACLE_BOUND
    output_format: str = "jsonl"
    output_path: str = "-"
    workers: int = 1
    timing: bool = False
    corrupt: tuple[str, ...] = ()

    def __post_init__(self):
        if self.lo < 5:
            raise ValueError(f"lower prime bound must be >= 5, got {self.lo}")
        if self.hi < self.lo:
            raise ValueError(f"empty prime range {self.lo}..{self.hi}")
        if self.max_n < 1:
            raise ValueError("--max-n must be >= 1")
        if self.max_m < 2 or self.max_m % 2:
            raise ValueError("--max-m must be even and >= 2")
        if self.workers < 1:
            raise ValueError("--workers must be >= 1")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")

    @property
    def bounds(self) -> ParamBounds:
        return ParamBounds(max_n=self.max_n, max_m=self.max_m)


def _prime_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return int(text), int(text)
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _format(text: str) -> str:
    text = text.lower()
    aliases = {"json": "jsonl", "json-lines": "jsonl", "human": "table"}
    text = aliases.get(text, text)
    if text not in FORMATS:
        raise argparse.ArgumentTypeError(f"format must be one of jsonl, csv, table; got {text!r}")
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcverify",
        description="Verify harmonic-number congruences for ranges of primes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="scan a prime range")
    v.add_argument("--primes", type=_prime_range, default=(5, 997), metavar="LO..HI")
    v.add_argument("--cases", default="all", help="'all' or comma separated ids, e.g. T1.1,T1.4(n=2)")
    v.add_argument("--max-n", type=int, default=4)
    v.add_argument("--max-m", type=int, default=8)
    v.add_argument("--oracle-upto", type=int, default=DEFAULT_ORACLE_BOUND,
                   help="cross-check against exact arithmetic for p up to this (0 disables)")
    v.add_argument("--format", type=_format, default="jsonl", help="jsonl (alias json), csv or table")
    v.add_argument("--output", default="-", help="file path, '-' for stdout")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--timing", action="store_true",
                   help="record per-case microseconds (output is then not reproducible)")
    v.add_argument("--corrupt", default="", help=argparse.SUPPRESS)

    sub.add_parser("list-cases", help="print the case registry")

    b = sub.add_parser("bernoulli", help="print a Bernoulli number")
    group = b.add_mutually_exclusive_group(required=True)
    group.add_argument("--prime", type=int, help="print B_J mod P (needs --index)")
    group.add_argument("--exact", type=int, metavar="N", help="print exact B_N as num/den")
    b.add_argument("--index", type=int)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None):
    """Parsed namespace plus a RunConfig for ``verify``; exits 2 on bad input."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command != "verify":
        if ns.command == "bernoulli" and ns.prime is not None and ns.index is None:
            parser.error("--prime needs --index")
        return ns, None
    try:
        lo, hi = ns.primes
        config = RunConfig(
            lo=lo,
            hi=hi,
            cases=parse_selection(ns.cases),
            max_n=ns.max_n,
            max_m=ns.max_m,
            oracle_upto=ns.oracle_upto,
            output_format=ns.format,
            output_path=ns.output,
            workers=ns.workers,
            timing=ns.timing,
            corrupt=tuple(s.strip() for s in ns.corrupt.split(",") if s.strip()),
        )
        for target in config.corrupt:
            parse_selection(target)
    except (ValueError, KeyError) as exc:
        parser.error(str(exc).strip("'\""))
    return ns, config


def _row(r, timing: bool) -> dict:
    return {
        "prime": r.prime,
        "case": r.case,
        "params": r.params_text,
        "modulus": r.modulus,
        "lhs": None if r.lhs is None else str(r.lhs),
        "rhs": None if r.rhs is None else str(r.rhs),
        "verdict": r.verdict,
        "skip_reason": r.skip_reason,
        "micros": r.micros if timing else 0,
    }


def render(reports, fmt: str, timing: bool = False) -> str:
    rows = [_row(r, timing) for r in reports]
    if fmt == "jsonl":
        return "".join(json.dumps(row) + "\n" for row in rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if v is None else v for k, v in row.items()})
        return buf.getvalue()
    header = f"{'prime':>6}  {'case':<16} {'params':<7} {'modulus':>9} {'lhs':>9} {'rhs':>9}  verdict  reason"
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(
            f"{row['prime']:>6}  {row['case']:<16} {row['params']:<7} {row['modulus']:>9} "
            f"{row['lhs'] or '-':>9} {row['rhs'] or '-':>9}  {row['verdict']:<7}  {row['skip_reason']}"
        )
    counts = summarize(reports)
    lines.append(f"{counts['pass']} pass, {counts['fail']} fail, {counts['skip']} skip")
    return "\n".join(lines) + "\n"


def execute(config: RunConfig) -> int:
    try:
        out = sys.stdout if config.output_path == "-" else open(config.output_path, "w", newline="")
    except OSError as exc:
        print(f"hcverify: cannot open {config.output_path}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    try:
        reports = run_suite(
            (config.lo, config.hi),
            config.cases,
            config.bounds,
            oracle_upto=config.oracle_upto,
            workers=config.workers,
            corrupt=config.corrupt,
        )
        out.write(render(reports, config.output_format, config.timing))
        out.flush()
    except OSError as exc:
        print(f"hcverify: I/O error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:
        print(f"hcverify: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_FAIL if any(r.verdict == "fail" for r in reports) else EXIT_OK


def list_cases() -> str:
    lines = []
    for fam in FAMILIES.values():
        mod = "p^2" if fam.modulus_exponent == 2 else "p"
        ident = f"{fam.id}({fam.param})" if fam.param else fam.id
        lines.append(f"{ident:<18} mod {mod:<4} [{fam.predicate}]  {fam.anchor}")
    return "\n".join(lines) + "\n"


def bernoulli_text(ns) -> str:
    if ns.exact is not None:
        if ns.exact < 0:
            raise ValueError("N must be >= 0")
        b = bernoulli_exact(max(ns.exact, 1))[ns.exact]
        return f"{b.numerator}/{b.denominator}\n"
    p, j = ns.prime, ns.index
    if p < 5 or not is_prime(p):
        raise ValueError(f"--prime must be a prime >= 5, got {p}")
    if not 0 <= j <= p - 3:
        raise ValueError(f"--index must lie in 0..p-3, got {j}")
    return f"{bernoulli_mod_p(p)[j]}\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns, config = parse_args(argv)
    if ns.command == "verify":
        return execute(config)
    if ns.command == "list-cases":
        sys.stdout.write(list_cases())
        return EXIT_OK
    try:
        sys.stdout.write(bernoulli_text(ns))
    except ValueError as exc:
        print(f"hcverify bernoulli: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
