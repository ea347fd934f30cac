"""Scan a prime range and print per-family pass/fail/skip counts and time.

    python scripts/scan_primes.py --primes 5..1999 --oracle-upto 61
"""

import argparse
import time
from collections import defaultdict

from harmonic_congruences.cases import ParamBounds, parse_selection
from harmonic_congruences.cli import _prime_range
from harmonic_congruences.suite import run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=_prime_range, default=(5, 997))
    ap.add_argument("--cases", default="all")
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--max-m", type=int, default=8)
    ap.add_argument("--oracle-upto", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    t0 = time.perf_counter()
    reports = run_suite(
        args.primes,
        parse_selection(args.cases),
        ParamBounds(max_n=args.max_n, max_m=args.max_m),
        oracle_upto=args.oracle_upto,
        workers=args.workers,
    )
    wall = time.perf_counter() - t0

    counts = defaultdict(lambda: {"pass": 0, "fail": 0, "skip": 0, "micros": 0})
    for r in reports:
        row = counts[r.case]
        row[r.verdict] += 1
        row["micros"] += r.micros
    print(f"{'case':<16} {'pass':>6} {'fail':>5} {'skip':>5} {'ms':>9}")
    for case, row in counts.items():
        print(f"{case:<16} {row['pass']:>6} {row['fail']:>5} {row['skip']:>5} {row['micros'] / 1000:>9.1f}")
    print(f"{len(reports)} records in {wall:.2f} s")


if __name__ == "__main__":
    main()
