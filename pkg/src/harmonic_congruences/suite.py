"""Evaluate cases on one prime context and scan ranges of primes."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Iterable, Sequence

from .cases import (
    FAIL,
    PASS,
    SKIP,
    CongruenceCase,
    CongruenceReport,
    ParamBounds,
    Selection,
    expand_selection,
    required_orders,
)
from .oracle import oracle_evaluate
from .residues import PDividesDenominator, primes_in_range
from .tables import PrimeContext, build_context

ORACLE_MISMATCH = "oracle mismatch"


def evaluate_case(case: CongruenceCase, ctx: PrimeContext) -> CongruenceReport:
    """Fast-path report. Raises MissingOrder if ``ctx`` lacks a needed table."""
    p = ctx.p
    M = case.modulus_for(ctx).M
    reason = case.skip_reason(p)
    if reason is not None:
        return CongruenceReport(p, case.id, case.params, M, None, None, SKIP, reason)
    t0 = time.perf_counter_ns()
    try:
        lhs = case.lhs(ctx).value
        rhs = case.rhs(ctx).value
    except PDividesDenominator as exc:
        micros = (time.perf_counter_ns() - t0) // 1000
        return CongruenceReport(p, case.id, case.params, M, None, None, FAIL, str(exc), micros)
    micros = (time.perf_counter_ns() - t0) // 1000
    return CongruenceReport(p, case.id, case.params, M, lhs, rhs, PASS if lhs == rhs else FAIL, "", micros)


def _oracle_cap(case: CongruenceCase, oracle_upto: int) -> int:
    return oracle_upto if case.oracle_cap is None else min(oracle_upto, case.oracle_cap)


def run_prime(
    p: int,
    selection: Selection,
    bounds: ParamBounds = ParamBounds(),
    oracle_upto: int = 0,
    corrupt: frozenset[str] = frozenset(),
) -> list[CongruenceReport]:
    """All selected cases at one prime, optionally cross-checked by the oracle."""
    cases = expand_selection(selection, p, bounds)
    if not cases:
        return []
    cases = [c.corrupted() if c.id in corrupt or c.label in corrupt else c for c in cases]
    ctx = build_context(p, required_orders(cases))
    reports = []
    for case in cases:
        try:
            report = evaluate_case(case, ctx)
        except Exception as exc:  # one broken case must not end the scan
            M = case.modulus_for(ctx).M
            reports.append(CongruenceReport(p, case.id, case.params, M, None, None, FAIL,
                                            f"error: {type(exc).__name__}: {exc}"))
            continue
        if p <= _oracle_cap(case, oracle_upto):
            reference = oracle_evaluate(case, p, oracle_upto)
            if not report.same_outcome(reference):
                report = replace(report, verdict=FAIL, skip_reason=ORACLE_MISMATCH)
        reports.append(report)
    return reports


def run_suite(
    primes: Iterable[int] | tuple[int, int],
    cases: Selection,
    param_bounds: ParamBounds = ParamBounds(),
    *,
    oracle_upto: int = 0,
    workers: int = 1,
    corrupt: Iterable[str] = (),
) -> list[CongruenceReport]:
    """Reports for every prime and case, sorted by (prime, case id, params).

    ``primes`` is either an explicit iterable of primes or an inclusive
    (lo, hi) range, which is sieved here.
    """
    if isinstance(primes, tuple) and len(primes) == 2 and primes[0] <= primes[1]:
        plist = primes_in_range(max(primes[0], 5), primes[1])
    else:
        plist = sorted(set(primes))
    corrupt = frozenset(corrupt)
    if not cases or not plist:
        return []
    if workers <= 1:
        batches = [run_prime(p, cases, param_bounds, oracle_upto, corrupt) for p in plist]
    else:
        # big primes first so the pool drains evenly
        order = sorted(plist, reverse=True)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_prime, p, cases, param_bounds, oracle_upto, corrupt)
                       for p in order]
            batches = [f.result() for f in futures]
    reports = [r for batch in batches for r in batch]
    reports.sort(key=CongruenceReport.sort_key)
    return reports


def summarize(reports: Sequence[CongruenceReport]) -> dict[str, int]:
    out = {PASS: 0, FAIL: 0, SKIP: 0}
    for r in reports:
        out[r.verdict] += 1
    return out
