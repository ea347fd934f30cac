"""Independent verification path.

Both sides of every case are computed as exact rationals by literal loops
(no prefix sums, no residue tables) and only reduced at the very end. The
Bernoulli values come from the exact rational recurrence, not from the
in-ring table the fast path uses.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import comb, gcd
from typing import Callable

from .cases import FAIL, PASS, SKIP, CongruenceCase, CongruenceReport
from .exact import DEFAULT_BERNOULLI_CAP, bernoulli_exact, harmonic_exact, s_coefficient
from .residues import Modulus, reduce_rational
from .sums import PairSum, TripleSum, weight_table
from .tables import PrimeContext

DEFAULT_ORACLE_BOUND = 97


class OracleBoundExceeded(ValueError):
    pass


def H(k: int, m: int = 1) -> Fraction:
    return harmonic_exact(k, m)


def B(j: int) -> Fraction:
    return bernoulli_exact(max(DEFAULT_BERNOULLI_CAP, j))[j]


def fsum(terms) -> Fraction:
    """Exact sum over a running least common denominator (no per-term normalising)."""
    num, den = 0, 1
    for t in terms:
        t = Fraction(t)
        d = t.denominator
        if den % d:
            new = den // gcd(den, d) * d
            num *= new // den
            den = new
        num += t.numerator * (den // d)
    return Fraction(num, den)


def _alt(k):
    return -1 if k % 2 else 1


def _rng(p):
    return range(1, p)


def _pairs(p, strict=True):
    for k in range(1, p):
        for j in range(1, k if strict else k + 1):
            yield j, k


def _triples(p, strict):
    for k in range(1, p):
        for j in range(1, k if strict else k + 1):
            for i in range(1, j if strict else j + 1):
                yield i, j, k


def _sym_pair_exact(p, m, sign):
    return fsum(Fraction(1, j**m * k ** (2 * m)) + sign * Fraction(1, j ** (2 * m) * k**m)
                for j, k in _pairs(p))


# family id -> f(p, param) -> (lhs, rhs), both exact rationals or ints.
ORACLES: dict[str, Callable] = {}


def oracle(fid):
    def deco(f):
        ORACLES[fid] = f
        return f

    return deco


@oracle("T1.1")
def _t11(p, _):
    return fsum(H(k) / (k * 2**k) for k in _rng(p)), Fraction(7, 24) * p * B(p - 3)


@oracle("T1.2")
def _t12(p, _):
    return fsum(H(k, 2) / (k * 2**k) for k in _rng(p)), Fraction(-3, 8) * B(p - 3)


def _t1_lhs(p, n):
    return fsum(H(k, 2 * n) ** 2 / k ** (2 * n) for k in _rng(p))


@oracle("T1.3")
def _t13(p, n):
    return _t1_lhs(p, n), 0


@oracle("T1.4")
def _t14(p, n):
    return _t1_lhs(p, n), Fraction(s_coefficient(n), 6 * n + 1) * p * B(p - 1 - 6 * n)


@oracle("L2.1a")
def _l21a(p, _):
    return fsum(Fraction(_alt(k), k**2) for k in _rng(p)), Fraction(p, 2) * B(p - 3)


@oracle("L2.1b")
def _l21b(p, _):
    return fsum(Fraction(_alt(k), k**3) for k in _rng(p)), -B(p - 3) / 2


@oracle("L2.1c")
def _l21c(p, _):
    return fsum(H(k) / k for k in _rng(p)), Fraction(p, 3) * B(p - 3)


@oracle("L2.1d")
def _l21d(p, _):
    return fsum(_alt(k) * H(k) / k**2 for k in _rng(p)), -B(p - 3) / 4


@oracle("L2.3a")
def _l23a(p, _):
    lhs = fsum(Fraction(2**j * (j + k), j**2 * k**2) for j, k in _pairs(p, strict=False))
    return lhs, fsum(Fraction(_alt(k), k**3) for k in _rng(p))


@oracle("L2.3b")
def _l23b(p, _):
    lhs = fsum(Fraction(2**i - _alt(i), i * j * k) for i, j, k in _triples(p, strict=False))
    return lhs, fsum(Fraction(_alt(k) - 2**k, k**3) for k in _rng(p))


@oracle("L3.1a")
def _l31a(p, m):
    return _sym_pair_exact(p, m, 1), 0


@oracle("L3.1b")
def _l31b(p, m):
    return _sym_pair_exact(p, m, 1), -p * Fraction(3 * m, 3 * m + 1) * B(p - 1 - 3 * m)


@oracle("L3.2a")
def _l32a(p, m):
    return _sym_pair_exact(p, m, -1), 0


@oracle("L3.2b")
def _l32b(p, m):
    rhs = Fraction(p * m * comb(3 * m, m), (m + 1) * (2 * m + 1)) * B(p - 1 - 3 * m)
    return _sym_pair_exact(p, m, -1), rhs


@oracle("L3.2c")
def _l32c(p, m):
    lhs = fsum(Fraction(1, j ** (2 * m) * k ** (m + 1)) + Fraction(2, j ** (2 * m + 1) * k**m)
               for j, k in _pairs(p))
    rhs = Fraction(comb(3 * m, m), (m + 1) * (2 * m + 1)) * B(p - 1 - 3 * m)
    return lhs, rhs


@oracle("KF.wolstenholme")
def _kf_w(p, _):
    return H(p - 1), 0


@oracle("KF.su1")
def _kf_su1(p, _):
    return _t11(p, None)[0], 0


@oracle("KF.su2")
def _kf_su2(p, _):
    return fsum(H(k) ** 2 / k**2 for k in _rng(p)), 0


@oracle("KF.mestrovic")
def _kf_mes(p, _):
    return _kf_su2(p, None)[0], Fraction(4, 5) * p * B(p - 5)


@oracle("KF.s1")
def _kf_s1(p, _):
    return H(p - 1, 2), Fraction(2, 3) * p * B(p - 3)


@oracle("KF.s2")
def _kf_s2(p, _):
    return H(p - 1, 3), -p if p == 5 else 0


@oracle("KF.s3")
def _kf_s3(p, _):
    return H((p - 1) // 2, 2), Fraction(7, 3) * p * B(p - 3)


@oracle("KF.s4")
def _kf_s4(p, _):
    return H((p - 1) // 2, 3), -2 * B(p - 3)


@oracle("KF.s5")
def _kf_s5(p, _):
    return fsum(Fraction(1, j * k) for j, k in _pairs(p)), -Fraction(p, 3) * B(p - 3)


@oracle("KF.st")
def _kf_st(p, _):
    return fsum(H(k) / k**2 for k in _rng(p)), B(p - 3)


@oracle("KF.psum")
def _kf_psum(p, n):
    return H(p - 1, n), Fraction(p * n, n + 1) * B(p - 1 - n)


@oracle("KF.psum0")
def _kf_psum0(p, n):
    return H(p - 1, n), 0


@oracle("KF.powmod")
def _kf_powmod(p, n):
    return sum(k**n for k in _rng(p)), -1 if n % (p - 1) == 0 else 0


@oracle("KF.hsym")
def _kf_hsym(p, _):
    mod = Modulus(p, 1)
    hits = sum(1 for k in _rng(p) if reduce_rational(H(p - k) - H(k) + Fraction(1, k), mod).value == 0)
    return hits, p - 1


@oracle("KF.zs")
def _kf_zs(p, x):
    lhs = fsum(Fraction((1 - x) ** i, i * j * k) for i, j, k in _triples(p, strict=True))
    rhs = fsum(Fraction(x**i, i * j * k) for i, j, k in _triples(p, strict=True))
    return lhs, rhs


def oracle_sides(case: CongruenceCase, p: int) -> tuple[Fraction, Fraction]:
    params = case.param_dict
    value = next(iter(params.values())) if params else None
    lhs, rhs = ORACLES[case.id](p, value)
    return Fraction(lhs), Fraction(rhs) + case.rhs_shift


def oracle_evaluate(case: CongruenceCase, p: int, bound: int = DEFAULT_ORACLE_BOUND) -> CongruenceReport:
    """Exact-arithmetic report for ``case`` at ``p``; comparable field by field
    with the fast path's report."""
    cap = bound if case.oracle_cap is None else min(bound, case.oracle_cap)
    if p > cap:
        raise OracleBoundExceeded(f"{case.label}: oracle limited to p <= {cap}, got {p}")
    mod = Modulus(p, case.modulus_exponent)
    reason = case.skip_reason(p)
    if reason is not None:
        return CongruenceReport(p, case.id, case.params, mod.M, None, None, SKIP, reason)
    t0 = time.perf_counter_ns()
    lhs, rhs = oracle_sides(case, p)
    lhs_r = reduce_rational(lhs, mod).value
    rhs_r = reduce_rational(rhs, mod).value
    micros = (time.perf_counter_ns() - t0) // 1000
    verdict = PASS if lhs_r == rhs_r else FAIL
    return CongruenceReport(p, case.id, case.params, mod.M, lhs_r, rhs_r, verdict, "", micros)


# --- naive residue loops (check the prefix-sum kernels, not the math) ------


def naive_pair_residue(ctx: PrimeContext, spec: PairSum) -> int:
    M, p = ctx.M, ctx.p
    w = weight_table(ctx, spec.weight)
    total = 0
    for k in range(1, p):
        for j in range(1, k if spec.strict else k + 1):
            term = pow(ctx.inv[j], spec.a, M) * pow(ctx.inv[k], spec.b, M)
            if w is not None:
                term *= w[j]
            total = (total + term) % M
    return total


def naive_triple_residue(ctx: PrimeContext, spec: TripleSum) -> int:
    M, p, inv = ctx.M, ctx.p, ctx.inv
    w = weight_table(ctx, spec.weight)
    total = 0
    for i, j, k in _triples(p, spec.strict):
        term = inv[i] * inv[j] * inv[k]
        if w is not None:
            term *= w[i]
        total = (total + term) % M
    return total
