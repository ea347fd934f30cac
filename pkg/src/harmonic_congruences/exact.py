"""Exact rational arithmetic: binomials, Bernoulli and harmonic numbers.

Everything here works over ``fractions.Fraction`` and Python integers, so the
values are exact and serve as the independent reference for the residue
pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

BigRational = Fraction

DEFAULT_BERNOULLI_CAP = 200


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0 and any integer k; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class BernoulliSeq:
    """B_0..B_cap with B_1 = -1/2."""

    values: tuple[Fraction, ...]

    @property
    def cap(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, j: int) -> Fraction:
        return self.values[j]

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=8)
def bernoulli_exact(cap: int = DEFAULT_BERNOULLI_CAP) -> BernoulliSeq:
    """Solve sum_{j<=m} C(m+1, j) B_j = 0 for B_m, m = 1..cap."""
    if cap < 0:
        raise ValueError(f"cap must be >= 0, got {cap}")
    values = [Fraction(1)]
    for m in range(1, cap + 1):
        if m >= 3 and m % 2:
            values.append(Fraction(0))
            continue
        s = sum(comb(m + 1, j) * values[j] for j in range(m))
        values.append(-s / (m + 1))
    return BernoulliSeq(tuple(values))


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, int(n**0.5) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(range(q * q, n + 1, q)))
    return [q for q in range(n + 1) if sieve[q]]


def von_staudt_clausen_denominator(n: int) -> int:
    """Product of the primes q with (q - 1) | n, for even n >= 2."""
    if n < 2 or n % 2:
        raise ValueError(f"defined for even n >= 2, got {n}")
    d = 1
    for q in _primes_upto(n + 1):
        if n % (q - 1) == 0:
            d *= q
    return d


@lru_cache(maxsize=4096)
def harmonic_exact(n: int, m: int = 1) -> Fraction:
    """H_{n,m} = sum_{0<k<=n} 1/k^m, summed term by term."""
    if m < 1:
        raise ValueError(f"order m must be >= 1, got {m}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    total = Fraction(0)
    for k in range(1, n + 1):
        total += Fraction(1, k**m)
    return total


def faulhaber_sum(k: int, n: int, bern: BernoulliSeq) -> Fraction:
    """sum_{j=0}^{k-1} j^n through the Bernoulli polynomial closed form."""
    if k < 1 or n < 0:
        raise ValueError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    if bern.cap < n:
        raise ValueError(f"Bernoulli cap {bern.cap} too small for n={n}")
    total = sum(comb(n + 1, j) * bern[j] * k ** (n + 1 - j) for j in range(n + 1))
    return Fraction(total) / (n + 1)


def s_coefficient(n: int) -> int:
    """C(6n+1, 2n-1) + n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return comb(6 * n + 1, 2 * n - 1) + n


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    lhs: Fraction
    rhs: Fraction


def identity_hockey_stick(m: int, k: int) -> IdentityCheck:
    """sum_{n=1}^{m} C(n-1, k-1) == C(m, k)."""
    lhs = Fraction(sum(binomial(n - 1, k - 1) for n in range(1, m + 1)))
    rhs = Fraction(binomial(m, k))
    return IdentityCheck(lhs == rhs, lhs, rhs)


def identity_binomial_harmonic(n: int) -> IdentityCheck:
    """sum_{k=1}^{n} C(n,k) (-1)^(k-1)/k H_k == H_{n,2}."""
    lhs = Fraction(0)
    for k in range(1, n + 1):
        lhs += Fraction(comb(n, k) * (-1) ** (k - 1), k) * harmonic_exact(k, 1)
    rhs = harmonic_exact(n, 2)
    return IdentityCheck(lhs == rhs, lhs, rhs)
