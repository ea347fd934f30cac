"""Per-prime precomputed tables, all stored as canonical ints mod p^2.

A mod-p view of any table entry is just ``value % p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from operator import mul
from types import MappingProxyType
from typing import Iterable, Mapping

from .residues import Modulus, batch_inverse_values


class MissingOrder(KeyError):
    """The context was built without a harmonic order a case needs."""


def bernoulli_mod_p(p: int) -> tuple[int, ...]:
    """B_0..B_{p-3} mod p, computed in Z/pZ.

    Uses b_j = B_j / j!, for which the recurrence reads
    sum_{j<=m} b_j / (m+1-j)! = 0. All factorials involved are below p.
    Index 1 holds -1/2; odd indices >= 3 are 0.
    """
    Modulus(p, 1)  # validates p
    top = p - 3
    fact = [1] * (p)
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    invfact = [0] * p
    invfact[p - 1] = pow(fact[p - 1], p - 2, p)
    for i in range(p - 1, 0, -1):
        invfact[i - 1] = invfact[i] * i % p
    half = (p + 1) // 2
    b1 = p - half  # -1/2
    # invfact_odd[r] = 1/(2r+1)!
    invfact_odd = invfact[1::2]
    even_b = [1]
    for t in range(1, top // 2 + 1):
        m = 2 * t
        conv = sum(map(mul, even_b, invfact_odd[t:0:-1]))
        even_b.append(-(conv + b1 * invfact[m]) % p)
    out = [0] * (top + 1)
    for t, b in enumerate(even_b):
        out[2 * t] = b * fact[2 * t] % p
    if top >= 1:
        out[1] = b1
    return tuple(out)


@dataclass(frozen=True)
class PrimeContext:
    p: int
    mod1: Modulus
    mod2: Modulus
    inv: tuple[int, ...]
    inv_pow: Mapping[int, tuple[int, ...]]
    harmonic: Mapping[int, tuple[int, ...]]
    pow_half: tuple[int, ...]
    pow_two: tuple[int, ...]
    neg: tuple[int, ...]
    bern: tuple[int, ...]
    _geometric: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def M(self) -> int:
        return self.mod2.M

    def harmonic_table(self, m: int) -> tuple[int, ...]:
        try:
            return self.harmonic[m]
        except KeyError:
            raise MissingOrder(f"order {m} not built for p={self.p}") from None

    def inv_power(self, m: int) -> tuple[int, ...]:
        if m == 0:
            return (0,) + (1,) * (self.p - 1)
        try:
            return self.inv_pow[m]
        except KeyError:
            raise MissingOrder(f"order {m} not built for p={self.p}") from None

    def geometric(self, base: int) -> tuple[int, ...]:
        """base^k mod p^2 for k = 0..p-1 (memoised; 0^0 = 1)."""
        base %= self.M
        table = self._geometric.get(base)
        if table is None:
            M = self.M
            table = tuple(accumulate(range(self.p - 1), lambda acc, _: acc * base % M, initial=1))
            self._geometric[base] = table
        return table

    def bernoulli(self, j: int) -> int:
        """B_j mod p for 0 <= j <= p-3 (odd j >= 3 give 0)."""
        if j < 0 or j > self.p - 3:
            raise IndexError(f"B_{j} mod {self.p} is outside 0..p-3")
        return self.bern[j]


def build_context(p: int, orders: Iterable[int] = (1,)) -> PrimeContext:
    orders = sorted(set(orders))
    if not orders or orders[0] < 1:
        raise ValueError(f"orders must be a nonempty set of integers >= 1, got {orders}")
    mod2 = Modulus(p, 2)
    mod1 = Modulus(p, 1)
    M = mod2.M
    inv = tuple(batch_inverse_values(p - 1, M))
    inv_pow = {}
    harmonic = {}
    for m in orders:
        powers = (0,) + tuple(pow(x, m, M) for x in inv[1:])
        inv_pow[m] = powers
        harmonic[m] = tuple(accumulate(powers, lambda acc, x: (acc + x) % M))
    two_inv = (M + 1) // 2
    pow_half = tuple(accumulate(range(p - 1), lambda acc, _: acc * two_inv % M, initial=1))
    pow_two = tuple(accumulate(range(p - 1), lambda acc, _: acc * 2 % M, initial=1))
    neg = tuple(1 if k % 2 == 0 else M - 1 for k in range(p))
    return PrimeContext(
        p=p,
        mod1=mod1,
        mod2=mod2,
        inv=inv,
        inv_pow=MappingProxyType(inv_pow),
        harmonic=MappingProxyType(harmonic),
        pow_half=pow_half,
        pow_two=pow_two,
        neg=neg,
        bern=bernoulli_mod_p(p),
    )
