"""Residues modulo p and p^2 for a prime p >= 5."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate


class PDividesDenominator(ArithmeticError):
    """A rational with p in its denominator has no residue mod p^e."""


class NotInvertible(ArithmeticError):
    pass


class ModulusMismatch(TypeError):
    pass


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases; exact below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi] by a segmented sieve."""
    if hi < 2 or hi < lo:
        return []
    lo = max(lo, 2)
    root = int(hi**0.5)
    while root * root > hi:
        root -= 1
    while (root + 1) * (root + 1) <= hi:
        root += 1
    small = bytearray([1]) * (root + 1)
    base = []
    for q in range(2, root + 1):
        if small[q]:
            base.append(q)
            small[q * q :: q] = bytearray(len(range(q * q, root + 1, q)))
    seg = bytearray([1]) * (hi - lo + 1)
    for q in base:
        start = max(q * q, (lo + q - 1) // q * q)
        seg[start - lo :: q] = bytearray(len(range(start, hi + 1, q)))
    return [lo + i for i, flag in enumerate(seg) if flag]


@dataclass(frozen=True)
class Modulus:
    p: int
    exponent: int = 2

    def __post_init__(self):
        if self.exponent not in (1, 2):
            raise ValueError(f"exponent must be 1 or 2, got {self.exponent}")
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"modulus needs a prime p >= 5, got {self.p}")

    @property
    def M(self) -> int:
        return self.p**self.exponent

    def __call__(self, value: int) -> Residue:
        return Residue(value % self.M, self)

    def __str__(self):
        return f"{self.p}^{self.exponent}" if self.exponent > 1 else str(self.p)


@dataclass(frozen=True)
class Residue:
    """Canonical value in [0, M). Operands must share the same modulus."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.M:
            raise ValueError(f"{self.value} is not canonical mod {self.modulus.M}")

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"mod {self.modulus} vs mod {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self.modulus(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self.modulus(self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self.modulus(v - self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self.modulus(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self.modulus(-self.value)

    def __pow__(self, e: int):
        return pow_mod(self, e)

    def __int__(self):
        return self.value

    def reduce_to(self, target: Modulus) -> Residue:
        """Project mod p^2 down to mod p (or identity on the same modulus)."""
        if target.p != self.modulus.p or target.exponent > self.modulus.exponent:
            raise ModulusMismatch(f"cannot reduce mod {self.modulus} to mod {target}")
        return target(self.value)

    def __repr__(self):
        return f"Residue({self.value} mod {self.modulus.M})"


def _egcd_inverse(a: int, m: int) -> int:
    old_r, r = a % m, m
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise NotInvertible(f"{a} is not invertible mod {m}")
    return old_s % m


def inverse(a: Residue) -> Residue:
    if a.value % a.modulus.p == 0:
        raise NotInvertible(f"{a.value} is divisible by p={a.modulus.p}")
    return Residue(_egcd_inverse(a.value, a.modulus.M), a.modulus)


def pow_mod(a: Residue, e: int) -> Residue:
    if e < 0:
        raise ValueError(f"exponent must be >= 0, got {e}")
    result, base, M = 1 % a.modulus.M, a.value, a.modulus.M
    while e:
        if e & 1:
            result = result * base % M
        base = base * base % M
        e >>= 1
    return Residue(result, a.modulus)


def reduce_rational(q: Fraction | int, mod: Modulus) -> Residue:
    q = Fraction(q)
    M = mod.M
    if q.denominator % mod.p == 0:
        raise PDividesDenominator(f"{q} has p={mod.p} in its denominator")
    num = q.numerator
    num = num % M if num >= 0 else (M - (-num) % M) % M
    return Residue(num * _egcd_inverse(q.denominator, M) % M, mod)


def batch_inverse_values(n: int, M: int) -> list[int]:
    """[0, 1^-1, ..., n^-1] mod M using prefix products and a single inversion.

    Every k in 1..n must be a unit mod M.
    """
    prefix = list(accumulate(range(1, n + 1), lambda acc, k: acc * k % M))
    out = [0] * (n + 1)
    if n == 0:
        return out
    running = _egcd_inverse(prefix[-1], M)
    for k in range(n, 1, -1):
        out[k] = running * prefix[k - 2] % M
        running = running * k % M
    out[1] = running
    return out


def batch_inverses(mod: Modulus) -> list[int]:
    """table[k] = k^-1 mod M for k = 1..p-1 (table[0] is an unused 0)."""
    return batch_inverse_values(mod.p - 1, mod.M)
