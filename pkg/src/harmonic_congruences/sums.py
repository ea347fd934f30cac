"""O(p) evaluation of the single, double and triple sums over 1..p-1.

Double and triple sums are reduced to running prefix sums, so no kernel
ever loops over pairs or triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence, Union

from .residues import Modulus, PDividesDenominator, Residue, reduce_rational
from .tables import PrimeContext

# A weight is either the name of a standard table or an explicit sequence
# indexed 0..p-1 of ints mod p^2.
Weight = Union[str, Sequence[int]]


def weight_table(ctx: PrimeContext, weight: Weight) -> Sequence[int] | None:
    if not isinstance(weight, str):
        return weight
    if weight == "one":
        return None
    if weight == "alt":
        return ctx.neg
    if weight == "half":
        return ctx.pow_half
    if weight == "two":
        return ctx.pow_two
    raise ValueError(f"unknown weight {weight!r}")


@dataclass(frozen=True)
class SingleSum:
    """sum_k weight_k * k^-power * H_{k,order}^h_exp over k = 1..p-1.

    ``half`` restricts the range to k <= (p-1)/2.
    """

    power: int = 0
    weight: Weight = "one"
    order: int = 1
    h_exp: int = 0
    half: bool = False


@dataclass(frozen=True)
class PairSum:
    """sum over j < k (strict) or j <= k of weight_j / (j^a k^b)."""

    a: int
    b: int
    weight: Weight = "one"
    strict: bool = True


@dataclass(frozen=True)
class TripleSum:
    """sum over i < j < k (strict) or i <= j <= k of weight_i / (ijk)."""

    weight: Weight = "one"
    strict: bool = False


def _mul_into(terms: list[int], factor: Sequence[int], M: int) -> list[int]:
    return [t * f % M for t, f in zip(terms, factor)]


def _single_raw(ctx: PrimeContext, spec: SingleSum) -> int:
    M = ctx.M
    upper = (ctx.p - 1) // 2 if spec.half else ctx.p - 1
    terms = list(ctx.inv_power(spec.power)[1 : upper + 1])
    w = weight_table(ctx, spec.weight)
    if w is not None:
        terms = _mul_into(terms, w[1 : upper + 1], M)
    if spec.h_exp:
        h = ctx.harmonic_table(spec.order)[1 : upper + 1]
        for _ in range(spec.h_exp):
            terms = _mul_into(terms, h, M)
    return sum(terms) % M


def _prefix(values: Sequence[int], M: int, strict: bool) -> list[int]:
    """Running sums P_k of values[1..k] (or values[1..k-1] when strict), index 0..p-1."""
    running = list(accumulate(values, lambda acc, x: (acc + x) % M))
    if strict:
        return [0] + running[:-1]
    return running


def _pair_raw(ctx: PrimeContext, spec: PairSum) -> int:
    M = ctx.M
    inner = list(ctx.inv_power(spec.a))
    w = weight_table(ctx, spec.weight)
    if w is not None:
        inner = _mul_into(inner, w, M)
    prefix = _prefix(inner, M, spec.strict)
    outer = ctx.inv_power(spec.b)
    return sum(_mul_into(prefix[1:], outer[1:], M)) % M


def _triple_raw(ctx: PrimeContext, spec: TripleSum) -> int:
    M = ctx.M
    inv = ctx.inv
    first = list(inv)
    w = weight_table(ctx, spec.weight)
    if w is not None:
        first = _mul_into(first, w, M)
    a = _prefix(first, M, spec.strict)
    b = _prefix(_mul_into(a, inv, M), M, spec.strict)
    return sum(_mul_into(b[1:], inv[1:], M)) % M


def lhs_single_sum(ctx: PrimeContext, spec: SingleSum) -> Residue:
    return Residue(_single_raw(ctx, spec), ctx.mod2)


def lhs_double_sum(ctx: PrimeContext, spec: PairSum) -> Residue:
    return Residue(_pair_raw(ctx, spec), ctx.mod2)


def lhs_triple_sum(ctx: PrimeContext, spec: TripleSum) -> Residue:
    return Residue(_triple_raw(ctx, spec), ctx.mod2)


def evaluate_sum(ctx: PrimeContext, spec: SingleSum | PairSum | TripleSum) -> Residue:
    if isinstance(spec, SingleSum):
        return lhs_single_sum(ctx, spec)
    if isinstance(spec, PairSum):
        return lhs_double_sum(ctx, spec)
    if isinstance(spec, TripleSum):
        return lhs_triple_sum(ctx, spec)
    raise TypeError(f"not a sum spec: {spec!r}")


def rhs_bernoulli_multiple(
    ctx: PrimeContext,
    coeff: Fraction | int,
    bern_index_offset: int,
    p_factor: int,
    modulus_exponent: int = 2,
) -> Residue:
    """coeff * p^p_factor * B_{p-1-offset}, reduced mod p^modulus_exponent.

    Only B mod p is tabulated, so mod p^2 needs the scalar coeff * p^p_factor
    to vanish mod p, except for B_0 = 1 which is exact. The scalar is formed
    exactly before reduction, so coefficients like 4/5 work at p = 5.
    """
    mod = ctx.mod2 if modulus_exponent == 2 else ctx.mod1
    scalar = Fraction(coeff) * ctx.p**p_factor
    if scalar == 0:
        return mod(0)
    if scalar.denominator % ctx.p == 0:
        raise PDividesDenominator(f"coefficient {coeff} * p^{p_factor} is not p-integral")
    j = ctx.p - 1 - bern_index_offset
    if j >= 3 and j % 2:
        return mod(0)
    b = 1 if j == 0 else ctx.bernoulli(j)
    s = reduce_rational(scalar, mod)
    if modulus_exponent == 2 and j != 0 and s.value % ctx.p:
        raise ValueError(f"B_{j} is only known mod p; cannot lift to mod p^2")
    return s * b


def to_modulus(r: Residue, mod: Modulus) -> Residue:
    return r if r.modulus == mod else r.reduce_to(mod)
