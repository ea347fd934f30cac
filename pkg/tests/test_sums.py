from fractions import Fraction
from itertools import combinations

import pytest

from harmonic_congruences.cases import FAMILIES, ParamBounds
from harmonic_congruences.exact import bernoulli_exact
from harmonic_congruences.oracle import naive_pair_residue, naive_triple_residue
from harmonic_congruences.residues import PDividesDenominator, primes_in_range, reduce_rational
from harmonic_congruences.sums import (
    PairSum,
    SingleSum,
    TripleSum,
    lhs_double_sum,
    lhs_single_sum,
    lhs_triple_sum,
    rhs_bernoulli_multiple,
)
from harmonic_congruences.tables import build_context

ALL_ORDERS = set(range(1, 18))


@pytest.fixture(scope="module")
def ctx5():
    return build_context(5, ALL_ORDERS)


def test_single_sum_weighted_harmonic_at_5(ctx5):
    assert lhs_single_sum(ctx5, SingleSum(1, "half", 1, 1)).value == 15


def test_single_sum_half_range(ctx5):
    # 1 + 1/4 = 5/4 -> 20 mod 25
    assert lhs_single_sum(ctx5, SingleSum(2, half=True)).value == 20


def test_single_sum_without_factors_counts_terms(ctx5):
    assert lhs_single_sum(ctx5, SingleSum(0)).value == 4


def test_double_sum_weak_at_5(ctx5):
    literal = 1 + Fraction(3, 4) + Fraction(11, 18) + Fraction(25, 48)
    got = lhs_double_sum(ctx5, PairSum(1, 1, strict=False))
    assert got == reduce_rational(literal, ctx5.mod2)
    assert got.value == 10


def test_double_sum_strict_matches_brute_force(ctx5):
    M = ctx5.M
    brute = sum(pow(j, -2, M) * pow(k, -4, M) for j, k in combinations(range(1, 5), 2)) % M
    assert lhs_double_sum(ctx5, PairSum(2, 4)).value == brute


@pytest.mark.parametrize("p", [5, 7, 11])
def test_weak_minus_diagonal_is_strict(p):
    ctx = build_context(p, ALL_ORDERS)
    for a, b in [(1, 1), (2, 4), (4, 2), (3, 2)]:
        weak = lhs_double_sum(ctx, PairSum(a, b, strict=False))
        strict = lhs_double_sum(ctx, PairSum(a, b, strict=True))
        diag = lhs_single_sum(ctx, SingleSum(a + b))
        assert weak - diag == strict


def test_triple_sum_four_strict_triples(ctx5):
    M = ctx5.M
    triples = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    assert list(combinations(range(1, 5), 3)) == triples
    brute = sum(pow(i * j * k, -1, M) for i, j, k in triples) % M
    assert lhs_triple_sum(ctx5, TripleSum(strict=True)).value == brute


def test_triple_sum_at_7_matches_naive():
    ctx = build_context(7, {1})
    for weight in ("two", "alt"):
        spec = TripleSum(weight, strict=False)
        assert lhs_triple_sum(ctx, spec).value == naive_triple_residue(ctx, spec)


def test_unweighted_strict_triple_vanishes_mod_p():
    for p in primes_in_range(5, 61):
        ctx = build_context(p, {1})
        assert lhs_triple_sum(ctx, TripleSum(strict=True)).value % p == 0


def _registry_specs(p):
    bounds = ParamBounds()
    for fam in FAMILIES.values():
        for case in fam.instances(p, bounds):
            yield from case.specs


def test_prefix_kernels_match_naive_loops():
    for p in primes_in_range(5, 31):
        ctx = build_context(p, ALL_ORDERS)
        specs = {s for s in _registry_specs(p) if isinstance(s, (PairSum, TripleSum))}
        for x in range(p):
            specs.add(TripleSum(weight=ctx.geometric(x), strict=True))
        for spec in specs:
            if isinstance(spec, PairSum):
                assert lhs_double_sum(ctx, spec).value == naive_pair_residue(ctx, spec), (p, spec)
            else:
                assert lhs_triple_sum(ctx, spec).value == naive_triple_residue(ctx, spec), (p, spec)


def test_rhs_weighted_harmonic_at_5(ctx5):
    assert rhs_bernoulli_multiple(ctx5, Fraction(7, 24), 2, 1).value == 15


def test_rhs_zero_coefficient(ctx5):
    assert rhs_bernoulli_multiple(ctx5, 0, 2, 1).value == 0


def test_rhs_at_11_matches_exact_reduction():
    ctx = build_context(11, {1})
    expected = reduce_rational(Fraction(8, 7) * 11 * bernoulli_exact(4)[4], ctx.mod2)
    assert rhs_bernoulli_multiple(ctx, Fraction(8, 7), 6, 1) == expected


def test_rhs_allows_p_cancelling_coefficient(ctx5):
    # (4/5) * 5 * B_0 = 4
    assert rhs_bernoulli_multiple(ctx5, Fraction(4, 5), 4, 1).value == 4


def test_rhs_rejects_p_in_denominator():
    ctx = build_context(7, {1})
    with pytest.raises(PDividesDenominator):
        rhs_bernoulli_multiple(ctx, Fraction(1, 7), 2, 0, modulus_exponent=1)


def test_rhs_refuses_to_lift_unit_multiple_to_p_squared():
    ctx = build_context(11, {1})
    with pytest.raises(ValueError):
        rhs_bernoulli_multiple(ctx, 1, 2, 0, modulus_exponent=2)
