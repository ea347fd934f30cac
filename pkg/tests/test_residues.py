from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from harmonic_congruences.residues import (
    Modulus,
    ModulusMismatch,
    NotInvertible,
    PDividesDenominator,
    Residue,
    batch_inverses,
    inverse,
    is_prime,
    pow_mod,
    primes_in_range,
    reduce_rational,
)


def test_inverse_by_search_mod_25():
    # oracle: exhaustive search for 19^-1 mod 25
    found = [b for b in range(25) if 19 * b % 25 == 1]
    assert found == [4]
    assert inverse(Modulus(5, 2)(19)).value == 4


@pytest.mark.parametrize(
    "q,p,e,expected",
    [(Fraction(35, 144), 5, 2, 15), (Fraction(0), 7, 2, 0), (Fraction(25, 12), 5, 2, 0), (Fraction(-3, 8), 5, 1, 4)],
)
def test_reduce_rational(q, p, e, expected):
    assert reduce_rational(q, Modulus(p, e)).value == expected


def test_reduce_rational_rejects_p_in_denominator():
    with pytest.raises(PDividesDenominator):
        reduce_rational(Fraction(1, 10), Modulus(5, 2))


@pytest.mark.parametrize("a,p,e,expected", [(19, 5, 2, 4), (1, 7, 2, 1), (16, 5, 1, 1)])
def test_inverse_examples(a, p, e, expected):
    assert inverse(Modulus(p, e)(a)).value == expected


def test_inverse_rejects_multiples_of_p():
    with pytest.raises(NotInvertible):
        inverse(Modulus(5, 2)(10))


@pytest.mark.parametrize("p", [5, 7])
def test_inverse_exhaustive_mod_p_squared(p):
    mod = Modulus(p, 2)
    for a in range(mod.M):
        if a % p == 0:
            continue
        r = mod(a)
        assert (r * inverse(r)).value == 1
        assert inverse(inverse(r)) == r


def test_batch_inverses_examples():
    assert batch_inverses(Modulus(5, 2))[2] == 13
    assert batch_inverses(Modulus(7, 1))[3] == 5
    assert batch_inverses(Modulus(11, 2))[1] == 1


def test_batch_inverses_agree_with_inverse():
    for p in primes_in_range(5, 199):
        for e in (1, 2):
            mod = Modulus(p, e)
            table = batch_inverses(mod)
            assert len(table) == p
            assert all(table[k] == inverse(mod(k)).value for k in range(1, p))


@pytest.mark.parametrize("a,e,p,ex,expected", [(2, 4, 5, 2, 16), (2, 0, 7, 2, 1), (3, 5, 7, 1, 5)])
def test_pow_mod(a, e, p, ex, expected):
    assert pow_mod(Modulus(p, ex)(a), e).value == expected


def test_pow_mod_rejects_negative_exponent():
    with pytest.raises(ValueError):
        pow_mod(Modulus(5, 1)(2), -1)


@pytest.mark.parametrize("p", [1, 2, 3, 4, 9, 15, 25, 561])
def test_modulus_rejects_small_or_composite(p):
    with pytest.raises(ValueError):
        Modulus(p, 1)


def test_modulus_value():
    assert Modulus(7, 1).M == 7 and Modulus(7, 2).M == 49


def test_mixed_moduli_raise():
    with pytest.raises(ModulusMismatch):
        Modulus(5, 1)(1) + Modulus(5, 2)(1)
    with pytest.raises(ModulusMismatch):
        Modulus(5, 2)(1) * Modulus(7, 2)(1)


def test_residue_must_be_canonical():
    with pytest.raises(ValueError):
        Residue(25, Modulus(5, 2))


def test_reduce_to_mod_p():
    mod2, mod1 = Modulus(7, 2), Modulus(7, 1)
    for x in range(49):
        assert mod2(x).reduce_to(mod1).value == x % 7
    with pytest.raises(ModulusMismatch):
        mod1(3).reduce_to(mod2)


def test_primality_agrees_with_sieve():
    sieved = set(primes_in_range(1, 5000))
    assert {n for n in range(5001) if is_prime(n)} == sieved
    assert primes_in_range(90, 100) == [97]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


small_primes = st.sampled_from([5, 7, 11, 13])


def _integral(p):
    return st.builds(
        Fraction,
        st.integers(-10**12, 10**12),
        st.integers(1, 10**6).filter(lambda d: d % p),
    )


@given(st.data(), small_primes, st.sampled_from([1, 2]))
def test_reduction_is_a_ring_homomorphism(data, p, e):
    mod = Modulus(p, e)
    q1 = data.draw(_integral(p))
    q2 = data.draw(_integral(p))
    assert reduce_rational(q1 + q2, mod) == reduce_rational(q1, mod) + reduce_rational(q2, mod)
    assert reduce_rational(q1 * q2, mod) == reduce_rational(q1, mod) * reduce_rational(q2, mod)
    assert reduce_rational(-q1, mod) == -reduce_rational(q1, mod)


@given(st.data(), small_primes)
def test_reduction_is_compatible_between_moduli(data, p):
    q = data.draw(_integral(p))
    assert reduce_rational(q, Modulus(p, 2)).value % p == reduce_rational(q, Modulus(p, 1)).value
