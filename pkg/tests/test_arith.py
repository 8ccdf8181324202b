import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gcdzeta.arith import (
    FactoredInteger,
    build_spf_sieve,
    divisors,
    factorize,
    gcd,
    is_prime,
    primes_in_range,
    primes_upto,
)
from gcdzeta.errors import DomainError, ResourceError


def trial_division_is_prime(n: int) -> bool:
    """Independent primality oracle: plain trial division."""
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def eratosthenes_count(limit: int) -> int:
    """Independent prime counter, no shared code with the SPF sieve."""
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * ((limit - p * p) // p + 1)
    return sum(sieve)


class TestGcd:
    def test_examples(self):
        assert gcd(6, 4) == 2
        assert gcd(0, 4) == 4
        assert gcd(12, 18) == 6

    def test_zero_zero_is_domain_error(self):
        with pytest.raises(DomainError):
            gcd(0, 0)

    def test_negative_is_domain_error(self):
        with pytest.raises(DomainError):
            gcd(-2, 4)

    @given(st.integers(0, 2**62), st.integers(0, 2**62))
    def test_commutative_and_divides(self, a, b):
        if a == 0 and b == 0:
            return
        g = gcd(a, b)
        assert g == gcd(b, a)
        assert (a == 0 or a % g == 0) and (b == 0 or b % g == 0)

    @given(
        st.integers(1, 2**62), st.integers(1, 2**62), st.integers(1, 2**62)
    )
    def test_fold_associative(self, a, b, c):
        assert gcd(gcd(a, b), c) == gcd(a, gcd(b, c))


class TestFactorize:
    def test_one_has_empty_factorization(self):
        assert factorize(1).factors == ()

    def test_twelve(self):
        assert factorize(12).factors == ((2, 2), (3, 1))

    def test_large_semiprime_like_example(self):
        fi = factorize(9007199254740991)
        assert fi.factors == ((6361, 1), (69431, 1), (20394401, 1))
        product = 1
        for p, k in fi.factors:
            assert trial_division_is_prime(p)
            product *= p**k
        assert product == 9007199254740991

    def test_zero_is_domain_error(self):
        with pytest.raises(DomainError):
            factorize(0)

    def test_product_reconstructs_up_to_1e5(self):
        for n in range(1, 10**5 + 1):
            fi = factorize(n)
            assert math.prod(p**k for p, k in fi.factors) == n

    @given(st.integers(1, 10**12))
    def test_product_reconstructs_random_large(self, n):
        fi = factorize(n)
        assert math.prod(p**k for p, k in fi.factors) == n
        for p, _ in fi.factors:
            assert is_prime(p)

    def test_rho_path_on_semiprime_beyond_trial_range(self):
        p, q = 1000003, 1000033
        fi = factorize(p * p * q)
        assert fi.factors == ((p, 2), (q, 1))


class TestIsPrime:
    def test_small_range_matches_trial_division(self):
        for n in range(0, 2000):
            assert is_prime(n) == trial_division_is_prime(n)

    def test_mersenne_prime_and_neighbors(self):
        m61 = 2**61 - 1
        assert is_prime(m61)
        assert not is_prime(m61 - 2)
        assert not is_prime(m61 + 2)

    def test_strong_pseudoprimes_are_rejected(self):
        # Carmichael numbers and classic base-2 pseudoprimes
        for n in (341, 561, 1729, 2821, 29341, 3215031751):
            assert not is_prime(n)


class TestFactoredInteger:
    def test_rejects_wrong_product(self):
        with pytest.raises(DomainError):
            FactoredInteger(10, ((2, 1), (3, 1)))

    def test_rejects_unsorted_primes(self):
        with pytest.raises(DomainError):
            FactoredInteger(6, ((3, 1), (2, 1)))

    def test_rejects_zero_exponent(self):
        with pytest.raises(DomainError):
            FactoredInteger(2, ((2, 1), (3, 0)))


class TestSpfSieve:
    def test_small_entries(self):
        table = build_spf_sieve(10)
        assert table.smallest_factor(4) == 2
        assert table.smallest_factor(9) == 3
        assert table.smallest_factor(7) == 7

    def test_spf_91(self):
        assert build_spf_sieve(100).smallest_factor(91) == 7

    def test_prime_count_at_1e6(self):
        table = build_spf_sieve(10**6)
        fixed_points = [i for i in range(2, 10**6 + 1) if table.spf[i] == i]
        assert len(fixed_points) == 78498
        assert eratosthenes_count(10**6) == 78498
        # the fixed points are exactly the primes of an independent sieve
        sieve = bytearray([1]) * (10**6 + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, 1001):
            if sieve[p]:
                sieve[p * p :: p] = b"\x00" * ((10**6 - p * p) // p + 1)
        assert fixed_points == [i for i in range(2, 10**6 + 1) if sieve[i]]

    def test_agrees_with_trial_division_to_1e6(self):
        table = build_spf_sieve(10**6)
        spf = table.spf
        for n in range(2, 10**6 + 1):
            m = n
            rebuilt = 1
            last = 1
            while m > 1:
                p = int(spf[m])
                # factors come out nondecreasing and each is a sieve prime,
                # so the walk reproduces the canonical factorization
                assert p >= last and spf[p] == p
                last = p
                rebuilt *= p
                m //= p
            assert rebuilt == n
        # direct comparison against trial division on a denser sample
        for n in range(2, 20001):
            assert table.factorize(n) == factorize(n)
        for n in range(10**6 - 2000, 10**6 + 1):
            assert table.factorize(n) == factorize(n)

    def test_invariants_spf_divides_and_bounded(self):
        table = build_spf_sieve(5000)
        for i in range(2, 5001):
            p = table.smallest_factor(i)
            assert i % p == 0
            assert p * p <= i or p == i

    def test_guards(self):
        with pytest.raises(DomainError):
            build_spf_sieve(1)
        with pytest.raises(ResourceError):
            build_spf_sieve(2**31 + 1)


class TestPrimesInRange:
    def test_examples(self):
        assert primes_in_range(10, 20) == [11, 13, 17, 19]
        assert primes_in_range(1, 10) == [2, 3, 5, 7]

    def test_interval_count_for_extremal_modulus(self):
        # pi(1e5) = 9592 and pi(8685) = 1081, both pinned against the
        # independent Eratosthenes counter below
        lo = int(10**5 / math.log(10**5))
        assert lo == 8685
        ps = primes_in_range(lo, 10**5)
        assert len(ps) == 9592 - 1081 == 8511
        assert eratosthenes_count(10**5) == 9592
        assert eratosthenes_count(8685) == 1081
        table = build_spf_sieve(10**5)
        assert ps == [p for p in table.primes() if p > lo]

    def test_error_on_reversed_bounds(self):
        with pytest.raises(DomainError):
            primes_in_range(20, 10)

    def test_primes_upto_matches_independent_count(self):
        assert len(primes_upto(10**4)) == eratosthenes_count(10**4) == 1229


class TestDivisors:
    def test_small(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]
        assert divisors(factorize(36)) == [1, 2, 3, 4, 6, 9, 12, 18, 36]


class TestExactRationals:
    @given(
        st.integers(-(10**12), 10**12),
        st.integers(1, 10**12),
        st.integers(-(10**12), 10**12),
        st.integers(1, 10**12),
    )
    def test_add_then_subtract_is_identity(self, a, b, c, d):
        x = Fraction(a, b)
        y = Fraction(c, d)
        assert (x + y) - y == x

    @given(st.integers(-(10**9), 10**9), st.integers(1, 10**9))
    def test_lowest_terms_and_positive_denominator(self, a, b):
        x = Fraction(a, b)
        assert x.denominator > 0
        assert math.gcd(abs(x.numerator), x.denominator) == 1
