"""Exact integer arithmetic: gcd, factorization, prime sieves.

Everything here is pure and deterministic.  The smallest-prime-factor table
is immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError

# Largest number of SPF entries we are willing to allocate (uint32, ~8 GiB).
SPF_ENTRY_LIMIT = 2**31
# Simple sieves (primes_in_range and friends) refuse beyond this bound.
SIEVE_LIMIT = 10**8

# Strong-pseudoprime witnesses making Miller-Rabin deterministic below
# 3.317e24; callers stay far under that (see factorize).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers.

    gcd(0, n) = n by convention, which is exactly what sums over
    gcd(k - 1, n) need when k = 1.  gcd(0, 0) is undefined here.
    """
    if a < 0 or b < 0:
        raise DomainError(f"gcd expects nonnegative arguments, got ({a}, {b})")
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer with its canonical prime factorization.

    factors is a tuple of (prime, exponent) pairs with strictly increasing
    primes and exponents >= 1; the empty tuple encodes 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise DomainError(f"FactoredInteger value must be positive, got {self.value}")
        prod = 1
        prev = 1
        for p, k in self.factors:
            if p <= prev:
                raise DomainError("prime factors must be strictly increasing")
            if k < 1:
                raise DomainError("exponents must be >= 1")
            prod *= p**k
            prev = p
        if prod != self.value:
            raise DomainError(
                f"factor product {prod} does not reproduce value {self.value}"
            )

    def __iter__(self):
        return iter(self.factors)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n below 3.317e24 (fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """One nontrivial factor of composite n (Brent's cycle variant).

    The parameter sequence is fixed, so results are deterministic.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ResourceError(f"rho factorization failed for {n}")  # pragma: no cover


# Trial-division prime cache, grown geometrically up to 10**6.
_TRIAL_LIMIT_MAX = 10**6
_trial_primes: list[int] = []
_trial_limit = 0


def _trial_primes_upto(limit: int) -> list[int]:
    global _trial_primes, _trial_limit
    limit = min(limit, _TRIAL_LIMIT_MAX)
    if limit > _trial_limit:
        new_limit = min(max(limit, 2 * _trial_limit, 1000), _TRIAL_LIMIT_MAX)
        _trial_primes = primes_upto(new_limit)
        _trial_limit = new_limit
    return _trial_primes


def factorize(n: int) -> FactoredInteger:
    """Canonical prime factorization of n >= 1.

    Trial division by sieved primes up to 10**6, then Brent's rho with a
    deterministic primality test for any remaining cofactor.  Not meant for
    cryptographic-size inputs, but it will not silently fail on them either:
    rho keeps splitting until every factor passes the primality test.
    """
    if not isinstance(n, int):
        raise DomainError(f"factorize expects an integer, got {type(n).__name__}")
    if n < 1:
        raise DomainError(f"factorize expects n >= 1, got {n}")
    value = n
    factors: dict[int, int] = {}
    m = n
    trial = _trial_primes_upto(math.isqrt(n) + 1)
    exhausted = True
    for p in trial:
        if p * p > m:
            exhausted = False
            break
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    if m > 1:
        # an early break means every prime <= sqrt(m) was tried, so m is
        # prime; after exhaustion the same holds up to the squared bound
        if not exhausted or m <= trial[-1] ** 2 or is_prime(m):
            factors[m] = factors.get(m, 0) + 1
        else:
            stack = [m]
            while stack:
                c = stack.pop()
                if is_prime(c):
                    factors[c] = factors.get(c, 0) + 1
                    continue
                d = _brent_rho(c)
                stack.append(d)
                stack.append(c // d)
    return FactoredInteger(value, tuple(sorted(factors.items())))


def divisors(n: int | FactoredInteger) -> list[int]:
    """All positive divisors, ascending."""
    fi = n if isinstance(n, FactoredInteger) else factorize(n)
    divs = [1]
    for p, k in fi.factors:
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return sorted(divs)


def primes_upto(n: int) -> list[int]:
    """All primes <= n via a plain Eratosthenes sieve."""
    if n > SIEVE_LIMIT:
        raise ResourceError(f"sieve limit {n} exceeds guard {SIEVE_LIMIT}")
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * ((n - p * p) // p + 1)
    return [i for i in range(2, n + 1) if sieve[i]]


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes p with lo < p <= hi (strict lower bound, inclusive upper)."""
    if lo < 1:
        raise DomainError(f"lower bound must be >= 1, got {lo}")
    if lo > hi:
        raise DomainError(f"empty range: lo={lo} > hi={hi}")
    return [p for p in primes_upto(hi) if p > lo]


@dataclass(frozen=True)
class SpfTable:
    """Smallest-prime-factor table for 2 <= i <= limit.

    spf[i] is the smallest prime dividing i, so spf[p] == p exactly for
    primes, and repeated division by spf recovers the factorization of any
    i <= limit in O(log i).
    """

    limit: int
    spf: np.ndarray

    def smallest_factor(self, i: int) -> int:
        if not 2 <= i <= self.limit:
            raise DomainError(f"index {i} outside [2, {self.limit}]")
        return int(self.spf[i])

    def is_prime(self, i: int) -> bool:
        return i >= 2 and int(self.spf[i]) == i

    def factorize(self, i: int) -> FactoredInteger:
        if not 1 <= i <= self.limit:
            raise DomainError(f"index {i} outside [1, {self.limit}]")
        value = i
        factors = []
        while i > 1:
            p = int(self.spf[i])
            k = 0
            while i % p == 0:
                i //= p
                k += 1
            factors.append((p, k))
        return FactoredInteger(value, tuple(factors))

    def primes(self) -> list[int]:
        idx = np.arange(2, self.limit + 1, dtype=np.int64)
        return idx[self.spf[2:] == idx].tolist()


def build_spf_sieve(limit: int) -> SpfTable:
    """Build the smallest-prime-factor table for [2, limit]."""
    if limit < 2:
        raise DomainError(f"SPF sieve needs limit >= 2, got {limit}")
    if limit + 1 > SPF_ENTRY_LIMIT:
        raise ResourceError(
            f"SPF sieve of {limit + 1} entries exceeds guard {SPF_ENTRY_LIMIT}"
        )
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            window = spf[p * p :: p]
            window[window == 0] = p
    untouched = np.nonzero(spf[2:] == 0)[0] + 2
    spf[untouched] = untouched
    spf.setflags(write=False)
    return SpfTable(limit, spf)
