"""Multiplicative arithmetic functions defined by prime-power local values.

A multiplicative function is pinned down by its values at prime powers:
f(1) = 1 and f(n) is the product of f(p^k) over the factorization of n.
Local evaluators return exact rationals even when the values are integers,
so the convolution algebra downstream can stay in one carrier type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import FactoredInteger, factorize
from .errors import DomainError


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the conventions used throughout:

    C(a, 0) = 1 for any integer a; C(a, b) = 0 for 0 <= a < b; and for
    negative a, C(a, b) = (-1)^b C(b - a - 1, b).
    """
    if b < 0:
        return 0
    if b == 0:
        return 1
    if a < 0:
        sign = -1 if b % 2 else 1
        return sign * math.comb(b - a - 1, b)
    if a < b:
        return 0
    return math.comb(a, b)


def binom_multiset(n: int, k: int) -> int:
    """Number of k-multisets drawn from n symbols: C(n+k-1, k)."""
    if k < 0:
        raise DomainError(f"multiset size must be >= 0, got {k}")
    return binom(n + k - 1, k)


@dataclass(frozen=True)
class MultiplicativeFunction:
    """A function given by its local evaluator (p, k) -> value at p^k.

    The implicit value at n = 1 is 1.
    """

    name: str
    local: Callable[[int, int], Fraction]

    def __call__(self, n: int | FactoredInteger) -> Fraction:
        return eval_at(self, n)

    def __repr__(self):
        return f"MultiplicativeFunction({self.name})"


def eval_at(f: MultiplicativeFunction, n: int | FactoredInteger) -> Fraction:
    """f(n) as the product of local values over the factorization of n."""
    fi = n if isinstance(n, FactoredInteger) else factorize(n)
    out = Fraction(1)
    for p, k in fi.factors:
        out *= f.local(p, k)
    return out


def eval_int(f: MultiplicativeFunction, n: int | FactoredInteger) -> int:
    """f(n) for integer-valued f; raises if the value is not integral."""
    v = eval_at(f, n)
    if v.denominator != 1:
        raise DomainError(f"{f.name}({n}) = {v} is not an integer")
    return v.numerator


def omega(n: int | FactoredInteger) -> int:
    """Number of distinct prime factors.  Additive, so it lives outside
    the multiplicative framework."""
    fi = n if isinstance(n, FactoredInteger) else factorize(n)
    return len(fi.factors)


def phi() -> MultiplicativeFunction:
    """Euler's totient: phi(p^k) = p^k - p^(k-1)."""
    return MultiplicativeFunction(
        "phi", lambda p, k: Fraction(p**k - p ** (k - 1))
    )


def jordan(m: int) -> MultiplicativeFunction:
    """Jordan totient of order m: value n^m prod (1 - p^-m)."""
    if m < 1:
        raise DomainError(f"jordan order must be >= 1, got {m}")
    return MultiplicativeFunction(
        f"jordan_{m}", lambda p, k: Fraction(p ** (m * k) - p ** (m * (k - 1)))
    )


def tau() -> MultiplicativeFunction:
    """Divisor count: tau(p^k) = k + 1."""
    return MultiplicativeFunction("tau", lambda p, k: Fraction(k + 1))


def tau_k(m: int) -> MultiplicativeFunction:
    """Piltz divisor function: ordered factorizations into m parts.

    tau_m(p^k) = C(k + m - 1, m - 1), computed directly rather than by
    repeated convolution so large exponents stay O(1).
    """
    if m < 1:
        raise DomainError(f"tau_k order must be >= 1, got {m}")
    return MultiplicativeFunction(
        f"tau_{m}", lambda p, k: Fraction(binom(k + m - 1, m - 1))
    )


def mu() -> MultiplicativeFunction:
    """Moebius function: -1 at primes, 0 at higher prime powers."""
    return MultiplicativeFunction(
        "mu", lambda p, k: Fraction(-1 if k == 1 else 0)
    )


def mu_iter(j: int) -> MultiplicativeFunction:
    """j-fold Dirichlet self-convolution of mu: local value (-1)^k C(j, k)."""
    if j < 1:
        raise DomainError(f"mu_iter order must be >= 1, got {j}")
    return MultiplicativeFunction(
        f"mu_iter_{j}",
        lambda p, k: Fraction((-1 if k % 2 else 1) * binom(j, k)),
    )


def psi(m: int) -> MultiplicativeFunction:
    """Jordan-totient analog of the gcd-sum (Pillai) function.

    psi_m(n) = sum over d | n of d^m phi_m(n/d), with local value
    p^(mk) (1 + k (1 - p^-m)).  In particular psi_1(n)/n equals the mean
    of gcd(k, n) over k <= n.
    """
    if m < 1:
        raise DomainError(f"psi order must be >= 1, got {m}")

    def local(p: int, k: int) -> Fraction:
        return Fraction(p ** (m * k)) * (1 + k * (1 - Fraction(1, p**m)))

    return MultiplicativeFunction(f"psi_{m}", local)


def one() -> MultiplicativeFunction:
    """The constant function 1, the convolution identity's right unit."""
    return MultiplicativeFunction("one", lambda p, k: Fraction(1))


def phi_normalized() -> MultiplicativeFunction:
    """phi(n)/n, with local value (p - 1)/p at every prime power."""
    return MultiplicativeFunction(
        "phi_over_n", lambda p, k: Fraction(p - 1, p)
    )


def pointwise_product(
    f: MultiplicativeFunction, g: MultiplicativeFunction
) -> MultiplicativeFunction:
    """Pointwise product f(n) g(n); multiplicative when both factors are."""
    return MultiplicativeFunction(
        f"({f.name}*{g.name})", lambda p, k: f.local(p, k) * g.local(p, k)
    )


def standard(name: str, param: int | None = None) -> MultiplicativeFunction:
    """Look up a standard function by name.

    Parameterized families (jordan, tau_k, mu_iter, psi) require param.
    """
    plain = {"phi": phi, "tau": tau, "mu": mu, "one": one,
             "phi_over_n": phi_normalized}
    parameterized = {"jordan": jordan, "tau_k": tau_k, "mu_iter": mu_iter,
                     "psi": psi}
    if name in plain:
        if param is not None:
            raise DomainError(f"{name} takes no parameter")
        return plain[name]()
    if name in parameterized:
        if param is None:
            raise DomainError(f"{name} requires a parameter")
        return parameterized[name](param)
    raise DomainError(f"unknown multiplicative function {name!r}")
