"""Integer Utility Functions.

This module provides the small number-theoretic helpers used across the
field, submodule and subgroup modules. q - 1 and the orders d are factored
by trial division; primality, multiplicative orders and prime-power
splitting come from sympy.ntheory.
"""

from functools import lru_cache
from math import gcd
from typing import Dict, List, Tuple

from sympy.ntheory import factorint, isprime, n_order

from .errors import NotPrime, NotPrimePower


@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Factor a positive integer by trial division.

    Args:
        n: Integer >= 1.

    Returns:
        Tuple of (prime, exponent) pairs in increasing prime order.
        factorize(1) is the empty tuple.
    """
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    factors: Dict[int, int] = {}
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            factors[f] = factors.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return tuple(sorted(factors.items()))


def prime_divisors(n: int) -> List[int]:
    """Distinct primes dividing n, increasing."""
    return [prime for prime, _ in factorize(n)]


def divisors(n: int) -> List[int]:
    """All positive divisors of n, increasing."""
    result = [1]
    for prime, exp in factorize(n):
        result = [d * prime ** k for d in result for k in range(exp + 1)]
    return sorted(result)


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def multiplicative_order_mod(a: int, d: int) -> int:
    """Least m >= 1 with a^m = 1 (mod d); requires gcd(a, d) = 1.

    For d = 1 every power is congruent to 1, and the order is taken as 0
    so that a^0 is the answer (the smallest power of a that is 1 mod 1).
    """
    if d == 1:
        return 0
    if gcd(a, d) != 1:
        raise ValueError(f"{a} is not invertible modulo {d}")
    return int(n_order(a, d))


def prime_power_decompose(q: int) -> Tuple[int, int]:
    """Split a prime power q into (p, n) with q = p^n.

    Raises:
        NotPrimePower: If q is not a prime power.
    """
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    (p, n), = factors.items()
    return int(p), int(n)


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def gaussian_binomial(n: int, k: int, r: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over F_r."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= r ** (n - i) - 1
        den *= r ** (i + 1) - 1
    return num // den


def gaussian_total(n: int, r: int) -> int:
    """Total number of subspaces of an n-dimensional space over F_r."""
    return sum(gaussian_binomial(n, k, r) for k in range(n + 1))
