# Tests for number_utils module

"""Tests for the integer helpers."""

import pytest

from aglmobius.errors import NotPrime, NotPrimePower
from aglmobius.number_utils import (
    divisors, factorize, gaussian_binomial, gaussian_total, is_prime, multiplicative_order_mod,
    prime_divisors, prime_power_decompose, require_prime,
)


class TestFactorize:
    """Tests for trial-division factorisation."""

    def test_factorize_composite(self):
        assert factorize(360) == ((2, 3), (3, 2), (5, 1))

    def test_factorize_one(self):
        assert factorize(1) == ()

    def test_factorize_rejects_zero(self):
        with pytest.raises(ValueError):
            factorize(0)

    def test_prime_divisors_and_divisors(self):
        assert prime_divisors(24) == [2, 3]
        assert divisors(24) == [1, 2, 3, 4, 6, 8, 12, 24]
        assert divisors(1) == [1]

    @pytest.mark.parametrize("n,expected", [(2, True), (9, False), (13, True), (1, False), (0, False)])
    def test_is_prime(self, n, expected):
        assert is_prime(n) is expected

    def test_is_prime_agrees_with_factorize(self):
        for n in range(2, 300):
            assert is_prime(n) is (factorize(n) == ((n, 1),))


class TestPrimePowers:
    """Tests for prime power handling."""

    @pytest.mark.parametrize("q,expected", [(2, (2, 1)), (8, (2, 3)), (9, (3, 2)), (25, (5, 2)), (27, (3, 3))])
    def test_decompose(self, q, expected):
        assert prime_power_decompose(q) == expected

    def test_decompose_returns_plain_ints(self):
        p, n = prime_power_decompose(3 ** 5)
        assert (type(p), type(n)) == (int, int)
        assert (p, n) == (3, 5)

    @pytest.mark.parametrize("q", [1, 6, 12, 100])
    def test_decompose_rejects_non_prime_powers(self, q):
        with pytest.raises(NotPrimePower, match="not a prime power"):
            prime_power_decompose(q)

    def test_require_prime(self):
        require_prime(7)
        with pytest.raises(NotPrime):
            require_prime(4)


class TestMultiplicativeOrder:
    """Tests for the order of p modulo d."""

    def test_order_examples(self):
        assert multiplicative_order_mod(2, 3) == 2
        assert multiplicative_order_mod(3, 2) == 1
        assert multiplicative_order_mod(3, 13) == 3

    def test_order_mod_one_is_zero(self):
        assert multiplicative_order_mod(5, 1) == 0

    @pytest.mark.parametrize("a", [2, 3, 5, 7])
    def test_order_matches_repeated_multiplication(self, a):
        for d in range(2, 80):
            if d % a == 0:
                continue
            m = multiplicative_order_mod(a, d)
            assert type(m) is int
            assert pow(a, m, d) == 1
            assert all(pow(a, k, d) != 1 for k in range(1, m))

    def test_order_rejects_non_units(self):
        with pytest.raises(ValueError):
            multiplicative_order_mod(2, 6)


class TestGaussianBinomials:
    """Tests for subspace counts."""

    def test_gaussian_binomial(self):
        assert gaussian_binomial(2, 1, 4) == 5
        assert gaussian_binomial(3, 1, 2) == 7
        assert gaussian_binomial(4, 2, 2) == 35
        assert gaussian_binomial(3, 0, 5) == 1

    def test_gaussian_total(self):
        assert gaussian_total(2, 2) == 5
        assert gaussian_total(3, 2) == 16
        assert gaussian_total(2, 3) == 6
