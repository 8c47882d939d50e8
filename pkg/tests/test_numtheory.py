import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from subdeg.errors import DomainError, ResourceLimitError
from subdeg.families import Cyclic, ElementaryAbelian, Hamiltonian, construct
from subdeg.groupcore import census
from subdeg.numtheory import (
    PrimeSieve,
    b_coeff,
    decimal_str,
    elem_abelian_subgroup_count,
    gaussian_binomial,
    is_prime,
    nth_prime,
    parse_exact,
    phi,
    primes_below,
    sigma,
    tau,
)

from oracles import (
    phi_oracle,
    primes_oracle,
    sigma_oracle,
    subspace_count_oracle,
    tau_oracle,
)


class TestDivisorFunctions:
    def test_frozen_values(self):
        assert tau(1) == 1
        assert sigma(1) == 1
        assert phi(1) == 1
        assert tau(12) == 6
        assert sigma(12) == 28
        assert phi(12) == 4

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_prime_power_forms(self, p, k):
        assert tau(p**k) == k + 1
        assert sigma(p**k) == (p ** (k + 1) - 1) // (p - 1)
        assert phi(p) == p - 1

    @pytest.mark.parametrize("fn,oracle", [(tau, tau_oracle), (sigma, sigma_oracle),
                                           (phi, phi_oracle)])
    def test_against_enumeration(self, fn, oracle):
        for n in range(1, 400):
            assert fn(n) == oracle(n), n

    @pytest.mark.parametrize("fn", [tau, sigma, phi])
    def test_rejects_zero(self, fn):
        with pytest.raises(DomainError):
            fn(0)

    @given(st.integers(1, 10**6), st.integers(1, 10**6))
    @settings(max_examples=200, deadline=None)
    def test_multiplicative_on_coprime_pairs(self, m, n):
        from math import gcd

        while gcd(m, n) != 1:
            n //= gcd(m, n)
        assert tau(m * n) == tau(m) * tau(n)
        assert sigma(m * n) == sigma(m) * sigma(n)
        assert phi(m * n) == phi(m) * phi(n)

    def test_tau_bound_full_sweep(self):
        # tau(n)^2 <= 4n for every n up to 1e6, tau computed by an
        # independent divisor-count sieve
        limit = 1_000_000
        counts = np.zeros(limit + 1, dtype=np.int32)
        for d in range(1, limit + 1):
            counts[d::d] += 1
        n = np.arange(limit + 1, dtype=np.int64)
        assert (counts[1:].astype(np.int64) ** 2 <= 4 * n[1:]).all()
        # and the sieve agrees with tau on a slice
        assert [tau(k) for k in range(1, 200)] == counts[1:200].tolist()


class TestPrimes:
    def test_frozen_values(self):
        assert nth_prime(1) == 2
        assert nth_prime(4) == 7
        assert nth_prime(25) == 97

    def test_matches_trial_division(self):
        expected = primes_oracle(100)
        assert [nth_prime(i) for i in range(1, 101)] == expected

    def test_primes_below(self):
        assert primes_below(20) == [2, 3, 5, 7, 11, 13, 17, 19]
        assert primes_below(2) == []

    def test_cap_exhaustion(self):
        sieve = PrimeSieve(cap=100)
        assert sieve.nth(25) == 97
        with pytest.raises(ResourceLimitError) as exc:
            sieve.nth(26)
        assert "100" in str(exc.value)
        with pytest.raises(ResourceLimitError):
            sieve.below(1000)

    def test_rejects_bad_index(self):
        with pytest.raises(DomainError):
            nth_prime(0)

    def test_is_prime_small(self):
        primes = set(primes_oracle(30))
        for n in range(130):
            assert is_prime(n) == (n in primes)


class TestGaussianBinomial:
    @pytest.mark.parametrize("n", range(0, 5))
    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_trivial_subspace(self, n, q):
        assert gaussian_binomial(n, 0, q) == 1

    def test_frozen_values(self):
        assert gaussian_binomial(2, 1, 2) == 3
        assert gaussian_binomial(4, 2, 2) == 35

    def test_k_above_n(self):
        assert gaussian_binomial(2, 3, 2) == 0

    def test_rejects_small_q(self):
        with pytest.raises(DomainError):
            gaussian_binomial(3, 1, 1)

    @pytest.mark.parametrize("q", [2, 3])
    def test_against_subspace_enumeration(self, q):
        top = 4 if q == 2 else 3
        for n in range(0, top + 1):
            for k in range(0, n + 1):
                assert gaussian_binomial(n, k, q) == subspace_count_oracle(n, k, q), \
                    (n, k, q)


class TestElemAbelianSubgroupCount:
    def test_frozen_values(self):
        assert elem_abelian_subgroup_count(0, 2) == 1
        assert elem_abelian_subgroup_count(2, 2) == 5
        assert elem_abelian_subgroup_count(3, 2) == 16
        assert elem_abelian_subgroup_count(-1, 2) == 0
        assert elem_abelian_subgroup_count(-1, 3) == 0

    def test_rejects_composite_p(self):
        with pytest.raises(DomainError):
            elem_abelian_subgroup_count(2, 4)

    def test_rejects_below_minus_one(self):
        with pytest.raises(DomainError):
            elem_abelian_subgroup_count(-2, 2)

    @pytest.mark.parametrize("p", [2, 3])
    def test_against_lattice_oracle(self, p):
        for rank in range(0, 5):
            expected = census(construct(ElementaryAbelian(p, rank))).total
            assert elem_abelian_subgroup_count(rank, p) == expected, (p, rank)


class TestBCoeff:
    def test_frozen_values(self):
        # oracle lattice sizes of Q8, Q8xC2, Q8xC2^2
        assert b_coeff(0) == 6
        assert b_coeff(1) == 19
        assert b_coeff(2) == 78

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            b_coeff(-1)

    @pytest.mark.parametrize("rank", [0, 1, 2])
    @pytest.mark.parametrize("odd", [(), (Cyclic(3),), (ElementaryAbelian(3, 2),)])
    def test_lattice_product_identity(self, rank, odd):
        group = construct(Hamiltonian(rank, odd))
        odd_total = 1
        if odd:
            odd_total = census(construct(odd[0])).total
        assert census(group).total == b_coeff(rank) * odd_total


class TestExactRational:
    @given(st.integers(-10**9, 10**9), st.integers(1, 10**9),
           st.integers(-10**9, 10**9), st.integers(1, 10**9))
    @settings(max_examples=300, deadline=None)
    def test_field_arithmetic_is_exact(self, a, b, c, d):
        x = Fraction(a, b)
        y = Fraction(c, d)
        assert (x + y) * (b * d) == a * d + c * b

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
    @settings(max_examples=300, deadline=None)
    def test_always_reduced(self, a, b):
        from math import gcd

        x = Fraction(a, b)
        assert x.denominator > 0
        assert gcd(abs(x.numerator), x.denominator) == 1

    @given(st.fractions(), st.fractions())
    @settings(max_examples=200, deadline=None)
    def test_order_by_cross_multiplication(self, x, y):
        assert (x < y) == (x.numerator * y.denominator < y.numerator * x.denominator)

    def test_parse_exact(self):
        assert parse_exact("0.8") == Fraction(4, 5)
        assert parse_exact("3/4") == Fraction(3, 4)
        assert parse_exact("1") == 1
        assert parse_exact("1.25e-2") == Fraction(1, 80)
        with pytest.raises(DomainError):
            parse_exact("abc")
        with pytest.raises(DomainError):
            parse_exact("1/0")

    def test_decimal_rendering(self):
        assert decimal_str(Fraction(7, 12)) == "0.583333333333"
        assert decimal_str(Fraction(2, 3), digits=5) == "0.66667"
        assert decimal_str(Fraction(5, 4)) == "1.25"
        assert decimal_str(Fraction(0)) == "0"
