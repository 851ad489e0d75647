import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwlab import numth
from mwlab.numth import (
    Factorization,
    PrimeRange,
    bsgs_dlog,
    crt,
    exact_valuation,
    factor,
    integer_kernel,
    is_prime,
    multiplicative_order,
    primes_in,
)


def trial_division_primes(lo, hi):
    """Oracle: primality by trial division."""
    out = []
    for n in range(max(lo, 2), hi + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def brute_order(a, p):
    """Oracle: multiplicative order by direct exponentiation."""
    x = a % p
    acc = x
    for n in range(1, p):
        if acc == 1:
            return n
        acc = acc * x % p
    raise AssertionError("no order found")


class TestFactor:
    def test_one_has_empty_factorization(self):
        assert factor(1).factors == ()

    def test_known_values(self):
        assert factor(15).factors == ((3, 1), (5, 1))
        assert factor(24).factors == ((2, 3), (3, 1))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            factor(0)
        with pytest.raises(ValueError):
            factor(-12)

    def test_rho_path_beyond_trial_bound(self):
        # both factors exceed the trial-division bound
        p, q = 1000003, 1000033
        assert factor(p * q).factors == ((p, 1), (q, 1))

    def test_large_prime(self):
        p = 10**12 + 39
        assert is_prime(p)
        assert factor(p).factors == ((p, 1),)

    @given(st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=300, deadline=None)
    def test_recompose_roundtrip(self, n):
        f = factor(n)
        acc = 1
        for p, e in f.factors:
            acc *= p**e
        assert acc == n
        assert list(f.primes) == sorted(f.primes)

    def test_invalid_factorization_rejected(self):
        with pytest.raises(ValueError):
            Factorization(6, ((3, 1), (2, 1)))
        with pytest.raises(ValueError):
            Factorization(6, ((2, 1),))


class TestPrimes:
    def test_known_windows(self):
        assert primes_in(PrimeRange(2, 10)) == [2, 3, 5, 7]
        assert primes_in(PrimeRange(14, 16)) == []
        assert primes_in(PrimeRange(97, 97)) == [97]

    def test_matches_trial_division(self):
        assert primes_in(PrimeRange(2, 2000)) == trial_division_primes(2, 2000)
        assert primes_in(PrimeRange(500, 700)) == trial_division_primes(500, 700)

    def test_segmented_window(self):
        lo, hi = 5_000_000, 5_000_200
        assert primes_in(PrimeRange(lo, hi)) == trial_division_primes(lo, hi)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            PrimeRange(1, 10)
        with pytest.raises(ValueError):
            PrimeRange(11, 5)

    def test_is_prime_against_sieve(self):
        flags = set(trial_division_primes(2, 5000))
        for n in range(2, 5000):
            assert is_prime(n) == (n in flags)


class TestMultiplicativeOrder:
    def test_identity(self):
        assert multiplicative_order(1, 13) == 1

    def test_known_values(self):
        assert multiplicative_order(2, 7) == 3
        assert multiplicative_order(2, 41) == 20

    def test_rejects_divisible_base(self):
        with pytest.raises(ValueError):
            multiplicative_order(14, 7)

    def test_against_brute_force(self):
        for p in primes_in(PrimeRange(3, 100)):
            for a in range(2, 20):
                if a % p == 0:
                    continue
                assert multiplicative_order(a, p) == brute_order(a, p)

    def test_order_divides_group_order(self):
        for p in primes_in(PrimeRange(3, 300)):
            for a in (2, 3, 5, 10):
                if a % p:
                    assert (p - 1) % multiplicative_order(a, p) == 0

    def test_minimality_via_divisors(self):
        for a, p in ((2, 101), (3, 257), (7, 409)):
            t = multiplicative_order(a, p)
            assert pow(a, t, p) == 1
            for d in range(1, t):
                if t % d == 0:
                    assert pow(a, d, p) != 1


class TestExactValuation:
    def test_known_values(self):
        assert exact_valuation(2, 3, 24) is True
        assert exact_valuation(5, 2, 20) is False
        assert exact_valuation(3, 0, 8) is True

    @given(
        st.sampled_from([2, 3, 5, 7, 11]),
        st.integers(min_value=0, max_value=6),
        st.integers(min_value=1, max_value=10**6),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_factor_exponent(self, l, k, n):
        assert exact_valuation(l, k, n) == (factor(n).exponent_of(l) == k)


class TestCrt:
    def test_known_values(self):
        assert crt([(2, 3), (3, 5)]) == (8, 15)
        assert crt([(0, 1)]) == (0, 1)
        assert crt([(1, 2), (0, 2)]) is None

    def test_non_coprime_compatible(self):
        value, modulus = crt([(2, 4), (2, 6)])
        assert modulus == 12 and value % 4 == 2 and value % 6 == 2

    @given(st.lists(st.tuples(st.integers(0, 50), st.integers(1, 30)), min_size=1, max_size=4))
    @settings(max_examples=200, deadline=None)
    def test_solution_satisfies_all(self, congruences):
        result = crt(congruences)
        if result is None:
            # brute-force confirm there really is no solution
            bound = math.lcm(*(m for _, m in congruences))
            assert not any(
                all((t - r) % m == 0 for r, m in congruences) for t in range(bound)
            )
        else:
            value, modulus = result
            assert 0 <= value < modulus
            assert all((value - r) % m == 0 for r, m in congruences)
            assert modulus == math.lcm(*(m for _, m in congruences))


class TestBsgs:
    def test_known_values(self):
        assert bsgs_dlog(2, 1, 7, 3) == 0
        assert bsgs_dlog(2, 3, 5, 4) == 3
        assert bsgs_dlog(2, 3, 7, 3) is None

    def test_rejects_noncoprime(self):
        with pytest.raises(ValueError):
            bsgs_dlog(7, 3, 7, 1)
        with pytest.raises(ValueError):
            bsgs_dlog(3, 7, 7, 6)

    def test_exhaustive_agreement(self):
        for p in (11, 13, 101):
            for base in (2, 3, 7):
                t = multiplicative_order(base, p)
                powers = {}
                acc = 1
                for e in range(t):
                    powers.setdefault(acc, e)
                    acc = acc * base % p
                for target in range(1, p):
                    assert bsgs_dlog(base, target, p, t) == powers.get(target)


class TestIntegerKernel:
    def test_zero_matrix(self):
        basis = integer_kernel([[0, 0]], 2)
        assert len(basis) == 2

    def test_full_rank_trivial_kernel(self):
        assert integer_kernel([[1, 0], [0, 1]], 2) == []

    def test_kernel_vectors_annihilate(self):
        rows = [[2, 4, 6], [1, 3, 5], [0, 1, 2]]
        for vec in integer_kernel(rows, 3):
            assert all(sum(r[i] * vec[i] for i in range(3)) == 0 for r in rows)

    @pytest.mark.parametrize(
        "rows,ncols",
        [
            ([[2, 4, 6], [1, 3, 5]], 3),
            ([[1, 1, 0], [0, 0, 2]], 3),
            ([[2, 1], [0, 0]], 2),
            ([[6, 10, 15]], 3),
        ],
    )
    def test_kernel_is_saturated(self, rows, ncols):
        # Every small integer solution must be an integer combination of the
        # basis; catches bases spanning only a finite-index sublattice.
        import itertools

        basis = integer_kernel(rows, ncols)

        def in_lattice(vec):
            if not basis:
                return not any(vec)
            return any(
                all(
                    sum(c * b[i] for c, b in zip(coeffs, basis)) == vec[i]
                    for i in range(ncols)
                )
                for coeffs in itertools.product(range(-20, 21), repeat=len(basis))
            )

        for v in itertools.product(range(-4, 5), repeat=ncols):
            if all(sum(r[i] * v[i] for i in range(ncols)) == 0 for r in rows):
                assert in_lattice(list(v)), f"kernel vector {v} outside basis lattice"
