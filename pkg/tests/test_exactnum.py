import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from arithlab_toolkit.errors import BudgetExceeded, DomainError
from arithlab_toolkit.exactnum import (FiniteField, IntPoly, RatMatrix, bernoulli, count_by_norm,
                                       crt, cyclotomic_poly, discrete_log, divisors, factorize,
                                       hilbert_symbol, hnf_rows, is_prime, legendre_symbol,
                                       make_poly, primes_up_to, short_vectors, sigma_k,
                                       valuation)


def test_factorize_and_primality():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(-97) == {97: 1}
    assert is_prime(97) and not is_prime(561) and not is_prime(1)
    assert primes_up_to(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(DomainError):
        factorize(0)


def test_divisor_functions():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert sigma_k(12, 1) == 28
    assert sigma_k(12, 0) == 6
    assert sigma_k(1, 11) == 1


def test_crt_and_valuation():
    assert crt([2, 3], [3, 5]) == (8, 15)
    with pytest.raises(DomainError):
        crt([1, 1], [4, 6])
    assert valuation(2, Fraction(3, 8)) == -3
    assert valuation(5, 250) == 3
    with pytest.raises(DomainError):
        valuation(3, 0)


def test_symbols():
    assert legendre_symbol(2, 7) == 1
    assert legendre_symbol(3, 7) == -1
    assert legendre_symbol(14, 7) == 0
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(-1, -3, 3) == -1


def test_hilbert_product_formula():
    for a, b in [(-1, -11), (-2, -5), (3, 7), (-6, 10)]:
        places = ["inf"] + sorted({2} | set(factorize(a)) | set(factorize(b)))
        prod = 1
        for p in places:
            prod *= hilbert_symbol(a, b, p)
        assert prod == 1


def test_bernoulli():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(7) == 0


def test_finite_field_arithmetic():
    F9 = FiniteField(3, 2, modulus=(1, 0, 1))
    t = F9.t
    assert t * t == F9(-1)
    theta = t + F9.one
    assert theta.is_generator()
    assert discrete_log(theta, theta ** 5) == 5
    assert len(F9.subfield_elements(1)) == 3
    assert all(x.frobenius(2) == x for x in F9.elements())
    with pytest.raises(DomainError):
        FiniteField(3, 2, modulus=(2, 0, 1))


def test_finite_field_generator_is_smallest():
    F7 = FiniteField(7)
    assert F7.generator() == F7(3)


def test_polynomial_factorization():
    f = IntPoly([-1, 0, 0, 0, 1])
    factors = f.factor_over_z()
    assert [(g.coeffs, m) for g, m in factors] == [((-1, 1), 1), ((1, 1), 1), ((1, 0, 1), 1)]
    g = IntPoly([1, 2, 1])
    assert [(h.coeffs, m) for h, m in g.factor_over_z()] == [((1, 1), 2)]
    assert cyclotomic_poly(12).coeffs == (1, 0, -1, 0, 1)


def test_polynomial_division_and_gcd():
    f = make_poly([-1, 0, 1])
    g = make_poly([1, 1])
    q, r = divmod(f, g)
    assert q == make_poly([-1, 1]) and r.is_zero()
    assert f.gcd(make_poly([-1, 1])) == make_poly([-1, 1])


def test_matrix_basics():
    m = RatMatrix([[2, 1], [1, 3]])
    assert m.det() == 5
    assert m @ m.inverse() == RatMatrix.identity(2)
    assert RatMatrix([[1, 2], [3, 4]]).charpoly() == [-2, -5, 1]
    assert RatMatrix([[1, 2], [2, 4]]).kernel() == [[-2, 1]]
    with pytest.raises(DomainError):
        RatMatrix([[1, 2], [2, 4]]).inverse()


def test_bareiss_matches_laplace():
    m = RatMatrix([[Fraction(1, 2), 3, -1, 0], [2, 0, 5, Fraction(1, 3)], [1, 1, 1, 1],
                   [0, -2, 4, 7]])
    assert m.det() == m.cofactor_det()


def test_hnf():
    assert hnf_rows([[2, 0], [0, 2], [1, 1]]) == [[1, 1], [0, 2]]
    assert hnf_rows([[0, 0]]) == []


def test_short_vectors_a2():
    vecs = short_vectors([[2, 1], [1, 2]], 2)
    assert len([v for v, n in vecs if n == 2]) == 6
    assert ((0, 0), 0) in vecs
    counts = count_by_norm([[2, 1], [1, 2]], 6, num_threads=3)
    assert counts[0] == 1 and counts[2] == 6 and counts[6] == 6


@pytest.mark.parametrize("seed", range(6))
def test_short_vectors_match_brute_force(seed):
    rng = np.random.default_rng(seed)
    basis = rng.integers(-3, 4, size=(3, 3))
    while round(np.linalg.det(basis)) == 0:
        basis = rng.integers(-3, 4, size=(3, 3))
    gram = (basis.T @ basis).astype(int).tolist()
    bound = 30
    inv = np.linalg.inv(np.array(gram, dtype=float))
    box = [math.floor(math.sqrt(bound * inv[i, i])) + 1 for i in range(3)]
    expected = set()
    for x in itertools.product(*(range(-b, b + 1) for b in box)):
        norm = sum(gram[i][j] * x[i] * x[j] for i in range(3) for j in range(3))
        if norm <= bound:
            expected.add((x, norm))
    found = short_vectors(gram, bound)
    assert len(found) == len(expected)
    assert set(found) == expected


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded, match="ARITHLAB_ENUM_BUDGET"):
        short_vectors([[2, 0], [0, 2]], 10_000, budget=50)
