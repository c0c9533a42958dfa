"""Exact arithmetic foundation: integers, rationals, F_q, polynomials and matrices."""

from arithlab_toolkit.exactnum.ntheory import (
    bernoulli, crt, divisors, euler_phi, factorize, hilbert_symbol, inverse_mod, is_prime,
    legendre_symbol, moebius_mu, primes_up_to, primitive_root, sigma_k, valuation,
)
from arithlab_toolkit.exactnum.finite_field import FiniteField, FqElement, discrete_log
from arithlab_toolkit.exactnum.poly import (
    IntPoly, RatPoly, cyclotomic_poly, make_poly, squarefree_decomposition, sylvester_matrix,
)
from arithlab_toolkit.exactnum.linalg import (
    RatMatrix, count_by_norm, hnf_rows, short_vectors,
)

__all__ = [
    "bernoulli", "crt", "divisors", "euler_phi", "factorize", "hilbert_symbol", "inverse_mod",
    "is_prime", "legendre_symbol", "moebius_mu", "primes_up_to", "primitive_root", "sigma_k",
    "valuation", "FiniteField", "FqElement", "discrete_log", "IntPoly", "RatPoly",
    "cyclotomic_poly", "make_poly", "squarefree_decomposition", "sylvester_matrix", "RatMatrix",
    "count_by_norm", "hnf_rows", "short_vectors",
]
