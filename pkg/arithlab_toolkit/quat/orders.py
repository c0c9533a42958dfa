"""Orders in definite quaternion algebras and the maximal orders of prime discriminant."""

import logging
import math
from fractions import Fraction
from typing import Sequence

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum.linalg import RatMatrix
from arithlab_toolkit.exactnum.ntheory import is_prime, legendre_symbol, primes_up_to
from arithlab_toolkit.quat.algebra import QuatAlgebra, Quaternion, quaternion
from arithlab_toolkit.quat.lattice import QuatLattice

logger = logging.getLogger(__name__)


class QuatOrder:
    """A subring of rank 4 containing 1; construction verifies the ring axioms."""

    def __init__(self, algebra: QuatAlgebra, basis: Sequence[Quaternion]):
        self.algebra = algebra
        self.lattice = QuatLattice.from_generators(algebra, [quaternion(b) for b in basis])
        self.given_basis = tuple(quaternion(b) for b in basis)
        lat = self.lattice
        if not lat.contains(algebra.one):
            raise DomainError("an order must contain 1")
        for x in lat.basis:
            if algebra.norm(x).denominator != 1 or algebra.trace(x).denominator != 1:
                raise DomainError(f"basis element {x} is not integral")
            for y in lat.basis:
                if not lat.contains(algebra.mul(x, y)):
                    raise DomainError(f"lattice is not closed under multiplication: {x} * {y}")

    @property
    def basis(self):
        return self.lattice.basis

    def __repr__(self) -> str:
        return f"QuatOrder({self.algebra}, basis={list(self.given_basis)})"

    def discriminant(self) -> int:
        """sqrt |det tr(d_i* d_j)| over a Z-basis."""
        alg, b = self.algebra, self.lattice.basis
        gram = RatMatrix([[alg.trace(alg.mul(alg.conj(x), y)) for y in b] for x in b])
        d = abs(gram.det())
        root = math.isqrt(int(d))
        if d.denominator != 1 or root * root != d:
            raise ConsistencyError(f"order discriminant squared {d} is not a square")
        return root

    def is_maximal(self) -> bool:
        return self.discriminant() == self.algebra.discriminant()

    def unit_ideal(self) -> QuatLattice:
        return self.lattice

    def is_right_ideal(self, ideal: QuatLattice) -> bool:
        alg = self.algebra
        return all(ideal.contains(alg.mul(x, r)) for x in ideal.basis for r in self.basis)

    def units(self):
        """Elements of reduced norm 1 (a finite group for a definite algebra)."""
        if not self.algebra.is_definite():
            raise DomainError("unit group is infinite for an indefinite algebra")
        return self.lattice.elements_of_norm(Fraction(1))


def lipschitz_order() -> QuatOrder:
    return QuatOrder(QuatAlgebra(-1, -1), [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])


def hurwitz_order() -> QuatOrder:
    h = Fraction(1, 2)
    return QuatOrder(QuatAlgebra(-1, -1),
                     [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (h, h, h, h)])


def standard_maximal_order(N: int) -> QuatOrder:
    """Z[1, i, (1+j)/2, (i+k)/2] in (-1, -N) for a prime N = 3 mod 4."""
    if not is_prime(N) or N % 4 != 3:
        raise DomainError(f"standard maximal order needs a prime N = 3 mod 4, got {N}")
    h = Fraction(1, 2)
    return QuatOrder(QuatAlgebra(-1, -N),
                     [(1, 0, 0, 0), (0, 1, 0, 0), (h, 0, h, 0), (0, h, 0, h)])


def _auxiliary_prime(N: int) -> int:
    for q in primes_up_to(10 * N + 100):
        if q % 4 == 3 and legendre_symbol(N, q) == -1:
            return q
    raise AssertionError(f"no auxiliary prime found for {N}")


def maximal_order(N: int) -> QuatOrder:
    """A maximal order in the definite algebra ramified exactly at N and infinity.

    N = 2 gives the Hurwitz order, N = 3 mod 4 the standard order, and N = 1 mod 4 uses
    (-N, -q) for a prime q = 3 mod 4 with N a non-residue mod q, with basis
    1, (1+j)/2, i(1+j)/2, (r+i)k/q where q divides r^2 N + 1.
    """
    if not is_prime(N):
        raise DomainError(f"discriminant {N} must be prime")
    if N == 2:
        order = hurwitz_order()
    elif N % 4 == 3:
        order = standard_maximal_order(N)
    else:
        q = _auxiliary_prime(N)
        r = next(r for r in range(1, q) if (r * r * N + 1) % q == 0)
        alg = QuatAlgebra(-N, -q)
        h = Fraction(1, 2)
        # (r + i) k / q = (r k + i k) / q and i k = a j
        rk_ik = (0, 0, Fraction(-N, q), Fraction(r, q))
        order = QuatOrder(alg, [(1, 0, 0, 0), (h, 0, h, 0), (0, h, 0, h), rk_ik])
    disc = order.discriminant()
    if disc != N or order.algebra.discriminant() != N:
        raise ConsistencyError(f"order for N={N} has discriminant {disc}")
    logger.debug("maximal order of discriminant %d: %s", N, order)
    return order
