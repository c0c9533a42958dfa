"""Rational quaternion algebras (a, b) with i^2 = a, j^2 = b, k = ij = -ji."""

import logging
from fractions import Fraction
from typing import Iterable, List, Set, Tuple, Union

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import hilbert_symbol, prime_factors

logger = logging.getLogger(__name__)

Quaternion = Tuple[Fraction, Fraction, Fraction, Fraction]
Place = Union[int, str]

INFINITY = "inf"


def quaternion(*coords) -> Quaternion:
    if len(coords) == 1:
        coords = tuple(coords[0])
    if len(coords) != 4:
        raise DomainError(f"a quaternion has 4 coordinates, got {len(coords)}")
    return tuple(Fraction(c) for c in coords)


class QuatAlgebra:
    """The algebra (a, b) over Q; elements are 4-tuples x0 + x1 i + x2 j + x3 k."""

    def __init__(self, a, b):
        self.a, self.b = Fraction(a), Fraction(b)
        if self.a == 0 or self.b == 0:
            raise DomainError("quaternion algebra parameters must be nonzero")

    def __repr__(self) -> str:
        return f"QuatAlgebra({self.a}, {self.b})"

    def __eq__(self, other) -> bool:
        return isinstance(other, QuatAlgebra) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    @property
    def one(self) -> Quaternion:
        return quaternion(1, 0, 0, 0)

    def mul(self, x: Quaternion, y: Quaternion) -> Quaternion:
        a, b = self.a, self.b
        x0, x1, x2, x3 = x
        y0, y1, y2, y3 = y
        return (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )

    def conj(self, x: Quaternion) -> Quaternion:
        return (x[0], -x[1], -x[2], -x[3])

    def trace(self, x: Quaternion) -> Fraction:
        return 2 * x[0]

    def norm(self, x: Quaternion) -> Fraction:
        """Reduced norm x x* = x0^2 - a x1^2 - b x2^2 + ab x3^2."""
        a, b = self.a, self.b
        return x[0] ** 2 - a * x[1] ** 2 - b * x[2] ** 2 + a * b * x[3] ** 2

    def bilinear(self, x: Quaternion, y: Quaternion) -> Fraction:
        """tr(x y*) = nu(x+y) - nu(x) - nu(y)."""
        a, b = self.a, self.b
        return 2 * (x[0] * y[0] - a * x[1] * y[1] - b * x[2] * y[2] + a * b * x[3] * y[3])

    def scale(self, c, x: Quaternion) -> Quaternion:
        c = Fraction(c)
        return tuple(c * t for t in x)

    def add(self, x: Quaternion, y: Quaternion) -> Quaternion:
        return tuple(s + t for s, t in zip(x, y))

    def sub(self, x: Quaternion, y: Quaternion) -> Quaternion:
        return tuple(s - t for s, t in zip(x, y))

    def inverse(self, x: Quaternion) -> Quaternion:
        n = self.norm(x)
        if n == 0:
            raise DomainError(f"{x} is not invertible")
        return self.scale(1 / n, self.conj(x))

    def combine(self, coeffs: Iterable, basis: List[Quaternion]) -> Quaternion:
        out = [Fraction(0)] * 4
        for c, q in zip(coeffs, basis):
            if c:
                for t in range(4):
                    out[t] += c * q[t]
        return tuple(out)

    def is_definite(self) -> bool:
        return self.a < 0 and self.b < 0

    def ramification(self) -> Set[Place]:
        """Places where the algebra is a division algebra (even cardinality)."""
        candidates: Set[Place] = {INFINITY, 2}
        for v in (self.a, self.b):
            for part in (v.numerator, v.denominator):
                if abs(part) > 1:
                    candidates.update(prime_factors(part))
        ramified = {p for p in candidates if hilbert_symbol(self.a, self.b, p) == -1}
        if len(ramified) % 2:
            raise ConsistencyError(f"odd number of ramified places {ramified} for {self}")
        logger.debug("%s ramifies at %s", self, ramified)
        return ramified

    def discriminant(self) -> int:
        d = 1
        for p in self.ramification():
            if p != INFINITY:
                d *= p
        return d
