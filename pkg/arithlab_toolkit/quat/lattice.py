"""Full-rank Z-lattices inside a quaternion algebra, kept in canonical Hermite form."""

import logging
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.exactnum.linalg import RatMatrix, hnf_rows, short_vectors
from arithlab_toolkit.quat.algebra import QuatAlgebra, Quaternion

logger = logging.getLogger(__name__)


def rational_gcd(values: Iterable[Fraction]) -> Fraction:
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in vals), 1)
    num = reduce(math.gcd, (abs(int(v * den)) for v in vals))
    return Fraction(num, den)


class QuatLattice:
    """Rank-4 lattice given by a canonical rational basis (HNF of the cleared lattice)."""

    __slots__ = ("algebra", "basis", "_inv")

    def __init__(self, algebra: QuatAlgebra, basis: Sequence[Quaternion]):
        self.algebra = algebra
        self.basis: Tuple[Quaternion, ...] = tuple(tuple(Fraction(c) for c in q) for q in basis)
        if len(self.basis) != 4:
            raise DomainError(f"lattice needs 4 basis vectors, got {len(self.basis)}")
        self._inv: Optional[RatMatrix] = None

    @classmethod
    def from_generators(cls, algebra: QuatAlgebra, gens: Iterable[Quaternion]) -> "QuatLattice":
        gens = [tuple(Fraction(c) for c in g) for g in gens]
        den = reduce(lambda a, b: a * b // math.gcd(a, b),
                     (c.denominator for g in gens for c in g), 1)
        rows = hnf_rows([[int(c * den) for c in g] for g in gens])
        if len(rows) != 4:
            raise DomainError(f"generators span a rank-{len(rows)} lattice, not 4")
        return cls(algebra, [tuple(Fraction(c, den) for c in r) for r in rows])

    @property
    def key(self) -> Tuple[Quaternion, ...]:
        return self.basis

    def __eq__(self, other) -> bool:
        return isinstance(other, QuatLattice) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        rows = ["(" + ", ".join(str(c) for c in q) + ")" for q in self.basis]
        return f"QuatLattice[{'; '.join(rows)}]"

    # coordinates
    def _inverse(self) -> RatMatrix:
        if self._inv is None:
            self._inv = RatMatrix(self.basis).inverse()
        return self._inv

    def coords(self, x: Quaternion) -> List[Fraction]:
        inv = self._inverse()
        return [sum(x[t] * inv[t, j] for t in range(4)) for j in range(4)]

    def contains(self, x: Quaternion) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def contains_lattice(self, other: "QuatLattice") -> bool:
        return all(self.contains(q) for q in other.basis)

    def volume(self) -> Fraction:
        return abs(RatMatrix(self.basis).det())

    def index_in(self, other: "QuatLattice") -> Fraction:
        """[other : self] for self contained in other."""
        return self.volume() / other.volume()

    # constructions
    def sum(self, other: "QuatLattice") -> "QuatLattice":
        return QuatLattice.from_generators(self.algebra, self.basis + other.basis)

    def product(self, other: "QuatLattice") -> "QuatLattice":
        mul = self.algebra.mul
        return QuatLattice.from_generators(self.algebra,
                                           [mul(x, y) for x in self.basis for y in other.basis])

    def left_mul(self, d: Quaternion) -> "QuatLattice":
        mul = self.algebra.mul
        return QuatLattice.from_generators(self.algebra, [mul(d, x) for x in self.basis])

    def scale(self, c) -> "QuatLattice":
        c = Fraction(c)
        return QuatLattice.from_generators(self.algebra,
                                           [tuple(c * t for t in x) for x in self.basis])

    def conj(self) -> "QuatLattice":
        return QuatLattice.from_generators(self.algebra,
                                           [self.algebra.conj(x) for x in self.basis])

    def dual(self) -> "QuatLattice":
        """Dual for the coordinate dot product (used only for intersections)."""
        dual_rows = RatMatrix(self.basis).inverse().transpose()
        return QuatLattice.from_generators(self.algebra, dual_rows.rows)

    def intersection(self, other: "QuatLattice") -> "QuatLattice":
        return self.dual().sum(other.dual()).dual()

    def right_order(self) -> "QuatLattice":
        """{x : L x subset L} as the intersection of the lattices b^-1 L."""
        alg = self.algebra
        parts = [self.left_mul(alg.inverse(b)) for b in self.basis]
        return reduce(QuatLattice.intersection, parts)

    def left_order(self) -> "QuatLattice":
        alg = self.algebra
        parts = []
        for b in self.basis:
            binv = alg.inverse(b)
            parts.append(QuatLattice.from_generators(alg, [alg.mul(x, binv) for x in self.basis]))
        return reduce(QuatLattice.intersection, parts)

    # norm form
    def trace_gram(self) -> RatMatrix:
        bil = self.algebra.bilinear
        return RatMatrix([[bil(x, y) for y in self.basis] for x in self.basis])

    def norm(self) -> Fraction:
        """gcd of the reduced norms of all lattice elements."""
        alg = self.algebra
        coeffs = [alg.norm(x) for x in self.basis]
        coeffs += [alg.bilinear(self.basis[i], self.basis[j])
                   for i in range(4) for j in range(i + 1, 4)]
        return rational_gcd(coeffs)

    def integer_gram(self) -> Tuple[List[List[int]], int]:
        """(G, s) with G = s * trace Gram integral, so nu(x) = c^T G c / (2 s)."""
        gram = self.trace_gram()
        s = reduce(lambda a, b: a * b // math.gcd(a, b),
                   (gram[i, j].denominator for i in range(4) for j in range(4)), 1)
        return [[int(gram[i, j] * s) for j in range(4)] for i in range(4)], s

    def elements_of_norm(self, target: Fraction, budget: Optional[int] = None) -> List[Quaternion]:
        """All lattice elements with reduced norm exactly ``target``."""
        gram, s = self.integer_gram()
        bound = 2 * s * Fraction(target)
        if bound.denominator != 1 or bound < 0:
            return []
        bound = int(bound)
        out = []
        for vec, nrm in short_vectors(gram, bound, budget):
            if nrm == bound:
                out.append(self.algebra.combine(vec, list(self.basis)))
        return out

    def norm_counts(self, bound_norm: Fraction, budget: Optional[int] = None) -> dict:
        """Map reduced norm -> number of elements, for norms up to ``bound_norm``."""
        gram, s = self.integer_gram()
        bound = int(2 * s * Fraction(bound_norm))
        counts: dict = {}
        for _vec, nrm in short_vectors(gram, bound, budget):
            value = Fraction(nrm, 2 * s)
            counts[value] = counts.get(value, 0) + 1
        return counts
