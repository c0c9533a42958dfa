"""Algebraic numbers given by an integer minimal polynomial and a certified root cluster.

Roots come from mpmath's Durand-Kerner iteration and are certified afterwards: for a polynomial
of degree n the disc around z of radius n |f(z) / f'(z)| contains a root, so n pairwise
disjoint discs isolate the n roots. Precision is doubled until every radius is below
``ROOT_RADIUS_MAX``.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from mpmath import exp, mpc, mpf, nstr, pi, polyroots, polyval, workdps
from mpmath.libmp import NoConvergence

from arithlab_toolkit.errors import DomainError, PrecisionError
from arithlab_toolkit.exactnum import IntPoly, cyclotomic_poly, euler_phi, make_poly
from arithlab_toolkit.exactnum.poly import FACTOR_MAX_DEGREE

logger = logging.getLogger(__name__)

ROOT_RADIUS_MAX = mpf("1e-20")
START_DPS = 40
MAX_DPS = 640
WORK_DPS = 50


@dataclass(frozen=True)
class CertifiedReal:
    """A real number known to lie in [value - err, value + err]."""

    value: mpf
    err: mpf

    def __float__(self) -> float:
        return float(self.value)

    @property
    def lower(self) -> mpf:
        return self.value - self.err

    @property
    def upper(self) -> mpf:
        return self.value + self.err

    def contains(self, x, slack: float = 0.0) -> bool:
        return abs(self.value - x) <= self.err + slack

    def to_json(self) -> dict:
        return {"value": nstr(self.value, 20), "err": float(self.err)}


@dataclass(frozen=True)
class RootCluster:
    poly: IntPoly
    roots: Tuple[mpc, ...]
    radius: mpf
    dps: int

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "roots": [{"re": nstr(r.real, 25), "im": nstr(r.imag, 25)} for r in self.roots],
            "radius": float(self.radius),
        }


def as_int_poly(f) -> IntPoly:
    """Accept an ``IntPoly``, an integer coefficient list (lowest degree first) or a string."""
    if isinstance(f, IntPoly):
        return f
    if isinstance(f, str):
        f = [int(c) for c in f.replace(" ", "").split(",") if c]
    poly = make_poly(f)
    if not isinstance(poly, IntPoly):
        raise DomainError(f"polynomial {poly} does not have integer coefficients")
    return poly


def _root_key(z: mpc) -> Tuple[float, float]:
    return (round(float(z.real), 12), float(z.imag))


def _disjoint(roots: Sequence[mpc], radii: Sequence[mpf]) -> bool:
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) <= radii[i] + radii[j]:
                return False
    return True


@lru_cache(maxsize=512)
def certified_roots(f: IntPoly) -> RootCluster:
    """All complex roots of a squarefree integer polynomial, sorted by (real, imag)."""
    n = f.degree
    if n < 1:
        raise DomainError(f"{f} has no roots")
    # above the factoring limit a repeated root shows up as overlapping discs instead
    if n <= FACTOR_MAX_DEGREE and f.gcd(f.derivative()).degree > 0:
        raise DomainError(f"{f} has repeated roots; pass its squarefree part")
    dps = START_DPS
    while dps <= MAX_DPS:
        with workdps(dps):
            coeffs = [mpf(c) for c in reversed(f.coeffs)]
            dcoeffs = [mpf(c) for c in reversed(f.derivative().coeffs)]
            try:
                roots = [mpc(r) for r in polyroots(coeffs, maxsteps=100 + 20 * n,
                                                   extraprec=2 * dps)]
            except NoConvergence:
                logger.debug("no convergence for %s at %d digits", f, dps)
                dps *= 2
                continue
            floor = mpf(10) ** (10 - dps)
            radii = [max(n * abs(polyval(coeffs, r) / polyval(dcoeffs, r)), floor)
                     for r in roots]
            radius = max(radii)
            if radius <= ROOT_RADIUS_MAX and _disjoint(roots, radii):
                roots.sort(key=_root_key)
                return RootCluster(f, tuple(roots), radius, dps)
        logger.debug("roots of %s not isolated at %d digits, retrying", f, dps)
        dps *= 2
    raise PrecisionError(f"could not isolate the roots of {f} at {MAX_DPS} digits "
                         f"(repeated roots?)", required=dps)


def _cyclotomic_cluster(n: int) -> RootCluster:
    """Roots of Phi_n written down directly as exp(2 pi i a / n), gcd(a, n) = 1."""
    with workdps(WORK_DPS + 10):
        roots = [exp(2 * pi * mpc(0, 1) * a / n) for a in range(n) if math.gcd(a, n) == 1]
        roots.sort(key=_root_key)
    return RootCluster(cyclotomic_poly(n), tuple(roots), mpf(10) ** (-WORK_DPS), WORK_DPS)


class AlgebraicNumber:
    """alpha as the ``root_index``-th root, in (real, imag) order, of its minimal polynomial."""

    def __init__(self, poly, root_index: int = 0, verify: bool = True,
                 _cluster: Optional[RootCluster] = None):
        g = as_int_poly(poly).primitive_part()
        if g.degree < 1:
            raise DomainError(f"minimal polynomial must have degree >= 1, got {g}")
        if verify and not g.is_irreducible():
            raise DomainError(f"{g} is not irreducible over Q")
        self.minpoly: IntPoly = g
        self.cluster = _cluster or certified_roots(g)
        if not 0 <= root_index < g.degree:
            raise DomainError(f"root index {root_index} out of range for degree {g.degree}")
        self.root_index = root_index
        self.cyclotomic_index: Optional[int] = None

    @classmethod
    def from_poly(cls, coeffs, root_index: int = 0) -> "AlgebraicNumber":
        return cls(coeffs, root_index)

    @classmethod
    def from_rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(IntPoly([-q.numerator, q.denominator]), 0, verify=False)

    @classmethod
    def root_of_unity(cls, n: int, a: int = 1) -> "AlgebraicNumber":
        """zeta_n^a for gcd(a, n) = 1; Phi_n is irreducible so no factor search is needed."""
        if n < 1 or math.gcd(a, n) != 1:
            raise DomainError(f"zeta_{n}^{a} is not a primitive {n}-th root of unity")
        cluster = _cyclotomic_cluster(n)
        with workdps(WORK_DPS):
            target = exp(2 * pi * mpc(0, 1) * (a % n) / n)
            index = min(range(len(cluster.roots)), key=lambda i: abs(cluster.roots[i] - target))
        alpha = cls(cluster.poly, index, verify=False, _cluster=cluster)
        alpha.cyclotomic_index = n
        return alpha

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def lead(self) -> int:
        return self.minpoly.lead

    @property
    def value(self) -> mpc:
        return self.cluster.roots[self.root_index]

    @property
    def conjugates(self) -> Tuple[mpc, ...]:
        return self.cluster.roots

    def is_zero(self) -> bool:
        return self.minpoly.degree == 1 and self.minpoly.coeffs[0] == 0

    def index_of(self, z) -> int:
        """Index of the conjugate closest to ``z``."""
        with workdps(WORK_DPS):
            return min(range(self.degree), key=lambda i: abs(self.conjugates[i] - z))

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise DomainError("0 has no inverse")
        inv = AlgebraicNumber(self.minpoly.reverse(), 0, verify=False)
        with workdps(WORK_DPS):
            inv.root_index = inv.index_of(1 / self.value)
        return inv

    def __repr__(self) -> str:
        with workdps(15):
            return f"AlgebraicNumber({self.minpoly}, root={nstr(self.value, 12)})"

    def to_json(self) -> dict:
        return {
            "minpoly": self.minpoly.to_json(),
            "root_index": self.root_index,
            "value": {"re": nstr(self.value.real, 20), "im": nstr(self.value.imag, 20)},
            "radius": float(self.cluster.radius),
        }


def roots_of_unity_sequence(n_max: int, start: int = 1) -> List[AlgebraicNumber]:
    """zeta_n for n = start .. n_max, each carrying its full Galois orbit."""
    if start < 1 or n_max < start:
        raise DomainError(f"need 1 <= start <= n_max, got {start}, {n_max}")
    return [AlgebraicNumber.root_of_unity(n) for n in range(start, n_max + 1)]


def lehmer_polynomial() -> IntPoly:
    """x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1."""
    return IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


def cyclotomic_indices_of_degree(d: int) -> List[int]:
    """All n with phi(n) = d; phi(n) >= sqrt(n / 2) bounds the search."""
    return [n for n in range(1, 2 * d * d + 3) if euler_phi(n) == d]
