"""Rational torsion by Lutz-Nagell on the short model, bounded by reductions at good primes."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from mpmath import mpc, mpf, nint, polyroots, workdps

from arithlab_toolkit.errors import ConsistencyError
from arithlab_toolkit.exactnum.ntheory import factorize, primes_up_to
from arithlab_toolkit.elliptic.curve import CurvePoint, WeierstrassCurve, add
from arithlab_toolkit.elliptic.reduction import reduce_and_count

logger = logging.getLogger(__name__)

MAZUR_CYCLIC = set(range(1, 11)) | {12}
MAZUR_PRODUCT = {2, 4, 6, 8}


@dataclass
class TorsionGroup:
    order: int
    invariants: List[int]
    points: List[CurvePoint] = field(default_factory=list)
    reduction_bound: int = 0

    def to_json(self) -> dict:
        return {"order": self.order, "invariants": self.invariants,
                "points": [P.to_json() for P in self.points],
                "reduction_bound": self.reduction_bound}


def on_mazur_list(invariants: List[int]) -> bool:
    if len(invariants) <= 1:
        return (invariants[0] if invariants else 1) in MAZUR_CYCLIC
    n1, n2 = invariants
    return n1 == 2 and n2 in MAZUR_PRODUCT


def _integer_roots(coeffs: List[int]) -> List[int]:
    """Integer roots of a monic cubic x^3 + c1 x + c0 (coefficients highest degree first)."""
    with workdps(60):
        roots = [mpc(r) for r in polyroots([mpf(c) for c in coeffs], maxsteps=200,
                                            extraprec=200)]
        candidates = {int(nint(r.real)) for r in roots if abs(r.imag) < mpf("1e-20")}
    out = []
    for x in sorted(candidates):
        if sum(c * x ** (len(coeffs) - 1 - k) for k, c in enumerate(coeffs)) == 0:
            out.append(x)
    return out


def _order_if_torsion(P: CurvePoint, max_order: int = 12) -> int:
    """Order of P when it is at most ``max_order``; 0 once a multiple leaves the integers."""
    Q, n = P, 1
    while not Q.is_infinity:
        if not Q.is_integral() or n >= max_order:
            return 0
        Q = add(Q, P)
        n += 1
    return n


def _square_divisor_roots(D: int, primes: List[int]) -> List[int]:
    """All y >= 1 with y^2 | D, given the primes dividing D."""
    ys = [1]
    for p in primes:
        e = 0
        m = abs(D)
        while m % p == 0:
            m //= p
            e += 1
        ys = [y * p ** k for y in ys for k in range(e // 2 + 1)]
    return sorted(ys)


def reduction_torsion_bound(curve: WeierstrassCurve, count: int = 2) -> int:
    """gcd of #E(F_p) over the first ``count`` good primes p >= 3."""
    bound, found = 0, 0
    for p in primes_up_to(1000):
        if p < 3:
            continue
        red = reduce_and_count(curve, p)
        if red.is_good:
            bound = math.gcd(bound, red.count)
            found += 1
            if found == count:
                break
    return bound


def torsion(curve: WeierstrassCurve) -> TorsionGroup:
    """E(Q)_tors: integral points of y^2 = x^3 + Ax + B with y = 0 or y^2 | 4A^3 + 27B^2."""
    model, _ = curve.integral_model()
    short, _, backward = model.short_model()
    A, B = int(short.a4), int(short.a6)
    D = 4 * A ** 3 + 27 * B ** 2
    primes = sorted(set(model.bad_primes()) | {2, 3})
    leftover = abs(D)
    for p in primes:
        while leftover % p == 0:
            leftover //= p
    if leftover != 1:
        primes = sorted(set(primes) | set(factorize(leftover)))
    points = [short.infinity]
    orders = [1]
    for y in [0] + _square_divisor_roots(D, primes):
        for x in _integer_roots([1, 0, A, B - y * y]):
            for yy in {y, -y}:
                P = short.point(x, yy)
                n = _order_if_torsion(P)
                if n:
                    points.append(P)
                    orders.append(n)
    order = len(points)
    exponent = math.lcm(*orders)
    invariants = [] if order == 1 else ([exponent] if exponent == order
                                        else [order // exponent, exponent])
    if not on_mazur_list(invariants):
        raise ConsistencyError(f"torsion {invariants} is not on Mazur's list")
    bound = reduction_torsion_bound(curve)
    if bound % order:
        raise ConsistencyError(f"torsion order {order} does not divide reduction bound {bound}")
    pts = [backward(P) for P in points]
    pts.sort(key=lambda P: (not P.is_infinity, P.x or Fraction(0), P.y or Fraction(0)))
    logger.info("torsion of %s: %s", curve, invariants or "trivial")
    return TorsionGroup(order, invariants, pts, bound)


def is_torsion_point(P: CurvePoint) -> bool:
    Q = P
    for _ in range(12):
        if Q.is_infinity:
            return True
        Q = add(Q, P)
    return Q.is_infinity

