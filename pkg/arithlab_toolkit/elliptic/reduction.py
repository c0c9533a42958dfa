"""Reduction modulo p: point counts, reduction types, a_n coefficients and the conductor."""

import concurrent.futures
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import factorize, is_prime, primes_up_to, sigma_k
from arithlab_toolkit.elliptic.curve import WeierstrassCurve, vp

logger = logging.getLogger(__name__)

GOOD = "good"
SPLIT = "multiplicative-split"
NONSPLIT = "multiplicative-nonsplit"
ADDITIVE = "additive"

ModPoint = Optional[Tuple[int, int]]


@dataclass
class ReductionData:
    p: int
    kind: str
    ap: int
    count: Optional[int] = None

    @property
    def is_good(self) -> bool:
        return self.kind == GOOD

    def to_json(self) -> dict:
        return {"p": self.p, "type": self.kind, "a_p": self.ap, "count": self.count}


def _int_coeffs(curve: WeierstrassCurve) -> Tuple[int, ...]:
    if not curve.is_integral():
        raise DomainError(f"reduction needs an integral model, got {curve}")
    return tuple(int(a) for a in curve.ainvs)


def reduction_model(curve: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """Model used at p: the caller's integral model at 2 and 3, a p-minimal one above."""
    if p < 5:
        return curve.integral_model()[0]
    model, _ = curve.integral_model()
    if model.is_minimal_at(p):
        return model
    return curve.minimal_model_away_23()


def count_points(curve: WeierstrassCurve, p: int) -> int:
    """#E(F_p) including infinity for an integral model with good reduction at p."""
    a1, a2, a3, a4, a6 = _int_coeffs(curve)
    if p == 2:
        return 1 + sum(1 for x in range(2) for y in range(2)
                       if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2
                       == 0)
    b2, b4, b6 = (int(b) % p for b in (curve.b2, curve.b4, curve.b6))
    xs = np.arange(p, dtype=np.int64)
    # Horner in int64 keeps every intermediate below p^2 < 2^34
    f = (4 * xs + b2) % p
    f = (f * xs + 2 * b4) % p
    f = (f * xs + b6) % p
    is_square = np.zeros(p, dtype=bool)
    is_square[(xs * xs) % p] = True
    total = np.where(f == 0, 1, np.where(is_square[f], 2, 0)).sum()
    return int(total) + 1


def singular_point_mod_p(curve: WeierstrassCurve, p: int) -> Tuple[int, int]:
    """The singular point of the reduction of an integral model with p | Delta."""
    a1, a2, a3, a4, a6 = _int_coeffs(curve)
    if p == 2:
        for x in range(2):
            for y in range(2):
                eq = y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6
                dx = a1 * y - 3 * x * x - 2 * a2 * x - a4
                dy = 2 * y + a1 * x + a3
                if eq % 2 == 0 and dx % 2 == 0 and dy % 2 == 0:
                    return x, y
        raise DomainError(f"reduction mod 2 of {curve} is nonsingular")
    b2, b4, b6 = (int(b) for b in (curve.b2, curve.b4, curve.b6))
    inv2 = pow(2, -1, p)
    for x in range(p):
        f = (4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6) % p
        df = (12 * x * x + 2 * b2 * x + 2 * b4) % p
        if f == 0 and df == 0:
            return x, (-(a1 * x + a3) * inv2) % p
    raise DomainError(f"reduction mod {p} of {curve} is nonsingular")


def _bad_type(curve: WeierstrassCurve, p: int) -> str:
    """Node or cusp from the tangent cone T^2 + a1 T - a2' at the translated singular point."""
    x0, y0 = singular_point_mod_p(curve, p)
    moved = curve.change(1, x0, 0, y0)
    a1, a2 = int(moved.a1) % p, int(moved.a2) % p
    if p == 2:
        if a1 == 0:
            return ADDITIVE
        roots = [t for t in range(2) if (t * t + a1 * t - a2) % 2 == 0]
        return SPLIT if roots else NONSPLIT
    disc = (a1 * a1 + 4 * a2) % p
    if disc == 0:
        return ADDITIVE
    return SPLIT if pow(disc, (p - 1) // 2, p) == 1 else NONSPLIT


def reduce_and_count(curve: WeierstrassCurve, p: int,
                     point_count_max: Optional[int] = None) -> ReductionData:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    limit = point_count_max or get_config().point_count_max
    if p > limit:
        raise BudgetExceeded(f"point count at p={p} above {limit}", bound=limit,
                             key=key_for("point_count_max"))
    model = reduction_model(curve, p)
    if vp(p, model.discriminant) == 0:
        n = count_points(model, p)
        ap = p + 1 - n
        if ap * ap > 4 * p:
            raise ConsistencyError(f"Hasse bound fails at p={p}: a_p={ap}")
        return ReductionData(p, GOOD, ap, n)
    kind = _bad_type(model, p)
    ap = {SPLIT: 1, NONSPLIT: -1, ADDITIVE: 0}[kind]
    return ReductionData(p, kind, ap)


def reduction_table(curve: WeierstrassCurve, primes: Sequence[int],
                    num_threads: Optional[int] = None) -> Dict[int, ReductionData]:
    """reduce_and_count for many primes, in parallel, keyed by p."""
    num_threads = num_threads or get_config().num_threads
    results: Dict[int, ReductionData] = {}
    if num_threads > 1 and len(primes) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=num_threads) as executor:
            future_dict = {executor.submit(reduce_and_count, curve, p): p for p in primes}
            for future in concurrent.futures.as_completed(future_dict):
                results[future_dict[future]] = future.result()
    else:
        results = {p: reduce_and_count(curve, p) for p in primes}
    return {p: results[p] for p in sorted(results)}


def an_coefficients(curve: WeierstrassCurve, N: int,
                    num_threads: Optional[int] = None) -> List[int]:
    """a_1 .. a_N of the L-series, built from a_p by the Euler factors."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    table = reduction_table(curve, primes_up_to(N), num_threads)
    a = [0] * (N + 1)
    a[1] = 1
    for n in range(2, N + 1):
        fac = factorize(n)
        if len(fac) > 1:
            p, e = next(iter(fac.items()))
            q = p ** e
            a[n] = a[q] * a[n // q]
            continue
        (p, e), = fac.items()
        red = table[p]
        if e == 1:
            a[n] = red.ap
        elif red.is_good:
            a[n] = red.ap * a[n // p] - p * a[n // (p * p)]
        else:
            a[n] = red.ap ** e
    for n in range(1, N + 1):
        if a[n] * a[n] > sigma_k(n, 0) ** 2 * n:
            raise ConsistencyError(f"|a_{n}| = {abs(a[n])} exceeds sigma_0(n) sqrt(n)")
    return a[1:]


# Group law on the reduction, for listing points and group structure.

def points_mod_p(curve: WeierstrassCurve, p: int) -> List[ModPoint]:
    """Points of the reduction (None is infinity); requires good reduction at p."""
    model = reduction_model(curve, p)
    if vp(p, model.discriminant) > 0:
        raise DomainError(f"{p} is a bad prime")
    a1, a2, a3, a4, a6 = _int_coeffs(model)
    pts: List[ModPoint] = [None]
    for x in range(p):
        rhs = x ** 3 + a2 * x * x + a4 * x + a6
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                pts.append((x, y))
    return pts


def _add_mod_p(P: ModPoint, Q: ModPoint, ainvs: Sequence[int], p: int) -> ModPoint:
    a1, a2, a3, a4, a6 = ainvs
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % p == 0:
        return None
    if x1 == x2:
        den = (2 * y1 + a1 * x1 + a3) % p
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * pow(den, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - (y1 - lam * x1) - a3) % p
    return x3, y3


def _order_mod_p(P: ModPoint, ainvs, p: int, bound: int) -> int:
    Q, n = P, 1
    while Q is not None:
        Q = _add_mod_p(Q, P, ainvs, p)
        n += 1
        if n > bound:
            raise ConsistencyError("point order exceeds group size")
    return n


@dataclass
class GroupStructure:
    order: int
    invariants: List[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"order": self.order, "invariants": self.invariants}


def group_structure_mod_p(curve: WeierstrassCurve, p: int) -> GroupStructure:
    """E(F_p) = Z/n1 x Z/n2 with n1 | n2, from the exponent (largest point order)."""
    if p > 5000:
        raise BudgetExceeded(f"group structure by enumeration limited to p <= 5000, got {p}",
                             bound=5000)
    model = reduction_model(curve, p)
    ainvs = _int_coeffs(model)
    pts = points_mod_p(model, p)
    n = len(pts)
    exponent = 1
    for P in pts:
        o = _order_mod_p(P, ainvs, p, n)
        exponent = exponent * o // math.gcd(exponent, o)
    n1 = n // exponent
    invariants = [exponent] if n1 == 1 else [n1, exponent]
    return GroupStructure(n, invariants if n > 1 else [])


@dataclass
class ConductorReport:
    odd_part: int
    exponents: Dict[int, Tuple[int, int]]

    @property
    def exact(self) -> Optional[int]:
        if all(lo == hi for lo, hi in self.exponents.values()):
            return self.odd_part * math.prod(p ** lo for p, (lo, _) in self.exponents.items())
        return None

    def to_json(self) -> dict:
        return {"away_from_6": self.odd_part, "exact": self.exact,
                "exponents": {str(p): list(e) for p, e in self.exponents.items()}}


def conductor_away_23(curve: WeierstrassCurve) -> ConductorReport:
    """Exact conductor away from 2 and 3; exponent intervals at 2 and 3 for additive reduction."""
    odd = 1
    exps: Dict[int, Tuple[int, int]] = {}
    for p in sorted(set(curve.integral_model()[0].bad_primes()) | {2, 3}):
        model = reduction_model(curve, p)
        if vp(p, model.discriminant) == 0:
            if p < 5:
                exps[p] = (0, 0)
            continue
        multiplicative = vp(p, model.c4) == 0
        if p >= 5:
            odd *= p if multiplicative else p * p
        elif multiplicative:
            exps[p] = (1, 1)
        else:
            exps[p] = (2, 8) if p == 2 else (2, 5)
    return ConductorReport(odd, exps)
