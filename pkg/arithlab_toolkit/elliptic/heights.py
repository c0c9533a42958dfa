"""Naive and canonical heights with explicit error bounds, the height pairing and regulators.

The canonical height is the Tate limit h(x(2^n P)) / 4^n. For an integral model let F, G be
the duplication forms, x(2P) = F(u, v) / G(u, v) for x(P) = u/v. Then

    -log(C_low) <= h(2Q) - 4 h(Q) <= log(C_up)

where C_up bounds the coefficient sums of F and G, and C_low comes from the two Bezout
identities f F + g G = v^7, f' F + g' G = u^7 solved over Q. With c1 the larger of the two
logarithms, |h_hat(P) - h(x(2^n P)) / 4^n| <= c1 / (3 * 4^n).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, DomainError
from arithlab_toolkit.exactnum.linalg import RatMatrix
from arithlab_toolkit.exactnum.ntheory import lcm
from arithlab_toolkit.elliptic.curve import CurvePoint, WeierstrassCurve, add, neg
from arithlab_toolkit.elliptic.torsion import is_torsion_point

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 40


@dataclass(frozen=True)
class HeightValue:
    value: float
    err: float

    def __add__(self, other: "HeightValue") -> "HeightValue":
        return HeightValue(self.value + other.value, self.err + other.err)

    def __sub__(self, other: "HeightValue") -> "HeightValue":
        return HeightValue(self.value - other.value, self.err + other.err)

    def scale(self, c: float) -> "HeightValue":
        return HeightValue(c * self.value, abs(c) * self.err)

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return abs(self.value - x) <= self.err + slack

    def to_json(self) -> dict:
        return {"value": self.value, "err": self.err}


def naive_height_x(x: Fraction) -> float:
    """log max(|u|, |v|) for x = u/v in lowest terms."""
    x = Fraction(x)
    return math.log(max(abs(x.numerator), x.denominator))


def naive_height(P: CurvePoint) -> HeightValue:
    if P.is_infinity:
        return HeightValue(0.0, 0.0)
    return HeightValue(naive_height_x(P.x), 1e-15 * max(1.0, naive_height_x(P.x)))


def _bezout(F: Sequence[Fraction], G: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    """Cubic polynomials f, g with f F + g G = 1 (coefficients lowest degree first)."""
    rows = []
    for k in range(8):
        row = [F[k - i] if 0 <= k - i < len(F) else Fraction(0) for i in range(4)]
        row += [G[k - i] if 0 <= k - i < len(G) else Fraction(0) for i in range(4)]
        rows.append(row)
    rhs = [Fraction(1)] + [Fraction(0)] * 7
    sol = RatMatrix(rows).solve(rhs)
    return sol[:4], sol[4:]


@lru_cache(maxsize=64)
def height_constant(ainvs: Tuple[Fraction, ...]) -> Tuple[float, int]:
    """(c1, K): the doubling discrepancy bound and an integer the gcd of F(u,v), G(u,v) divides."""
    curve = WeierstrassCurve(*ainvs)
    F, G = curve.duplication_polys()
    c_up = max(sum(abs(c) for c in F), sum(abs(c) for c in G))
    f, g = _bezout(F, G)
    # the same identity in 1/x gives the u^7 side
    Fr, Gr = tuple(reversed(F)), (Fraction(0),) + tuple(reversed(G))
    fr, gr = _bezout(Fr, Gr)
    d1 = lcm(*(c.denominator for c in f + g))
    d2 = lcm(*(c.denominator for c in fr + gr))
    c_low = max(sum(abs(c) for c in f + g), sum(abs(c) for c in fr + gr))
    K = d1 * d2
    c1 = max(math.log(float(c_up)), math.log(float(c_low) * K), 0.0)
    return c1, K


def _double_uv(u: int, v: int, F: Sequence[int], G: Sequence[int], K: int) -> Tuple[int, int]:
    # homogeneous: F(u, v) = sum F_k u^k v^(4-k), G(u, v) = v * sum G_k u^k v^(3-k)
    pu, pv = [1, u, u * u], [1, v, v * v]
    pu += [pu[2] * u, pu[2] * pu[2]]
    pv += [pv[2] * v, pv[2] * pv[2]]
    num = sum(c * pu[k] * pv[4 - k] for k, c in enumerate(F) if c)
    den = v * sum(c * pu[k] * pv[3 - k] for k, c in enumerate(G) if c)
    g = math.gcd(math.gcd(num % K, den % K), K) if K > 1 else 1
    if g > 1:
        num, den = num // g, den // g
    if den < 0:
        num, den = -num, -den
    return num, den


def _log_height(u: int, v: int) -> float:
    return math.log(max(abs(u), abs(v)))


def canonical_height_at(P: CurvePoint, n: int, height_bits: Optional[int] = None) -> HeightValue:
    """h(x(2^n P)) / 4^n with its tail bound c1 / (3 * 4^n)."""
    if P.is_infinity:
        return HeightValue(0.0, 0.0)
    model, u_scale = P.curve.integral_model()
    x = P.x / u_scale ** 2
    c1, K = height_constant(model.ainvs)
    F, G = model.duplication_polys()
    Fi, Gi = [int(c) for c in F], [int(c) for c in G]
    limit = height_bits or get_config().height_bits
    u, v = x.numerator, x.denominator
    for step in range(n):
        u, v = _double_uv(u, v, Fi, Gi, K)
        if v == 0:
            # 2^(step+1) P = O
            return HeightValue(0.0, 0.0)
        if max(abs(u), abs(v)).bit_length() > limit:
            raise BudgetExceeded(f"x(2^{step + 1} P) exceeds {limit} bits; use a larger "
                                 f"tolerance", bound=limit, key=key_for("height_bits"))
    value = _log_height(u, v) / 4 ** n
    return HeightValue(value, c1 / (3 * 4 ** n) + 1e-15 * max(value, 1.0))


def doublings_for(curve: WeierstrassCurve, eps: float) -> int:
    if eps <= 0:
        raise DomainError(f"tolerance must be positive, got {eps}")
    model, _ = curve.integral_model()
    c1, _ = height_constant(model.ainvs)
    n = 0
    while c1 / (3 * 4 ** n) >= eps:
        n += 1
        if n > MAX_DOUBLINGS:
            raise DomainError(f"tolerance {eps} needs more than {MAX_DOUBLINGS} doublings")
    return n


def canonical_height(P: CurvePoint, eps: float = 1e-6,
                     height_bits: Optional[int] = None) -> HeightValue:
    """Tate's limit with n chosen so that c1 / (3 * 4^n) < eps; torsion points give 0."""
    if is_torsion_point(P):
        return HeightValue(0.0, 0.0)
    n = doublings_for(P.curve, eps)
    h = canonical_height_at(P, n, height_bits)
    logger.debug("h_hat(%s) = %.12f +- %.2e with n=%d", P, h.value, h.err, n)
    return h


def height_pairing(P: CurvePoint, Q: CurvePoint, eps: float = 1e-6) -> HeightValue:
    """<P, Q> = (h(P + Q) - h(P) - h(Q)) / 2."""
    s = canonical_height(add(P, Q), eps)
    return (s - canonical_height(P, eps) - canonical_height(Q, eps)).scale(0.5)


def parallelogram_defect(P: CurvePoint, Q: CurvePoint, eps: float = 1e-6) -> HeightValue:
    """h(P+Q) + h(P-Q) - 2 h(P) - 2 h(Q), which vanishes for the canonical height."""
    hp, hq = canonical_height(P, eps), canonical_height(Q, eps)
    return (canonical_height(add(P, Q), eps) + canonical_height(add(P, neg(Q)), eps)
            - hp.scale(2) - hq.scale(2))


def height_matrix(points: Sequence[CurvePoint], eps: float = 1e-6) -> List[List[HeightValue]]:
    n = len(points)
    diag = [canonical_height(P, eps) for P in points]
    out = [[HeightValue(0.0, 0.0)] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = diag[i]
        for j in range(i + 1, n):
            s = canonical_height(add(points[i], points[j]), eps)
            pair = (s - diag[i] - diag[j]).scale(0.5)
            out[i][j] = out[j][i] = pair
    return out


def regulator(points: Sequence[CurvePoint], eps: float = 1e-6) -> HeightValue:
    """det of the height pairing matrix with a first-order error bound (doubled)."""
    if not points:
        return HeightValue(1.0, 0.0)
    gram = height_matrix(points, eps)
    vals = np.array([[h.value for h in row] for row in gram])
    errs = np.array([[h.err for h in row] for row in gram])
    det = float(np.linalg.det(vals))
    n = len(points)
    if n == 1:
        return HeightValue(det, float(errs[0, 0]))
    cof = np.zeros_like(vals)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(vals, i, axis=0), j, axis=1)
            cof[i, j] = np.linalg.det(minor)
    err = 2.0 * float(np.sum(np.abs(cof) * errs)) + 1e-12 * abs(det)
    if abs(det) <= err:
        logger.warning("height pairing matrix is numerically singular (det %.3e +- %.3e)",
                       det, err)
    return HeightValue(det, err)
