"""Weierstrass models over Q, admissible changes of variables and the chord-tangent law."""

import logging
import math
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional, Tuple

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import lcm, prime_factors, valuation

logger = logging.getLogger(__name__)


def vp(p: int, x) -> float:
    """p-adic valuation with v(0) = infinity."""
    return math.inf if x == 0 else valuation(p, x)


class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with rational coefficients and Delta != 0."""

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.a1, self.a2, self.a3, self.a4, self.a6 = (Fraction(a) for a in (a1, a2, a3, a4, a6))
        if self.discriminant == 0:
            raise DomainError(f"singular Weierstrass equation {self.ainvs}")
        if 4 * self.b8 != self.b2 * self.b6 - self.b4 ** 2:
            raise ConsistencyError("4 b8 != b2 b6 - b4^2")
        if 1728 * self.discriminant != self.c4 ** 3 - self.c6 ** 2:
            raise ConsistencyError("1728 Delta != c4^3 - c6^2")

    @classmethod
    def short(cls, A, B) -> "WeierstrassCurve":
        return cls(0, 0, 0, A, B)

    @property
    def ainvs(self) -> Tuple[Fraction, ...]:
        return self.a1, self.a2, self.a3, self.a4, self.a6

    def __eq__(self, other) -> bool:
        return isinstance(other, WeierstrassCurve) and self.ainvs == other.ainvs

    def __hash__(self) -> int:
        return hash(self.ainvs)

    def __repr__(self) -> str:
        return "WeierstrassCurve[" + ", ".join(str(a) for a in self.ainvs) + "]"

    # invariants
    @cached_property
    def b2(self) -> Fraction:
        return self.a1 ** 2 + 4 * self.a2

    @cached_property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> Fraction:
        return self.a3 ** 2 + 4 * self.a6

    @cached_property
    def b8(self) -> Fraction:
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2

    @cached_property
    def c4(self) -> Fraction:
        return self.b2 ** 2 - 24 * self.b4

    @cached_property
    def c6(self) -> Fraction:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        return self.c4 ** 3 / self.discriminant

    def invariants(self) -> dict:
        return {"b2": self.b2, "b4": self.b4, "b6": self.b6, "b8": self.b8,
                "c4": self.c4, "c6": self.c6, "discriminant": self.discriminant,
                "j": self.j_invariant}

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    def bad_primes(self):
        d = self.discriminant
        primes = set()
        for part in (abs(d.numerator), d.denominator):
            if part > 1:
                primes.update(prime_factors(part))
        return sorted(primes)

    # models
    def change(self, u, r=0, s=0, t=0) -> "WeierstrassCurve":
        """Model for x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        u, r, s, t = (Fraction(v) for v in (u, r, s, t))
        if u == 0:
            raise DomainError("u must be nonzero")
        a1, a2, a3, a4, a6 = self.ainvs
        return WeierstrassCurve(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u ** 2,
            (a3 + r * a1 + 2 * t) / u ** 3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4,
            (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6,
        )

    def change_point(self, P: "CurvePoint", target: "WeierstrassCurve", u, r=0, s=0,
                     t=0) -> "CurvePoint":
        if P.is_infinity:
            return target.infinity
        u, r, s, t = (Fraction(v) for v in (u, r, s, t))
        x = (P.x - r) / u ** 2
        y = (P.y - s * (P.x - r) - t) / u ** 3
        return target.point(x, y)

    def short_model(self) -> Tuple["WeierstrassCurve", Callable, Callable]:
        """y^2 = x^3 - 27 c4 x - 54 c6 with the maps to and from it."""
        short = WeierstrassCurve.short(-27 * self.c4, -54 * self.c6)
        b2, a1, a3 = self.b2, self.a1, self.a3

        def forward(P: "CurvePoint") -> "CurvePoint":
            if P.is_infinity:
                return short.infinity
            return short.point(36 * P.x + 3 * b2, 108 * (2 * P.y + a1 * P.x + a3))

        def backward(P: "CurvePoint") -> "CurvePoint":
            if P.is_infinity:
                return self.infinity
            x = (P.x - 3 * b2) / 36
            return self.point(x, (P.y / 108 - a1 * x - a3) / 2)

        return short, forward, backward

    def integral_model(self) -> Tuple["WeierstrassCurve", Fraction]:
        """(model with integer coefficients, u) obtained by the scaling x = u^2 x'."""
        if self.is_integral():
            return self, Fraction(1)
        d = lcm(*(a.denominator for a in self.ainvs))
        u = Fraction(1, d)
        return self.change(u), u

    def minimal_model_away_23(self) -> "WeierstrassCurve":
        """Short integral model, minimal at every prime p >= 5."""
        curve, _ = self.integral_model()
        A, B = -27 * curve.c4, -54 * curve.c6
        for p in curve.bad_primes():
            if p < 5:
                continue
            while True:
                if vp(p, A) >= 4 and vp(p, B) >= 6:
                    A, B = A / p ** 4, B / p ** 6
                else:
                    break
        return WeierstrassCurve.short(A, B)

    def is_minimal_at(self, p: int) -> bool:
        """v_p(Delta) < 12 or v_p(c4) < 4 certifies p-minimality of an integral model."""
        if not self.is_integral():
            return False
        return vp(p, self.discriminant) < 12 or vp(p, self.c4) < 4

    # points
    @property
    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def point(self, x, y) -> "CurvePoint":
        return CurvePoint(self, Fraction(x), Fraction(y))

    def contains(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.ainvs
        x, y = Fraction(x), Fraction(y)
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    def duplication_polys(self) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        """(F, G) with x(2P) = F(x)/G(x), coefficients lowest degree first."""
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        F = (-b8, -2 * b6, -b4, Fraction(0), Fraction(1))
        G = (b6, 2 * b4, b2, Fraction(4))
        return F, G


class CurvePoint:
    """A rational point, or the point at infinity when x is None."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x: Optional[Fraction], y: Optional[Fraction]):
        self.curve = curve
        self.x, self.y = x, y
        if x is not None and not curve.contains(x, y):
            raise DomainError(f"({x}, {y}) is not on {curve}")

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other) -> bool:
        return isinstance(other, CurvePoint) and self.curve == other.curve \
            and (self.x, self.y) == (other.x, other.y)

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __repr__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"

    def to_json(self):
        return None if self.is_infinity else [str(self.x), str(self.y)]

    def __neg__(self) -> "CurvePoint":
        return neg(self)

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        return add(self, other)

    def __sub__(self, other: "CurvePoint") -> "CurvePoint":
        return add(self, neg(other))

    def __rmul__(self, n: int) -> "CurvePoint":
        return mul(n, self)

    def is_integral(self) -> bool:
        return self.is_infinity or (self.x.denominator == 1 and self.y.denominator == 1)


def neg(P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    c = P.curve
    return CurvePoint(c, P.x, -P.y - c.a1 * P.x - c.a3)


def add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.curve != Q.curve:
        raise DomainError("points lie on different curves")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    c = P.curve
    a1, a2, a3, a4, a6 = c.ainvs
    if P.x == Q.x:
        if P.y + Q.y + a1 * Q.x + a3 == 0:
            return c.infinity
        den = 2 * P.y + a1 * P.x + a3
        lam = (3 * P.x ** 2 + 2 * a2 * P.x + a4 - a1 * P.y) / den
        nu = (-P.x ** 3 + a4 * P.x + 2 * a6 - a3 * P.y) / den
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
        nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x)
    x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(c, x3, y3)


def mul(n: int, P: CurvePoint) -> CurvePoint:
    """[n]P by double-and-add."""
    if n < 0:
        return mul(-n, neg(P))
    result, base = P.curve.infinity, P
    while n:
        if n & 1:
            result = add(result, base)
        base = add(base, base)
        n >>= 1
    return result


def double_x(curve: WeierstrassCurve, x: Fraction) -> Optional[Fraction]:
    """x(2P) from x(P) by the duplication formula, or ``None`` when 2P = O."""
    F, G = curve.duplication_polys()
    den = sum(c * x ** k for k, c in enumerate(G))
    if den == 0:
        return None
    return sum(c * x ** k for k, c in enumerate(F)) / den
