"""Dense univariate polynomials with exact integer or rational coefficients.

Coefficients are stored lowest degree first. ``IntPoly`` is returned whenever every
coefficient is integral, so arithmetic on integer polynomials stays in ``IntPoly``.
"""

import itertools
import logging
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Sequence, Tuple

from mpmath import mp, mpc, mpf, nint, polyroots, workdps

from arithlab_toolkit.errors import BudgetExceeded, DomainError
from arithlab_toolkit.exactnum.ntheory import divisors

logger = logging.getLogger(__name__)

MAX_DEGREE = 100_000
FACTOR_MAX_DEGREE = 24


def _trim(coeffs: List) -> List:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def make_poly(coeffs: Iterable) -> "RatPoly":
    """Build an ``IntPoly`` when all coefficients are integral, else a ``RatPoly``."""
    cs = [Fraction(c) for c in coeffs]
    if all(c.denominator == 1 for c in cs):
        return IntPoly(int(c) for c in cs)
    return RatPoly(cs)


class RatPoly:
    """Polynomial over Q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = _trim([self._coerce(c) for c in coeffs])
        if len(cs) - 1 > MAX_DEGREE:
            raise BudgetExceeded(f"polynomial degree {len(cs) - 1} exceeds {MAX_DEGREE}",
                                 bound=MAX_DEGREE)
        self.coeffs = tuple(cs)

    @staticmethod
    def _coerce(c):
        return Fraction(c)

    @classmethod
    def x(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, n: int, c=1) -> "RatPoly":
        return cls([0] * n + [c])

    # basic accessors
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    # arithmetic
    def __add__(self, other) -> "RatPoly":
        other = _as_poly(other)
        n = max(len(self), len(other))
        return make_poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return make_poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RatPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "RatPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            return make_poly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return make_poly([])
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return make_poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        result, base = make_poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "RatPoly") -> Tuple["RatPoly", "RatPoly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        quo = [Fraction(0)] * max(len(rem) - len(other) + 1, 0)
        lead = Fraction(other.lead)
        for k in range(len(rem) - len(other), -1, -1):
            q = rem[k + other.degree] / lead
            quo[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return make_poly(quo), make_poly(rem[:other.degree] if other.degree > 0 else [])

    def __floordiv__(self, other) -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RatPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        return self.coeffs == _as_poly(other).coeffs

    def __hash__(self) -> int:
        return hash(tuple(Fraction(c) for c in self.coeffs))

    # calculus and transforms
    def derivative(self) -> "RatPoly":
        return make_poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def reverse(self) -> "RatPoly":
        """Reciprocal polynomial x^deg f(1/x)."""
        return make_poly(reversed(self.coeffs))

    def compose(self, inner: "RatPoly") -> "RatPoly":
        result = make_poly([])
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "RatPoly":
        return make_poly(Fraction(c) / Fraction(self.lead) for c in self.coeffs)

    def gcd(self, other: "RatPoly") -> "RatPoly":
        """Monic gcd over Q."""
        a, b = self, _as_poly(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def to_json(self) -> List[str]:
        return [_coeff_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "RatPoly":
        return make_poly(Fraction(s) for s in data)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            body = "" if mag == 1 and i > 0 else str(mag)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append((sign, body + mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        return out + "".join(f" {s} {t}" for s, t in terms[1:])


class IntPoly(RatPoly):
    """Polynomial over Z."""

    @staticmethod
    def _coerce(c):
        c = Fraction(c)
        if c.denominator != 1:
            raise DomainError(f"IntPoly coefficient {c} is not an integer")
        return int(c)

    def content(self) -> int:
        if self.is_zero():
            return 0
        g = reduce(math.gcd, self.coeffs)
        return -g if self.lead < 0 else g

    def primitive_part(self) -> "IntPoly":
        c = self.content()
        return IntPoly(a // c for a in self.coeffs) if c else self

    def is_primitive(self) -> bool:
        return self.content() in (1, -1)

    def squarefree_part(self) -> "IntPoly":
        g = self.gcd(self.derivative())
        return _clear(self.exact_div(g)) if g.degree > 0 else self.primitive_part()

    def factor_over_z(self) -> List[Tuple["IntPoly", int]]:
        """Irreducible primitive factors with multiplicities (content dropped)."""
        if self.is_zero():
            raise DomainError("cannot factor the zero polynomial")
        if self.degree > FACTOR_MAX_DEGREE:
            raise BudgetExceeded(f"factorization limited to degree {FACTOR_MAX_DEGREE}",
                                 bound=FACTOR_MAX_DEGREE)
        factors: dict = {}
        for part, mult in _yun(self.primitive_part()):
            for irreducible in _split_squarefree(part):
                factors[irreducible] = factors.get(irreducible, 0) + mult
        return sorted(factors.items(), key=lambda fm: (fm[0].degree, fm[0].coeffs))

    def is_irreducible(self) -> bool:
        if self.degree < 1:
            return False
        fs = self.factor_over_z()
        return len(fs) == 1 and fs[0][1] == 1


def _as_poly(value) -> RatPoly:
    return value if isinstance(value, RatPoly) else make_poly([value])


def _coeff_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _clear(p: RatPoly) -> IntPoly:
    """Primitive integer multiple of a rational polynomial, positive leading coefficient."""
    den = reduce(lambda a, b: a * b // math.gcd(a, b),
                 (Fraction(c).denominator for c in p.coeffs), 1)
    q = IntPoly(int(Fraction(c) * den) for c in p.coeffs).primitive_part()
    return q


def _yun(f: IntPoly) -> List[Tuple[IntPoly, int]]:
    """Squarefree decomposition over Q, returned as primitive integer parts."""
    out = []
    if f.degree == 0:
        return out
    a = f.gcd(f.derivative())
    b = f.exact_div(a)
    d = f.derivative().exact_div(a) - b.derivative()
    i = 1
    while b.degree > 0:
        g = b.gcd(d)
        if g.degree > 0:
            out.append((_clear(g), i))
        b = b.exact_div(g)
        d = d.exact_div(g) - b.derivative()
        i += 1
    return out


def _root_groups(roots) -> List[List]:
    """Group roots into real singletons and complex-conjugate pairs."""
    groups, used = [], set()
    for i, r in enumerate(roots):
        if i in used:
            continue
        used.add(i)
        if abs(r.imag) < mpf(10) ** (-(mp.dps // 2)):
            groups.append([r])
            continue
        j = min((k for k in range(len(roots)) if k not in used),
                key=lambda k: abs(roots[k] - r.conjugate()))
        used.add(j)
        groups.append([r, roots[j]])
    return groups


def _candidate(lead: int, roots, bound: int) -> IntPoly | None:
    coeffs = [mpc(lead)]
    for r in roots:
        nxt = [mpc(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= c * r
        coeffs = nxt
    ints = []
    for c in coeffs:
        v = int(nint(c.real))
        if abs(c.real - v) > mpf("1e-8") or abs(c.imag) > mpf("1e-8") or abs(v) > bound:
            return None
        ints.append(v)
    return IntPoly(ints)


def _split_squarefree(f: IntPoly) -> List[IntPoly]:
    """Irreducible factors of a squarefree primitive polynomial via root-subset search."""
    if f.degree <= 1:
        return [f if f.lead > 0 else -f]
    with workdps(60):
        roots = [mpc(r) for r in polyroots([mpf(c) for c in reversed(f.coeffs)],
                                           maxsteps=400, extraprec=200)]
        groups = _root_groups(roots)
        # Mignotte: any factor's coefficients are bounded by 2^deg * ||f||_2.
        bound = 2 ** f.degree * math.isqrt(sum(c * c for c in f.coeffs) + 1) + 1
        remaining = f if f.lead > 0 else -f
        factors = []
        idx = list(range(len(groups)))
        size = 1
        while size <= len(idx) // 2 and remaining.degree > 1:
            found = False
            for subset in itertools.combinations(idx, size):
                rs = [r for k in subset for r in groups[k]]
                for d in divisors(abs(remaining.lead)):
                    cand = _candidate(d, rs, bound)
                    if cand is None or cand.degree < 1:
                        continue
                    q, r = divmod(remaining, cand)
                    if r.is_zero() and isinstance(q, IntPoly):
                        factors.append(cand.primitive_part())
                        remaining = q
                        idx = [k for k in idx if k not in subset]
                        found = True
                        break
                if found:
                    break
            if not found:
                size += 1
        factors.append(remaining.primitive_part())
    logger.debug("factored degree %d into %d parts", f.degree, len(factors))
    return [g if g.lead > 0 else -g for g in factors]


def squarefree_decomposition(f: IntPoly) -> Tuple[int, List[Tuple[IntPoly, int]]]:
    """(content, [(s_i, i)]) with f = content * prod s_i^i and each s_i squarefree, primitive."""
    if f.is_zero():
        raise DomainError("cannot decompose the zero polynomial")
    # the parts have positive leading coefficients and the content carries the sign
    return f.content(), _yun(f.primitive_part())


def cyclotomic_poly(n: int) -> IntPoly:
    """Phi_n by exact division of x^n - 1 by Phi_d for the proper divisors d of n."""
    if n < 1:
        raise DomainError(f"cyclotomic index must be >= 1, got {n}")
    num = IntPoly.monomial(n) - 1
    for d in divisors(n)[:-1]:
        num = num.exact_div(cyclotomic_poly(d))
    return num


def sylvester_matrix(f: RatPoly, g: RatPoly):
    """Sylvester matrix of size (m+n) with f's coefficients highest degree first."""
    from arithlab_toolkit.exactnum.linalg import RatMatrix

    n, m = f.degree, g.degree
    if n < 0 or m < 0:
        raise DomainError("Sylvester matrix needs nonzero polynomials")
    size = n + m
    rows = []
    fc, gc = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fc + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gc + [0] * (size - m - 1 - i))
    return RatMatrix(rows if rows else [[1]])
