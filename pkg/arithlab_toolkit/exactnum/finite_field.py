"""Finite fields F_q = F_p[t]/(f) with a deterministic defining polynomial."""

import itertools
import logging
import math
from typing import Iterator, List, Sequence, Tuple

from arithlab_toolkit.errors import BudgetExceeded, DomainError
from arithlab_toolkit.exactnum.ntheory import is_prime, prime_factors

logger = logging.getLogger(__name__)

MAX_ORDER = 1 << 30
DLOG_MAX_ORDER = 10 ** 8


# Polynomials over F_p as coefficient lists, lowest degree first.

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> List[int]:
    a = [c % p for c in a]
    inv = pow(f[-1], -1, p)
    df = len(f) - 1
    for k in range(len(a) - 1, df - 1, -1):
        c = a[k] * inv % p
        if c:
            for j in range(df + 1):
                a[k - df + j] = (a[k - df + j] - c * f[j]) % p
    return _trim(a[:df] if len(a) > df else a)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def _pgcd(a: List[int], b: List[int], p: int) -> List[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _xpow_mod(e: int, f: Sequence[int], p: int) -> List[int]:
    result, base = [1], _pmod([0, 1], f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's test: x^(p^d) = x mod f and gcd(x^(p^(d/q)) - x, f) = 1 for primes q | d."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if _psub(_xpow_mod(p ** d, f, p), [0, 1], p):
        return False
    for q in prime_factors(d):
        h = _psub(_xpow_mod(p ** (d // q), f, p), [0, 1], p)
        if len(_pgcd(list(f), h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, d: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree d (tuple lowest degree first)."""
    for low in itertools.product(range(p), repeat=d):
        f = list(low) + [1]
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {d} over F_{p}")


class FiniteField:
    """The field with p^d elements; the defining polynomial is verified irreducible."""

    def __init__(self, p: int, d: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if d < 1:
            raise DomainError(f"degree must be >= 1, got {d}")
        if p ** d > MAX_ORDER:
            raise BudgetExceeded(f"field order {p}^{d} exceeds {MAX_ORDER}", bound=MAX_ORDER)
        self.p, self.d, self.q = p, d, p ** d
        if modulus is None:
            modulus = smallest_irreducible(p, d) if d > 1 else (0, 1)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise DomainError(f"modulus must be monic of degree {d}")
        if d > 1 and not is_irreducible_mod_p(modulus, p):
            raise DomainError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus

    def __repr__(self) -> str:
        return f"FiniteField({self.p}^{self.d}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p,
                                                                            other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __call__(self, value) -> "FqElement":
        if isinstance(value, FqElement):
            return value
        if isinstance(value, int):
            return FqElement(self, (value % self.p,))
        return FqElement(self, tuple(value))

    @property
    def zero(self) -> "FqElement":
        return FqElement(self, ())

    @property
    def one(self) -> "FqElement":
        return FqElement(self, (1,))

    @property
    def t(self) -> "FqElement":
        """The class of the polynomial variable."""
        return FqElement(self, (0, 1)) if self.d > 1 else FqElement(self, (0,))

    def from_int(self, n: int) -> "FqElement":
        """Element with coefficient vector given by the base-p digits of n."""
        digits = []
        for _ in range(self.d):
            n, r = divmod(n, self.p)
            digits.append(r)
        return FqElement(self, tuple(digits))

    def elements(self) -> Iterator["FqElement"]:
        for n in range(self.q):
            yield self.from_int(n)

    def generator(self) -> "FqElement":
        """Smallest generator of the multiplicative group in integer encoding."""
        qs = prime_factors(self.q - 1) if self.q > 2 else []
        for n in range(1, self.q):
            g = self.from_int(n)
            if all(g ** ((self.q - 1) // r) != self.one for r in qs):
                return g
        raise AssertionError("multiplicative group is cyclic")

    def subfield_elements(self, e: int) -> List["FqElement"]:
        """Elements of the subfield with p^e elements (e must divide d)."""
        if self.d % e:
            raise DomainError(f"F_{self.p}^{e} is not a subfield of F_{self.p}^{self.d}")
        return [x for x in self.elements() if x.frobenius(e) == x]


class FqElement:
    """Immutable element of a ``FiniteField``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Sequence[int]):
        self.field = field
        self.coeffs = tuple(_pmod(list(coeffs), field.modulus, field.p)) if field.d > 1 \
            else tuple(_trim([c % field.p for c in coeffs]))

    def _check(self, other) -> "FqElement":
        if isinstance(other, int):
            return self.field.from_int(other % self.field.p)
        if other.field != self.field:
            raise DomainError("elements of different fields")
        return other

    def __add__(self, other) -> "FqElement":
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FqElement(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "FqElement":
        return FqElement(self.field, [-c for c in self.coeffs])

    def __sub__(self, other) -> "FqElement":
        return self + (-self._check(other))

    def __mul__(self, other) -> "FqElement":
        other = self._check(other)
        prod = _pmul(self.coeffs, other.coeffs, self.field.p)
        return FqElement(self.field, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FqElement":
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FqElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other) -> "FqElement":
        return self * self._check(other).inverse()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.from_int(other % self.field.p)
        return isinstance(other, FqElement) and self.field == other.field \
            and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def to_int(self) -> int:
        return sum(c * self.field.p ** i for i, c in enumerate(self.coeffs))

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise DomainError("zero has no multiplicative order")
        order = self.field.q - 1
        for r in prime_factors(order) if order > 1 else []:
            while order % r == 0 and self ** (order // r) == self.field.one:
                order //= r
        return order

    def frobenius(self, times: int = 1) -> "FqElement":
        return self ** (self.field.p ** times)

    def is_generator(self) -> bool:
        return not self.is_zero() and self.multiplicative_order() == self.field.q - 1

    def __repr__(self) -> str:
        if self.field.d == 1:
            return str(self.coeffs[0] if self.coeffs else 0)
        terms = [f"{c}" if i == 0 else (f"{c}*t^{i}" if c != 1 else f"t^{i}")
                 for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms).replace("t^1", "t") or "0"


def discrete_log(base: FqElement, target: FqElement) -> int:
    """Smallest k >= 0 with base^k = target, by baby-step giant-step."""
    field = base.field
    target = base._check(target)
    if target.is_zero():
        raise DomainError("discrete log of 0 is undefined")
    if not base.is_generator():
        raise DomainError(f"{base} does not generate F_{field.q}*")
    order = field.q - 1
    if order > DLOG_MAX_ORDER:
        raise BudgetExceeded(f"discrete log limited to group order {DLOG_MAX_ORDER}",
                             bound=DLOG_MAX_ORDER)
    m = math.isqrt(order - 1) + 1 if order > 1 else 1
    baby = {}
    cur = field.one
    for j in range(m):
        baby.setdefault(cur, j)
        cur = cur * base
    giant = base ** (-m) if order > 1 else field.one
    gamma = target
    for i in range(m + 1):
        j = baby.get(gamma)
        if j is not None:
            return (i * m + j) % order
        gamma = gamma * giant
    raise AssertionError("generator failed to reach target")
