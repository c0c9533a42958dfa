"""Elementary number theory on Python integers and ``Fraction`` rationals."""

import math
import logging
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Tuple

from arithlab_toolkit.errors import DomainError

logger = logging.getLogger(__name__)

# Deterministic Miller-Rabin with these bases is exact below this bound.
MR_LIMIT = 341_550_071_728_321
MR_BASES = (2, 3, 5, 7, 11, 13, 17)
TRIAL_LIMIT = 1_000_000
FACTOR_LIMIT = 330_000_000_000_000


def is_prime(n: int) -> bool:
    """Deterministic primality for ``n < 3.4e14``; larger inputs raise ``DomainError``."""
    if n < 2:
        return False
    if n >= MR_LIMIT:
        raise DomainError(f"primality of {n} is outside the deterministic range (< {MR_LIMIT})")
    for q in MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of ``|n|`` by trial division to 10^6 plus a primality check."""
    n = abs(int(n))
    if n == 0:
        raise DomainError("cannot factor 0")
    if n > FACTOR_LIMIT:
        raise DomainError(f"factorization input {n} exceeds {FACTOR_LIMIT}")
    factors: Dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n and p <= TRIAL_LIMIT:
        for q in (p, p + 2):
            while n % q == 0:
                factors[q] = factors.get(q, 0) + 1
                n //= q
        p += 6
    if n > 1:
        if not is_prime(n):
            raise DomainError(f"cofactor {n} has no factor below {TRIAL_LIMIT} and is composite")
        factors[n] = factors.get(n, 0) + 1
    return factors


def prime_factors(n: int) -> List[int]:
    return sorted(factorize(n))


def primes_up_to(n: int) -> List[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def divisors(n: int) -> List[int]:
    """Sorted positive divisors of ``n >= 1``."""
    if n < 1:
        raise DomainError(f"divisors need n >= 1, got {n}")
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"phi needs n >= 1, got {n}")
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def moebius_mu(n: int) -> int:
    if n < 1:
        raise DomainError(f"mu needs n >= 1, got {n}")
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def sigma_k(n: int, k: int) -> int:
    """Divisor power sum; ``k = 0`` counts divisors."""
    if n < 1:
        raise DomainError(f"sigma needs n >= 1, got {n}")
    total = 1
    for p, e in factorize(n).items():
        if k == 0:
            total *= e + 1
        else:
            pk = p ** k
            total *= (pk ** (e + 1) - 1) // (pk - 1)
    return total


def inverse_mod(a: int, m: int) -> int:
    try:
        return pow(a, -1, m)
    except ValueError:
        raise DomainError(f"{a} is not invertible modulo {m}")


def crt(residues: List[int], moduli: List[int]) -> Tuple[int, int]:
    """Combine pairwise coprime congruences; returns ``(x, M)`` with ``0 <= x < M``."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        if math.gcd(m, n) != 1:
            raise DomainError(f"moduli {m} and {n} are not coprime")
        t = (r - x) * inverse_mod(m, n) % n
        x, m = x + m * t, m * n
    return x % m, m


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def valuation(p: int, x) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("valuation of 0 is infinite")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime ``p``."""
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker_2(a: int) -> int:
    """(a/2) for odd a: 1 if a = +-1 mod 8, else -1."""
    return 1 if a % 8 in (1, 7) else -1


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)*."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def squarefree_integer(x) -> int:
    """Integer in the same square class as the nonzero rational ``x``."""
    x = Fraction(x)
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    core = 1
    for p, e in factorize(n).items():
        if e % 2:
            core *= p
    return sign * core


def hilbert_symbol(a, b, p) -> int:
    """Local Hilbert symbol (a, b)_p for nonzero rationals; ``p`` is a prime or ``"inf"``."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    a, b = squarefree_integer(a), squarefree_integer(b)
    alpha, beta = valuation(p, a), valuation(p, b)
    u, v = a // p ** alpha, b // p ** beta
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2  # noqa: E731
        omega = lambda t: ((t * t - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre_symbol(u, p) ** beta * legendre_symbol(v, p) ** alpha


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise DomainError(f"Bernoulli index must be >= 0, got {n}")
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        b[m] = -sum(math.comb(m + 1, k) * b[k] for k in range(m)) / (m + 1)
    return b[n]


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None`` if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None
