"""Level-one modular forms as q-expansions: Eisenstein series, Delta and Hecke operators."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from arithlab_toolkit.errors import ConsistencyError, DomainError, PrecisionError
from arithlab_toolkit.exactnum.ntheory import bernoulli, divisors, is_prime
from arithlab_toolkit.modforms.qseries import QSeries, sigma_table

logger = logging.getLogger(__name__)


def eisenstein_constant(weight: int) -> Fraction:
    """-2k/B_k: 240, -504, 480, -264, 65520/691, -24 for k = 4..14."""
    return -2 * weight / bernoulli(weight)


def eisenstein(weight: int, precision: int) -> QSeries:
    """Normalized E_k = 1 + c_k sum sigma_{k-1}(n) q^n with constant term 1."""
    if weight % 2 or weight < 4:
        raise DomainError(f"Eisenstein weight must be even and >= 4, got {weight}")
    c = eisenstein_constant(weight)
    sig = sigma_table(precision, weight - 1)
    return QSeries([1] + [c * sig[n] for n in range(1, precision + 1)], precision, weight)


def eisenstein_normalized(weight: int, precision: int) -> QSeries:
    """E_k rescaled so that a_1 = 1 (the normalized Hecke eigenform)."""
    e = eisenstein(weight, precision)
    return e / eisenstein_constant(weight)


def delta_series(precision: int) -> QSeries:
    """Delta = (E4^3 - E6^2) / 1728, with every coefficient checked to be an integer."""
    if precision < 1:
        raise DomainError(f"Delta needs precision >= 1, got {precision}")
    e4, e6 = eisenstein(4, precision), eisenstein(6, precision)
    delta = (e4 ** 3 - e6 ** 2) / 1728
    if not delta.is_integral():
        raise ConsistencyError("(E4^3 - E6^2)/1728 has a non-integral coefficient")
    delta.weight = 12
    return delta


def tau(n: int) -> int:
    """Ramanujan's tau function."""
    if n < 1:
        raise DomainError(f"tau needs n >= 1, got {n}")
    return int(delta_series(n).coeff(n))


def hecke_Tn(f: QSeries, n: int, precision: Optional[int] = None) -> QSeries:
    """T_n on a weight-k series: a_m(T_n f) = sum_{d | (m,n)} d^(k-1) a_(mn/d^2)(f).

    The output precision is floor(P / n) unless a smaller ``precision`` is requested.
    """
    if n < 1:
        raise DomainError(f"Hecke index must be >= 1, got {n}")
    if f.weight is None:
        raise DomainError("Hecke operators need the series weight")
    out_prec = f.precision // n if precision is None else precision
    if out_prec < 0 or n * out_prec > f.precision:
        need = n * max(out_prec, 0)
        raise PrecisionError(f"T_{n} to precision {out_prec} needs input precision {need}, "
                             f"have {f.precision}", required=need)
    k = f.weight
    divs = divisors(n)
    coeffs = []
    for m in range(out_prec + 1):
        total = Fraction(0)
        for d in divs:
            if m % d == 0:
                total += d ** (k - 1) * f.coeffs[m * n // (d * d)]
        coeffs.append(total)
    return QSeries(coeffs, out_prec, k)


@dataclass
class EigenformReport:
    success: bool
    checks: int
    first_violation: Optional[str] = None
    eigenvalues: dict = field(default_factory=dict)


def is_normalized_eigenform(f: QSeries, primes: Sequence[int]) -> EigenformReport:
    """Check weak multiplicativity and the prime-power recursion up to the known precision."""
    if f.precision < 1 or f.coeff(1) != 1:
        raise DomainError("a normalized eigenform must have a_1 = 1")
    if f.weight is None:
        raise DomainError("eigenform test needs the series weight")
    a, N, k = f.coeffs, f.precision, f.weight
    checks = 0
    for m in range(2, N + 1):
        for n in range(m + 1, N // m + 1):
            if math.gcd(m, n) != 1:
                continue
            checks += 1
            if a[m * n] != a[m] * a[n]:
                return EigenformReport(False, checks,
                                       f"a_{m * n} != a_{m} a_{n} ({a[m * n]} vs {a[m] * a[n]})")
    for p in primes:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        s = 1
        while p ** (s + 1) <= N:
            checks += 1
            lhs = a[p] * a[p ** s]
            rhs = a[p ** (s + 1)] + p ** (k - 1) * a[p ** (s - 1)]
            if lhs != rhs:
                return EigenformReport(False, checks,
                                       f"a_{p} a_{p ** s} != a_{p ** (s + 1)} + "
                                       f"{p}^{k - 1} a_{p ** (s - 1)}")
            s += 1
    return EigenformReport(True, checks, None, {p: a[p] for p in primes if p <= N})


def hecke_eigenvalue(f: QSeries, p: int) -> Optional[Fraction]:
    """lambda with T_p f = lambda f to available precision, or ``None``."""
    g = hecke_Tn(f, p)
    lead = f.truncate(g.precision).first_nonzero()
    if lead is None:
        return None
    lam = g.coeffs[lead] / f.coeffs[lead]
    if all(g.coeffs[i] == lam * f.coeffs[i] for i in range(g.precision + 1)):
        return lam
    return None


def is_hecke_eigenform(f: QSeries, primes: Sequence[int]) -> EigenformReport:
    """Whether T_p f is proportional to f for each p (no normalization needed)."""
    eig = {}
    for i, p in enumerate(primes):
        lam = hecke_eigenvalue(f, p)
        if lam is None:
            return EigenformReport(False, i + 1, f"T_{p} f is not a multiple of f", eig)
        eig[p] = lam
    return EigenformReport(True, len(primes), None, eig)


@dataclass
class SigmaIdentityReport:
    n_max: int
    eq_sigma7_ok: bool
    eq_sigma9_ok: bool
    eq_sigma9_literal_ok: bool
    first_failure: dict = field(default_factory=dict)


def verify_sigma_identities(n_max: int) -> SigmaIdentityReport:
    """sigma_7 and sigma_9 convolution identities for n <= n_max (sums over m = 1..n-1).

    The sigma_9 identity is checked with sigma_3(m) sigma_5(n-m) inside the sum; the variant
    with sigma_3(n) in place of sigma_3(m) is evaluated too and reported separately.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    s3, s5 = sigma_table(n_max, 3), sigma_table(n_max, 5)
    s7, s9 = sigma_table(n_max, 7), sigma_table(n_max, 9)
    fails = {}
    ok7 = ok9 = ok9lit = True
    for n in range(1, n_max + 1):
        conv33 = sum(s3[m] * s3[n - m] for m in range(1, n))
        conv35 = sum(s3[m] * s5[n - m] for m in range(1, n))
        conv35_lit = sum(s3[n] * s5[n - m] for m in range(1, n))
        if ok7 and s7[n] != s3[n] + 120 * conv33:
            ok7, fails["sigma7"] = False, n
        if ok9 and 11 * s9[n] != 21 * s5[n] - 10 * s3[n] + 5040 * conv35:
            ok9, fails["sigma9"] = False, n
        if ok9lit and 11 * s9[n] != 21 * s5[n] - 10 * s3[n] + 5040 * conv35_lit:
            ok9lit, fails["sigma9_literal"] = False, n
    logger.info("sigma identities to %d: sigma7=%s sigma9=%s", n_max, ok7, ok9)
    return SigmaIdentityReport(n_max, ok7, ok9, ok9lit, fails)


def ramanujan_bound_holds(p: int) -> bool:
    """|tau(p)| <= 2 p^(11/2), compared exactly via squares."""
    t = tau(p)
    return t * t <= 4 * p ** 11


def tau_values(n_max: int) -> List[int]:
    d = delta_series(n_max)
    return [int(c) for c in d.coeffs]
