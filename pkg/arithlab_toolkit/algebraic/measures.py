"""Mahler measure, resultants, Weil height, Kronecker's test and Galois-orbit energy."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from mpmath import exp, fabs, log, mpf, polyval, workdps

from arithlab_toolkit.algebraic.numbers import (
    WORK_DPS, AlgebraicNumber, CertifiedReal, as_int_poly, certified_roots,
    cyclotomic_indices_of_degree,
)
from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum import (
    IntPoly, RatPoly, cyclotomic_poly, make_poly, squarefree_decomposition, sylvester_matrix,
)
from arithlab_toolkit.exactnum.poly import FACTOR_MAX_DEGREE

logger = logging.getLogger(__name__)

AGREEMENT_TOL = mpf("1e-10")
ROUNDING = mpf(10) ** (10 - WORK_DPS)


def _log_plus(z) -> mpf:
    r = fabs(z)
    return log(r) if r > 1 else mpf(0)


def log_mahler_measure(f) -> CertifiedReal:
    """log |lead| + sum log+ |root| over the roots with multiplicity (Jensen's formula).

    log+ is 1-Lipschitz in |z|, so a root known to radius r moves the sum by at most r.
    A root whose disc straddles the unit circle therefore only widens the error.
    """
    f = as_int_poly(f)
    content, parts = squarefree_decomposition(f)
    with workdps(WORK_DPS):
        total = log(abs(content))
        err = ROUNDING
        for part, mult in parts:
            cluster = certified_roots(part)
            total += mult * (log(part.lead) + sum(_log_plus(z) for z in cluster.roots))
            err += mult * part.degree * cluster.radius
    return CertifiedReal(total, err)


def mahler_measure(f) -> CertifiedReal:
    """M(f) = |lead| * prod max(1, |root|) with a propagated error radius."""
    logm = log_mahler_measure(f)
    with workdps(WORK_DPS):
        value = exp(logm.value)
        err = value * (exp(logm.err) - 1) + ROUNDING
    return CertifiedReal(value, err)


@dataclass(frozen=True)
class MahlerIdentities:
    product: float
    reciprocal: float

    @property
    def holds(self) -> bool:
        return self.product <= AGREEMENT_TOL and self.reciprocal <= AGREEMENT_TOL


def mahler_identity_check(f, g) -> MahlerIdentities:
    """Residuals of M(fg) = M(f) M(g) and M(f) = M(f*), relative to the product."""
    f, g = as_int_poly(f), as_int_poly(g)
    if f.is_zero() or g.is_zero():
        raise DomainError("Mahler measure of the zero polynomial is undefined")
    mf, mg, mfg = mahler_measure(f), mahler_measure(g), mahler_measure(f * g)
    mrev = mahler_measure(f.reverse())
    with workdps(WORK_DPS):
        product = fabs(mfg.value - mf.value * mg.value) / mfg.value
        reciprocal = fabs(mrev.value - mf.value) / mf.value
    check = MahlerIdentities(float(product), float(reciprocal))
    if not check.holds:
        raise ConsistencyError(f"Mahler identities fail for {f}, {g}: {check}")
    return check


def resultant(f, g) -> Fraction:
    """Sylvester determinant, cross-checked against lead(f)^deg g * prod g(alpha_i)."""
    f = f if isinstance(f, RatPoly) else as_int_poly(f)
    g = g if isinstance(g, RatPoly) else as_int_poly(g)
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    res = sylvester_matrix(f, g).det()
    if isinstance(f, IntPoly) and 1 <= f.degree <= FACTOR_MAX_DEGREE:
        _check_root_product(f, g, res)
    return res


def _check_root_product(f: IntPoly, g: RatPoly, res: Fraction) -> None:
    if f.gcd(f.derivative()).degree > 0:
        return
    cluster = certified_roots(f)
    with workdps(WORK_DPS):
        gc = [mpf(c.numerator) / c.denominator for c in map(Fraction, reversed(g.coeffs))]
        prod = mpf(f.lead) ** g.degree
        for z in cluster.roots:
            prod *= polyval(gc, z)
        scale = max(mpf(1), fabs(mpf(res.numerator) / res.denominator))
        if fabs(prod - mpf(res.numerator) / res.denominator) > AGREEMENT_TOL * scale:
            raise ConsistencyError(f"Res({f}, {g}) = {res} but the root product is {prod}")


def discriminant(f) -> int:
    """D(f) with R(f, f') = (-1)^(n(n-1)/2) lead(f) D(f); |D| <= n^n M(f)^(2n-2) is checked."""
    f = as_int_poly(f)
    n = f.degree
    if n < 1:
        raise DomainError(f"discriminant needs degree >= 1, got {f}")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    disc = sign * resultant(f, f.derivative()) / f.lead
    if disc.denominator != 1:
        raise ConsistencyError(f"discriminant of {f} is not an integer: {disc}")
    disc = int(disc)
    if disc and n <= FACTOR_MAX_DEGREE:
        m = mahler_measure(f)
        with workdps(WORK_DPS):
            bound = mpf(n) ** n * m.upper ** (2 * n - 2)
            if abs(disc) > bound * (1 + AGREEMENT_TOL):
                raise ConsistencyError(f"|D({f})| = {abs(disc)} exceeds n^n M^(2n-2) = {bound}")
    logger.debug("D(%s) = %d", f, disc)
    return disc


def weil_height(alpha: AlgebraicNumber) -> CertifiedReal:
    """h(alpha) = log M(g_alpha) / deg alpha, checked against h(1/alpha).

    Up to degree 24 the sum over the conjugates is also compared with ``log_mahler_measure``.
    """
    d = alpha.degree
    g = alpha.minpoly
    with workdps(WORK_DPS):
        height = (log(abs(g.lead)) + sum(_log_plus(z) for z in alpha.conjugates)) / d
        err = alpha.cluster.radius + ROUNDING
        if not alpha.is_zero():
            # product formula: the conjugates of 1/alpha are 1/z, with leading coefficient g(0)
            reciprocal = (log(abs(g.coeffs[0]))
                          + sum(_log_plus(1 / z) for z in alpha.conjugates)) / d
            if fabs(reciprocal - height) > AGREEMENT_TOL + err:
                raise ConsistencyError(f"h(1/alpha) = {reciprocal} != h(alpha) = {height}")
    if d <= FACTOR_MAX_DEGREE and alpha.cyclotomic_index is None:
        via_measure = log_mahler_measure(g)
        if fabs(via_measure.value / d - height) > AGREEMENT_TOL + err + via_measure.err / d:
            raise ConsistencyError(f"height formulas disagree for {alpha}: "
                                   f"{via_measure.value / d} vs {height}")
    return CertifiedReal(height, err)


def _power_sums(g: IntPoly, count: int) -> List[int]:
    """Power sums s_0 .. s_count of the roots of a monic g (Newton's identities)."""
    d = g.degree
    c = g.coeffs
    s = [d]
    for m in range(1, count + 1):
        acc = sum(c[d - i] * s[m - i] for i in range(1, min(m - 1, d) + 1))
        if m <= d:
            acc += m * c[d - m]
        s.append(-acc)
    return s


def root_of_unity_order(alpha: AlgebraicNumber) -> Optional[int]:
    """Order n with alpha^n = 1, or None (Kronecker).

    Only a monic g_alpha with every conjugate in the closed unit disc can qualify. Then alpha
    is a root of unity of some order n with phi(n) = deg alpha, and alpha^n = 1 exactly when
    every conjugate of alpha^n is 1, i.e. the power sums s_{n j}, j = 1..d, all equal d.
    """
    g = alpha.minpoly
    if alpha.is_zero() or g.lead != 1:
        return None
    with workdps(WORK_DPS):
        slack = alpha.cluster.radius + mpf("1e-15")
        if any(fabs(z) > 1 + slack for z in alpha.conjugates):
            return None
    d = g.degree
    candidates = cyclotomic_indices_of_degree(d)
    if alpha.cyclotomic_index in candidates:
        candidates.remove(alpha.cyclotomic_index)
        candidates.insert(0, alpha.cyclotomic_index)
    for n in candidates:
        if g == cyclotomic_poly(n):
            if d <= FACTOR_MAX_DEGREE:
                s = _power_sums(g, n * d)
                if any(s[n * j] != d for j in range(1, d + 1)):
                    raise ConsistencyError(f"g = Phi_{n} but power sums of alpha^{n} are not {d}")
            return n
    raise ConsistencyError(f"{g} is monic with roots in the unit disc but no Phi_n matches")


def is_root_of_unity(alpha: AlgebraicNumber) -> bool:
    return root_of_unity_order(alpha) is not None


def _interpolate(xs: List[int], ys: List[Fraction]) -> RatPoly:
    """Newton divided differences, exact."""
    coef = list(map(Fraction, ys))
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = make_poly([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * make_poly([-xs[i], 1]) + coef[i]
    return poly


def power_resultant(g: IntPoly, k: int) -> IntPoly:
    """Res_y(g(y), x - y^k) as a polynomial in x; its roots are the k-th powers of g's roots."""
    d = g.degree
    xs = list(range(d + 1))
    ys = [resultant(g, make_poly([x] + [0] * (k - 1) + [-1])) for x in xs]
    poly = _interpolate(xs, ys)
    return as_int_poly(poly.coeffs)


def minpoly_power(alpha: AlgebraicNumber, k: int) -> AlgebraicNumber:
    """alpha^k with its minimal polynomial taken from the factor of the power resultant."""
    if k < 1:
        raise DomainError(f"exponent must be >= 1, got {k}")
    if k == 1:
        return alpha
    res = power_resultant(alpha.minpoly, k)
    with workdps(WORK_DPS):
        target = alpha.value ** k

        def residual(factor: IntPoly):
            coeffs = [mpf(c) for c in reversed(factor.coeffs)]
            return fabs(polyval(coeffs, target)) / max(fabs(mpf(c)) for c in factor.coeffs)

        factor = min((fac for fac, _ in res.factor_over_z()), key=residual)
    power = AlgebraicNumber(factor, 0, verify=False)
    power.root_index = power.index_of(target)
    if power.degree > alpha.degree:
        raise ConsistencyError(f"deg(alpha^{k}) = {power.degree} > deg(alpha) = {alpha.degree}")
    h, hk = weil_height(alpha), weil_height(power)
    if fabs(hk.value - k * h.value) > AGREEMENT_TOL + hk.err + k * h.err:
        raise ConsistencyError(f"h(alpha^{k}) = {hk.value} != {k} h(alpha) = {k * h.value}")
    return power


def orbit_energy(alpha: AlgebraicNumber) -> CertifiedReal:
    """E'(delta_G) = -(1 / d^2) sum over ordered pairs z != w of log |z - w|.

    For d <= 24 the pair sum is checked against log |D| - (2d - 2) log |lead|.
    """
    d = alpha.degree
    if d == 1:
        return CertifiedReal(mpf(0), mpf(0))
    roots = alpha.conjugates
    rho = alpha.cluster.radius
    with workdps(WORK_DPS):
        pair_sum, err = mpf(0), ROUNDING
        for i in range(d):
            for j in range(i + 1, d):
                dist = fabs(roots[i] - roots[j])
                pair_sum += 2 * log(dist)
                err += 4 * rho / (dist - 2 * rho)
        if d <= FACTOR_MAX_DEGREE:
            disc = discriminant(alpha.minpoly)
            exact = log(abs(disc)) - (2 * d - 2) * log(abs(alpha.lead))
            if fabs(exact - pair_sum) > AGREEMENT_TOL + err:
                raise ConsistencyError(f"pair sum {pair_sum} != log|D| term {exact} for {alpha}")
        return CertifiedReal(-pair_sum / (d * d), err / (d * d))


@dataclass(frozen=True)
class EnergyGap:
    energy: CertifiedReal
    height: CertifiedReal

    @property
    def gap(self) -> mpf:
        return 2 * self.height.value - self.energy.value

    def to_json(self) -> dict:
        return {"energy": self.energy.to_json(), "height": self.height.to_json(),
                "gap": float(self.gap)}


def energy_height_gap(alpha: AlgebraicNumber) -> EnergyGap:
    """2 h(alpha) - E'(delta_G(alpha)), which is never negative."""
    result = EnergyGap(orbit_energy(alpha), weil_height(alpha))
    slack = 2 * result.height.err + result.energy.err + AGREEMENT_TOL
    if result.gap < -slack:
        raise ConsistencyError(f"E' = {result.energy.value} > 2h = {2 * result.height.value}")
    return result

