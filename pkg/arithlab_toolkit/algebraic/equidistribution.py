"""Ramanujan sums, Weyl-sum and discrepancy statistics of Galois orbits, Northcott enumeration."""

import concurrent.futures
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from mpmath import exp, log, mpf, workdps
from tqdm import tqdm

from arithlab_toolkit.algebraic.measures import mahler_measure
from arithlab_toolkit.algebraic.numbers import WORK_DPS, AlgebraicNumber, CertifiedReal
from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError
from arithlab_toolkit.exactnum import IntPoly, divisors, euler_phi, moebius_mu

logger = logging.getLogger(__name__)

MODULUS_WINDOW = 0.2
NORTHCOTT_MAX_DEGREE = 4
NORTHCOTT_MAX_HEIGHT = math.log(3)
# B arrives as a float, so e^(dB) is only known to about this relative accuracy
BOUND_SLACK = mpf("1e-12")


def ramanujan_sum(n: int, k: int) -> int:
    """S(n, k) = sum over a mod n, gcd(a, n) = 1, of e^(2 pi i a k / n).

    Computed from the divisor formula sum_{d | (n, k)} d mu(n / d) and from the exponential
    sum itself; the two must agree.
    """
    if n < 1:
        raise DomainError(f"Ramanujan sum needs n >= 1, got {n}")
    g = math.gcd(n, k)
    by_divisors = sum(d * moebius_mu(n // d) for d in divisors(g))
    units = np.array([a for a in range(1, n + 1) if math.gcd(a, n) == 1], dtype=np.int64)
    phases = 2 * np.pi * ((units * (k % n)) % n) / n
    direct = float(np.cos(phases).sum())
    if abs(direct - by_divisors) > 1e-9 * max(1, n):
        raise ConsistencyError(f"S({n},{k}): divisor formula {by_divisors}, direct sum {direct}")
    return by_divisors


@dataclass(frozen=True)
class DiscreteMeasure:
    """Uniform probability measure on a finite set of complex points."""

    support: Tuple[complex, ...]

    def __post_init__(self):
        if not self.support:
            raise DomainError("a discrete measure needs a nonempty support")

    @classmethod
    def from_algebraic(cls, alpha: AlgebraicNumber) -> "DiscreteMeasure":
        return cls(tuple(complex(z) for z in alpha.conjugates))

    @property
    def weight(self) -> float:
        return 1.0 / len(self.support)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.support, dtype=np.complex128)

    def moment(self, k: int) -> complex:
        return complex(np.mean(self.as_array() ** k))

    def argument_discrepancy(self) -> float:
        """Star discrepancy of arg(z) / 2 pi in [0, 1) against the uniform distribution."""
        theta = np.sort(np.mod(np.angle(self.as_array()) / (2 * np.pi), 1.0))
        n = len(theta)
        i = np.arange(n)
        return float(max(np.max((i + 1) / n - theta), np.max(theta - i / n)))

    def outside_window(self, eps: float = MODULUS_WINDOW) -> int:
        r = np.abs(self.as_array())
        return int(np.count_nonzero((r < 1 - eps) | (r > 1 + eps)))


@dataclass
class EquidistributionRow:
    label: str
    degree: int
    weyl: List[complex]
    discrepancy: float
    outside_window: int

    @property
    def in_window(self) -> bool:
        return self.outside_window == 0

    @property
    def weyl_abs(self) -> List[float]:
        return [abs(w) for w in self.weyl]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "degree": self.degree,
            "weyl": self.weyl_abs,
            "discrepancy": self.discrepancy,
            "outside_window": self.outside_window,
        }


def _stats_row(label: str, measure: DiscreteMeasure, k_max: int,
               cyclotomic_index: Optional[int]) -> EquidistributionRow:
    weyl = [measure.moment(k) for k in range(1, k_max + 1)]
    if cyclotomic_index is not None:
        n = cyclotomic_index
        phi = euler_phi(n)
        for k, w in enumerate(weyl, start=1):
            if abs(w - ramanujan_sum(n, k) / phi) > 1e-9:
                raise ConsistencyError(f"Weyl sum {k} of zeta_{n} is {w}, "
                                       f"not S({n},{k})/phi({n})")
    row = EquidistributionRow(label, len(measure.support), weyl,
                              measure.argument_discrepancy(), measure.outside_window())
    if not row.in_window:
        logger.info("%s has %d conjugates outside the modulus window", label,
                    row.outside_window)
    return row


def equidistribution_stats(sequence: Sequence[Union[AlgebraicNumber, DiscreteMeasure]],
                           k_max: int = 10, num_threads: Optional[int] = None,
                           show_progress: bool = False) -> List[EquidistributionRow]:
    """Weyl sums |avg z^k|, k = 1..k_max, and angular discrepancy for each Galois orbit.

    Orbits of zeta_n are checked against S(n, k) / phi(n).
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    jobs = []
    for idx, item in enumerate(sequence):
        if isinstance(item, AlgebraicNumber):
            label = (f"zeta_{item.cyclotomic_index}" if item.cyclotomic_index
                     else str(item.minpoly))
            jobs.append((label, DiscreteMeasure.from_algebraic(item), item.cyclotomic_index))
        else:
            jobs.append((f"measure_{idx}", item, None))
    num_threads = num_threads or get_config().num_threads
    results: List[Optional[EquidistributionRow]] = [None] * len(jobs)
    with concurrent.futures.ThreadPoolExecutor(max_workers=num_threads) as executor:
        future_dict = {
            executor.submit(_stats_row, label, measure, k_max, n): idx
            for idx, (label, measure, n) in enumerate(jobs)
        }
        done = concurrent.futures.as_completed(future_dict)
        if show_progress:
            done = tqdm(done, total=len(future_dict), desc="Weyl sums")
        for future in done:
            results[future_dict[future]] = future.result()
    return results


@dataclass(frozen=True)
class NorthcottEntry:
    poly: IntPoly
    height: CertifiedReal

    @property
    def degree(self) -> int:
        return self.poly.degree

    def rational_root(self) -> Optional[Fraction]:
        if self.degree != 1:
            return None
        return Fraction(-self.poly.coeffs[0], self.poly.coeffs[1])

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "degree": self.degree,
                "height": self.height.to_json()}


@dataclass
class NorthcottResult:
    max_degree: int
    max_height: float
    scanned: int
    entries: List[NorthcottEntry] = field(default_factory=list)

    @property
    def count(self) -> int:
        """Number of algebraic numbers, counting every conjugate."""
        return sum(e.degree for e in self.entries)

    def rationals(self) -> List[Fraction]:
        return sorted(e.rational_root() for e in self.entries if e.degree == 1)

    def to_json(self) -> dict:
        return {"max_degree": self.max_degree, "max_height": self.max_height,
                "scanned": self.scanned, "count": self.count,
                "entries": [e.to_json() for e in self.entries]}


def _coefficient_ranges(d: int, bound_m: int) -> List[range]:
    """|a_j| <= C(d, j) M(g) by expanding the leading coefficient times prod (x - root)."""
    ranges = [range(-bound_m, bound_m + 1)]
    for j in range(1, d):
        b = math.comb(d, j) * bound_m
        ranges.append(range(-b, b + 1))
    ranges.append(range(1, bound_m + 1))
    return ranges


def northcott_enumerate(max_degree: int, max_height: float,
                        show_progress: bool = False) -> NorthcottResult:
    """Every nonzero algebraic number of degree <= D and height <= B, one entry per minimal
    polynomial.

    deg g = d and h <= B give M(g) <= e^(d B), and every coefficient of g is bounded by
    C(d, j) M(g), so the scan over those boxes is complete. 0 is left out.
    """
    if max_degree < 1 or max_height < 0:
        raise DomainError(f"need D >= 1 and B >= 0, got D={max_degree}, B={max_height}")
    if max_degree > NORTHCOTT_MAX_DEGREE or max_height > NORTHCOTT_MAX_HEIGHT + 1e-12:
        raise BudgetExceeded(f"Northcott scan limited to D <= {NORTHCOTT_MAX_DEGREE} and "
                             f"B <= log 3, got D={max_degree}, B={max_height}")
    boxes = []
    with workdps(WORK_DPS):
        for d in range(1, max_degree + 1):
            bound = exp(d * mpf(max_height))
            boxes.append((d, bound, _coefficient_ranges(d, int(bound * (1 + BOUND_SLACK)))))
    total = sum(math.prod(len(r) for r in ranges) for _, _, ranges in boxes)
    budget = get_config().enum_budget
    if total > budget:
        raise BudgetExceeded(f"Northcott scan over {total} coefficient vectors", bound=budget,
                             key=key_for("enum_budget"))
    result = NorthcottResult(max_degree, max_height, total)
    for d, bound, ranges in boxes:
        candidates = itertools.product(*ranges)
        if show_progress:
            candidates = tqdm(candidates, total=math.prod(len(r) for r in ranges),
                              desc=f"degree {d}")
        for coeffs in candidates:
            entry = _northcott_candidate(coeffs, d, bound)
            if entry is not None:
                result.entries.append(entry)
    result.entries.sort(key=lambda e: (e.degree, e.poly.coeffs))
    logger.info("Northcott D=%d B=%.4f: %d polynomials, %d numbers", max_degree, max_height,
                len(result.entries), result.count)
    return result


def _northcott_candidate(coeffs: Tuple[int, ...], d: int, bound) -> Optional[NorthcottEntry]:
    if coeffs[0] == 0 or math.gcd(*coeffs) != 1:
        return None
    roots = np.roots(coeffs[::-1])
    approx = coeffs[-1] * np.prod(np.maximum(1.0, np.abs(roots)))
    if approx > float(bound) * (1 + 1e-6):
        return None
    poly = IntPoly(coeffs)
    if d > 1 and not poly.is_irreducible():
        return None
    m = mahler_measure(poly)
    if m.lower > bound * (1 + BOUND_SLACK):
        return None
    with workdps(WORK_DPS):
        height = CertifiedReal(log(m.value) / d, m.err / m.value / d)
    return NorthcottEntry(poly, height)
