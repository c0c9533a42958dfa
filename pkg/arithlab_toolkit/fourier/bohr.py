"""Bohr sets B(S, delta) and Bogolyubov certificates for 2A - 2A."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence, Union

import numpy as np

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.fourier.analysis import (RTOL, dft, difference_mask, spectrum_indices,
                                               sumset_mask)
from arithlab_toolkit.fourier.group import Element, FiniteAbelianGroup, indicator

logger = logging.getLogger(__name__)

BOGOLYUBOV_MAX = 10_000

Radius = Union[Fraction, float, int, str]


@dataclass
class BohrSet:
    group: FiniteAbelianGroup
    frequencies: List[Element]
    delta: Fraction
    mask: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def density(self) -> float:
        return self.size / self.group.order

    @property
    def members(self) -> List[Element]:
        return [self.group.element(i) for i in np.nonzero(self.mask)[0]]

    def __contains__(self, x: Element) -> bool:
        return bool(self.mask[self.group.index(x)])

    def to_json(self) -> dict:
        return {"group": repr(self.group), "frequencies": self.frequencies,
                "delta": str(self.delta), "size": self.size,
                "members": self.members if self.size <= 200 else None}


def bohr_set(group: FiniteAbelianGroup, S: Iterable[Element], delta: Radius) -> BohrSet:
    """{x : ||r.x||_T <= delta for all r in S}, decided on exact integer phases."""
    delta = Fraction(delta)
    if delta < 0:
        raise DomainError(f"Bohr radius must be non-negative, got {delta}")
    frequencies = [group.element(i) for i in group.indices(S)]
    L = group.exponent
    mask = np.ones(group.order, dtype=bool)
    for r in frequencies:
        phase = group.phase_numerators(r)
        dist = np.minimum(phase, L - phase)
        # dist / L <= delta  <=>  dist * den <= num * L
        mask &= dist * delta.denominator <= delta.numerator * L
    return BohrSet(group, frequencies, delta, mask)


@dataclass
class BohrBounds:
    lower: float
    beta: float
    upper: float
    min_coefficient_ratio: float

    def to_json(self) -> dict:
        return {"delta^|S|": self.lower, "beta": self.beta, "4/|S|": self.upper,
                "min |1_B^(r)| / beta": self.min_coefficient_ratio}


def check_bohr_bounds(B: BohrSet) -> BohrBounds:
    """delta^|S| <= beta <= 4/|S| and |1_B^(r)| >= beta/2 on S, asserted for delta <= 1/(4 pi)."""
    k = len(B.frequencies)
    beta = B.density
    lower = float(B.delta) ** k
    upper = 4 / k if k else math.inf
    coeffs = np.abs(dft(indicator(B.group, B.members)).values)
    ratio = min((coeffs[B.group.index(r)] / beta for r in B.frequencies), default=math.inf)
    bounds = BohrBounds(lower, beta, upper, float(ratio))
    if B.delta <= 1 / (4 * math.pi):
        if not (lower <= beta * (1 + RTOL) and beta <= upper * (1 + RTOL)
                and ratio >= 0.5 - RTOL):
            raise ConsistencyError(f"Bohr set size bounds fail: {bounds.to_json()}")
    return bounds


def check_bohr_doubling(group: FiniteAbelianGroup, S: Sequence[Element], delta: Radius,
                        lam: Radius) -> tuple:
    """(|B(S, lam delta)|, (2 lam + 1)^|S| |B(S, delta)|); the first never exceeds the second."""
    delta, lam = Fraction(delta), Fraction(lam)
    small = bohr_set(group, S, delta)
    big = bohr_set(group, S, lam * delta)
    bound = (2 * lam + 1) ** len(small.frequencies) * small.size
    if big.size > bound:
        raise ConsistencyError(f"|B(S, {lam} delta)| = {big.size} exceeds {bound}")
    return big.size, bound


@dataclass
class BogolyubovCertificate:
    alpha: float
    threshold: float
    frequencies: List[Element]
    bohr_size: int
    sumset_size: int
    contained: bool

    @property
    def frequency_bound(self) -> float:
        return 2 / self.alpha ** 2

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "lambda": self.threshold,
                "|S|": len(self.frequencies), "2/alpha^2": self.frequency_bound,
                "|B(S,1/4)|": self.bohr_size, "|2A-2A|": self.sumset_size,
                "contained": self.contained}


def bogolyubov_certificate(group: FiniteAbelianGroup,
                           A: Iterable[Element]) -> BogolyubovCertificate:
    """S = Spec_lambda(1_A) with lambda = alpha^(3/2) / sqrt(2); checks B(S, 1/4) in 2A - 2A.

    The sumset 2A - 2A is computed exactly from translates, independently of the transform.
    """
    if group.order > BOGOLYUBOV_MAX:
        raise DomainError(f"Bogolyubov check limited to |G| <= {BOGOLYUBOV_MAX}, "
                          f"got {group.order}")
    idx = group.indices(A)
    if len(idx) == 0:
        raise DomainError("Bogolyubov's lemma needs a non-empty set")
    alpha = len(idx) / group.order
    lam = alpha ** 1.5 / math.sqrt(2)
    f = indicator(group, [group.element(i) for i in idx])
    S = [group.element(i) for i in spectrum_indices(f, lam)]
    bohr = bohr_set(group, S, Fraction(1, 4))

    mask = np.zeros(group.order, dtype=bool)
    mask[idx] = True
    two_a = sumset_mask(group, mask, mask)
    diff = difference_mask(group, two_a, two_a)
    contained = bool(np.all(diff[bohr.mask]))
    cert = BogolyubovCertificate(alpha, lam, S, bohr.size, int(np.count_nonzero(diff)),
                                 contained)
    logger.debug("Bogolyubov on %s: %s", group, cert.to_json())
    if not contained:
        raise ConsistencyError(f"B(S, 1/4) not inside 2A - 2A: {cert.to_json()}")
    if len(S) > cert.frequency_bound * (1 + RTOL):
        raise ConsistencyError(f"|S| = {len(S)} exceeds 2/alpha^2 = {cert.frequency_bound:.3f}")
    return cert
