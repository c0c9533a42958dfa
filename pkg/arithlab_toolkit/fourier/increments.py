"""Single density-increment steps: hyperplane cosets in F_p^n and progressions in [N]."""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.fourier.analysis import RTOL, dft
from arithlab_toolkit.fourier.group import Element, FiniteAbelianGroup, indicator

logger = logging.getLogger(__name__)


@dataclass
class CosetIncrement:
    frequency: Element
    level: int
    representative: Element
    alpha: float
    c: float
    density: float

    @property
    def promised(self) -> float:
        return self.alpha * (1 + self.c / 2)

    @property
    def certified(self) -> bool:
        return self.density >= self.promised - RTOL

    def to_json(self) -> dict:
        return {"r": self.frequency, "coset": f"r.x = {self.level}", "x": self.representative,
                "alpha": self.alpha, "c": self.c, "density": self.density,
                "promised": self.promised, "certified": self.certified}


def _largest_nonzero_frequency(group: FiniteAbelianGroup, A) -> Tuple[int, float]:
    coeffs = np.abs(dft(indicator(group, A)).values)
    coeffs[0] = 0.0
    i = int(np.argmax(coeffs))
    return i, float(coeffs[i])


def density_increment_vs(group: FiniteAbelianGroup, A: Iterable[Element],
                         r: Optional[Element] = None, c: Optional[float] = None) -> CosetIncrement:
    """A coset of V = r^perp on which A has density at least alpha (1 + c/2).

    Needs |1_A^(r)| >= c alpha. Without r the dominant nonzero frequency is used, and without c
    the largest admissible c.
    """
    if not group.is_elementary:
        raise DomainError(f"hyperplane increments need F_p^n, got {group}")
    p = group.invariants[0]
    idx = group.indices(A)
    alpha = len(idx) / group.order
    if alpha == 0:
        raise DomainError("density increment needs a non-empty set")
    A = [group.element(i) for i in idx]
    coeffs = dft(indicator(group, A)).values
    if r is None:
        ri, size = _largest_nonzero_frequency(group, A)
        if size <= RTOL:
            raise DomainError(f"no nonzero frequency with a large coefficient on {group}")
        r = group.element(ri)
    ri = group.index(r)
    if ri == 0:
        raise DomainError("the frequency must be nonzero")
    size = abs(coeffs[ri])
    if c is None:
        c = size / alpha
    if c <= 0 or size < c * alpha - RTOL:
        raise DomainError(f"hypothesis |1_A^(r)| >= c alpha fails: {size:.6g} < "
                          f"{c} * {alpha:.6g}")

    levels = group.phase_numerators(r)  # L = p, so these are r.x * p
    in_a = np.zeros(group.order, dtype=bool)
    in_a[idx] = True
    best_level, best_density = 0, -1.0
    for j in range(p):
        coset = levels == j
        d = np.count_nonzero(in_a & coset) / np.count_nonzero(coset)
        if d > best_density:
            best_level, best_density = j, d
    rep = group.element(int(np.nonzero(levels == best_level)[0][0]))
    result = CosetIncrement(r, best_level, rep, alpha, float(c), best_density)
    logger.debug("coset increment: %s", result.to_json())
    return result


@dataclass
class ProgressionIncrement:
    start: int
    step: int
    length: int
    beta: float
    c: float
    density: float
    N: int

    @property
    def promised_density(self) -> float:
        return self.beta * (1 + self.c / 4)

    @property
    def promised_length(self) -> float:
        return self.c * math.sqrt(self.N) / 60

    @property
    def certified(self) -> bool:
        return (self.density >= self.promised_density - RTOL
                and self.length >= self.promised_length)

    def elements(self) -> List[int]:
        return [self.start + k * self.step for k in range(self.length)]

    def to_json(self) -> dict:
        return {"start": self.start, "step": self.step, "length": self.length,
                "beta": self.beta, "c": self.c, "density": self.density,
                "promised_density": self.promised_density,
                "promised_length": self.promised_length, "certified": self.certified}


def _torus_norm(num: int, den: int) -> float:
    v = num % den
    return min(v, den - v) / den


def dirichlet_step(r: int, modulus: int, Q: int) -> int:
    """Smallest 1 <= d <= Q minimising ||r d / modulus||_T."""
    return min(range(1, Q + 1), key=lambda d: (_torus_norm(r * d, modulus), d))


def progression_partition(N: int, r: int, modulus: int, eps: float) -> List[Tuple[int, int, int]]:
    """Split [1, N] into progressions (start, step, length) along which r x / modulus varies
    by at most eps, each of length at least about eps sqrt(N) / 2."""
    Q = max(1, math.isqrt(N))
    d = dirichlet_step(r, modulus, Q)
    drift = _torus_norm(r * d, modulus)
    block = N if drift == 0 else max(1, int(eps / drift))
    parts = []
    for start in range(1, min(d, N) + 1):
        count = (N - start) // d + 1
        pieces = max(1, math.ceil(count / block))
        base, extra = divmod(count, pieces)
        offset = start
        for k in range(pieces):
            length = base + (1 if k < extra else 0)
            parts.append((offset, d, length))
            offset += length * d
    return parts


def density_increment_zn(B: Iterable[int], N: int, r: int, c: Optional[float] = None,
                         modulus: Optional[int] = None) -> ProgressionIncrement:
    """A progression P inside [1, N] with |B n P| / |P| >= beta (1 + c/4) and |P| >= c sqrt(N)/60.

    [1, N] is embedded in Z_modulus (default N) where |1_B^(r)| >= c beta must hold.
    """
    modulus = modulus or N
    if modulus < N:
        raise DomainError(f"modulus {modulus} cannot embed [1, {N}]")
    B = sorted({int(b) for b in B})
    if not B or B[0] < 1 or B[-1] > N:
        raise DomainError(f"B must be a non-empty subset of [1, {N}]")
    if r % modulus == 0:
        raise DomainError("the frequency must be nonzero")
    beta = len(B) / N
    coeff = abs(np.exp(-2j * np.pi * r * np.array(B) / modulus).sum()) / modulus
    if c is None:
        c = coeff / beta
    if c <= 0 or coeff < c * beta - RTOL:
        raise DomainError(f"hypothesis |1_B^(r)| >= c beta fails: {coeff:.6g} < {c} * {beta:.6g}")

    members = np.zeros(N + 1, dtype=bool)
    members[B] = True
    min_length = c * math.sqrt(N) / 60
    best = None
    for start, step, length in progression_partition(N, r, modulus, c / (4 * math.pi)):
        if length < min_length:
            continue
        hits = int(np.count_nonzero(members[start:start + step * length:step]))
        density = hits / length
        if best is None or (density, length) > (best.density, best.length):
            best = ProgressionIncrement(start, step, length, beta, float(c), density, N)
    if best is None:
        raise DomainError(f"no progression of length >= {min_length:.2f} in the partition")
    if not best.certified:
        logger.warning("progression increment below the promised constants: %s", best.to_json())
    return best
