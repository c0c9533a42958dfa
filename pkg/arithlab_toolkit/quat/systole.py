"""Trace floor for congruence subgroups of the norm-one group of the algebra (2, 3)."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import is_prime

logger = logging.getLogger(__name__)


def systole_length_bound(x0: int) -> float:
    """Translation length 2 arcosh |x0| of a hyperbolic element with half-trace x0."""
    if abs(x0) < 1:
        raise DomainError(f"|x0| must be >= 1, got {x0}")
    return 2 * math.acosh(abs(x0))


@dataclass
class SystoleReport:
    p: int
    search_bound: int
    min_abs_trace_half: Optional[int]
    witness: Optional[Tuple[int, int, int, int]]
    floor: int
    solutions_checked: int

    @property
    def length_bound(self) -> float:
        """2 arcosh(p^2 - 1): lower bound on the translation length of a nontrivial element."""
        return systole_length_bound(max(self.floor, 1))

    @property
    def log_bound(self) -> float:
        """2 log(2p^2 - 3), a lower bound for 2 arcosh(p^2 - 1)."""
        return 2 * math.log(2 * self.p ** 2 - 3)

    @property
    def witness_length(self) -> Optional[float]:
        if self.min_abs_trace_half is None:
            return None
        return systole_length_bound(self.min_abs_trace_half)

    def to_json(self) -> dict:
        return {"p": self.p, "bound": self.search_bound,
                "min_abs_x0": self.min_abs_trace_half, "witness": self.witness,
                "floor": self.floor, "length_bound": self.length_bound,
                "log_bound": self.log_bound,
                "witness_length": self.witness_length, "checked": self.solutions_checked}


def congruence_trace_floor(p: int, bound: int) -> SystoleReport:
    """Search norm-one x with p | x1, x2, x3 and |x_i| <= bound, x != +-1.

    Every solution must have |x0| >= p^2 - 1. The reported witness has the smallest |x0|,
    then the smallest max |x_i|, with nonnegative coordinates.
    """
    if not is_prime(p) or p in (2, 3):
        raise DomainError(f"p must be a prime other than 2 and 3, got {p}")
    if bound < 1:
        raise DomainError("search bound must be positive")
    floor = p * p - 1
    m = bound // p
    best = None
    checked = 0
    for a in range(0, m + 1):
        x1 = p * a
        for b in range(0, m + 1):
            x2 = p * b
            base = 1 + 2 * x1 * x1 + 3 * x2 * x2
            for c in range(0, m + 1):
                if a == b == c == 0:
                    continue
                x3 = p * c
                sq = base - 6 * x3 * x3
                if sq < 0:
                    break
                x0 = math.isqrt(sq)
                if x0 * x0 != sq or x0 > bound:
                    continue
                checked += 1
                if x0 < floor:
                    raise ConsistencyError(f"norm-one element {(x0, x1, x2, x3)} has "
                                           f"|x0| < {floor}")
                key = (x0, max(x1, x2, x3), (-x1, -x2, -x3))
                if best is None or key < best[0]:
                    best = (key, (x0, x1, x2, x3))
    witness = best[1] if best else None
    logger.info("p=%d bound=%d: %d solutions, minimum |x0| %s", p, bound, checked,
                witness[0] if witness else None)
    return SystoleReport(p, bound, witness[0] if witness else None, witness, floor, checked)
