"""Kakeya sets in F_p^n: the square-shift construction and an exhaustive direction check."""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Set, Tuple

import numpy as np

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import is_prime

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]


def _require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise DomainError(f"Kakeya constructions need an odd prime, got {p}")


def squares_mod(p: int) -> Set[int]:
    """Squares of F_p including 0."""
    return {x * x % p for x in range(p)}


def kakeya_construct(p: int, n: int = 2) -> Set[Point]:
    """{(x_1, ..., x_{n-1}, t) : every x_i + t^2 is a square or 0}, together with a Kakeya set
    of the hyperplane t = 0 (a full line when n = 2)."""
    _require_odd_prime(p)
    if n < 2:
        raise DomainError(f"dimension must be at least 2, got {n}")
    sq = squares_mod(p)
    S: Set[Point] = set()
    for t in range(p):
        allowed = [x for x in range(p) if (x + t * t) % p in sq]
        S.update(xs + (t,) for xs in itertools.product(allowed, repeat=n - 1))
    if n == 2:
        base: Set[Point] = {(x,) for x in range(p)}
    else:
        base = kakeya_construct(p, n - 1)
    S.update(y + (0,) for y in base)
    return S


def directions(p: int, n: int) -> List[Point]:
    """Projective points of F_p^n, first nonzero coordinate equal to 1."""
    out = []
    for k in range(n):
        for tail in itertools.product(range(p), repeat=n - k - 1):
            out.append((0,) * k + (1,) + tail)
    return out


@dataclass
class KakeyaVerdict:
    p: int
    n: int
    size: int
    is_kakeya: bool
    missing_direction: Optional[Point] = None

    @property
    def lower_bound(self) -> int:
        return dvir_bound(self.p, self.n)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "size": self.size, "is_kakeya": self.is_kakeya,
                "missing_direction": self.missing_direction,
                "dvir_bound": self.lower_bound}


def kakeya_verify(S: Iterable[Point], p: int, n: Optional[int] = None) -> KakeyaVerdict:
    """Checks that S contains a full line in each of the (p^n - 1)/(p - 1) directions."""
    if not is_prime(p):
        raise DomainError(f"Kakeya verification over F_p needs p prime, got {p}")
    pts = np.array(sorted({tuple(int(c) % p for c in x) for x in S}), dtype=np.int64)
    if n is None:
        n = pts.shape[1] if len(pts) else 2
    if len(pts) == 0:
        return KakeyaVerdict(p, n, 0, False, directions(p, n)[0])
    if pts.shape[1] != n:
        raise DomainError(f"points have dimension {pts.shape[1]}, expected {n}")
    weights = p ** np.arange(n, dtype=np.int64)
    for v in directions(p, n):
        k = next(i for i, c in enumerate(v) if c)
        # project along v onto the hyperplane x_k = 0; a full line has p points per key
        keys = ((pts - np.outer(pts[:, k], v)) % p) @ weights
        if np.bincount(keys).max() < p:
            verdict = KakeyaVerdict(p, n, len(pts), False, v)
            logger.debug("no full line in direction %s", v)
            return verdict
    return KakeyaVerdict(p, n, len(pts), True)


def dvir_bound(p: int, n: int) -> int:
    """C(p + n - 1, n): every Kakeya set in F_p^n has at least this many points."""
    return math.comb(p + n - 1, n)


def kakeya_report(p: int, n: int = 2) -> KakeyaVerdict:
    """Construct, verify and check the size window: p(p+1)/2 <= |S| <= p(p+3)/2 for n = 2,
    |S| >= C(p+n-1, n) always."""
    S = kakeya_construct(p, n)
    verdict = kakeya_verify(S, p, n)
    if not verdict.is_kakeya:
        raise ConsistencyError(f"construction misses direction {verdict.missing_direction}")
    if verdict.size < dvir_bound(p, n):
        raise ConsistencyError(f"|S| = {verdict.size} below the lower bound {dvir_bound(p, n)}")
    if n == 2 and not p * (p + 1) // 2 <= verdict.size <= p * (p + 3) // 2:
        raise ConsistencyError(f"|S| = {verdict.size} outside [p(p+1)/2, p(p+3)/2]")
    return verdict
