"""Point-line incidences with the Szemeredi-Trotter (rational plane) and Vinh (F_p^2) bounds."""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import is_prime

logger = logging.getLogger(__name__)

# (a, b, c) meaning a x + b y = c, scaled so that b = 1, or a = 1 when b = 0
Line = Tuple


def normalize_line(a, b, c, p: Optional[int] = None) -> Line:
    if p is not None:
        a, b, c = a % p, b % p, c % p
        if b:
            inv = pow(b, -1, p)
            return (a * inv % p, 1, c * inv % p)
        if not a:
            raise DomainError("degenerate line 0 = c")
        inv = pow(a, -1, p)
        return (1, 0, c * inv % p)
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if b:
        return (a / b, Fraction(1), c / b)
    if not a:
        raise DomainError("degenerate line 0 = c")
    return (Fraction(1), Fraction(0), c / a)


def line_through_slope(m, k, p: Optional[int] = None) -> Line:
    """y = m x + k."""
    return normalize_line(-m, 1, k, p)


def vertical_line(c, p: Optional[int] = None) -> Line:
    return normalize_line(1, 0, c, p)


@dataclass
class IncidenceInstance:
    points: List[tuple]
    lines: List[Line]
    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise DomainError(f"Vinh's bound is stated over a prime field, got {self.p}")
        mod = (lambda v: v % self.p) if self.p else Fraction
        self.points = sorted({(mod(x), mod(y)) for x, y in self.points})
        self.lines = sorted(set(self.lines))


def count_incidences(instance: IncidenceInstance) -> int:
    """#{(point, line) : point on line}, exact."""
    by_x = defaultdict(set)
    for x, y in instance.points:
        by_x[x].add(y)
    p = instance.p
    total = 0
    for a, b, c in instance.lines:
        if b == 0:
            total += len(by_x.get(c, ()))
            continue
        for x, ys in by_x.items():
            y = c - a * x
            if p is not None:
                y %= p
            total += y in ys
    return total


def szemeredi_trotter_bound(n_points: int, n_lines: int) -> float:
    return 4 * n_lines ** (2 / 3) * n_points ** (2 / 3) + 4 * n_points + n_lines


def vinh_bound(n_points: int, n_lines: int, p: int) -> float:
    return n_points * n_lines / p + (p * n_points * n_lines) ** 0.5


@dataclass
class IncidenceReport:
    count: int
    points: int
    lines: int
    bound: float
    bound_name: str

    def to_json(self) -> dict:
        return {"incidences": self.count, "points": self.points, "lines": self.lines,
                "bound": self.bound, "bound_name": self.bound_name}


def incidences(instance: IncidenceInstance) -> IncidenceReport:
    """Exact count, checked against Szemeredi-Trotter over Q or Vinh over F_p."""
    count = count_incidences(instance)
    P, L = len(instance.points), len(instance.lines)
    if instance.p is None:
        bound, name = szemeredi_trotter_bound(P, L), "szemeredi-trotter"
    else:
        bound, name = vinh_bound(P, L, instance.p), "vinh"
    report = IncidenceReport(count, P, L, bound, name)
    if count > bound * (1 + 1e-12):
        raise ConsistencyError(f"incidence bound violated: {report.to_json()}")
    return report


def all_lines_fp(p: int) -> List[Line]:
    """The p^2 non-vertical and p vertical lines of F_p^2."""
    lines = [line_through_slope(m, k, p) for m in range(p) for k in range(p)]
    return lines + [vertical_line(c, p) for c in range(p)]


def incidences_fp_full(p: int) -> IncidenceReport:
    """All of F_p^2 against all lines: p^3 + p^2 incidences."""
    pts = [(x, y) for x in range(p) for y in range(p)]
    report = incidences(IncidenceInstance(pts, all_lines_fp(p), p))
    if report.count != p ** 3 + p ** 2:
        raise ConsistencyError(f"full plane over F_{p} has {report.count} incidences")
    return report


def st_grid_instance(N: int) -> IncidenceInstance:
    """[N] x [2N^2] against y = a x + b for a in [N], b in [N^2]; every line meets N points."""
    if N < 1:
        raise DomainError(f"grid size must be positive, got {N}")
    pts = [(x, y) for x in range(1, N + 1) for y in range(1, 2 * N * N + 1)]
    lines = [line_through_slope(a, b) for a in range(1, N + 1) for b in range(1, N * N + 1)]
    return IncidenceInstance(pts, lines)

