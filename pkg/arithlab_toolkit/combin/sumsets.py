"""Exact sumsets, energies and the classical sumset inequalities.

Sets live in an ambient: the integers or rationals (``modulus=None``), Z_N, or any finite
group exposing ``mul`` and ``inv`` wrapped in ``GroupAmbient`` (products written additively).
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, List, Optional, Set, Tuple

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import is_prime

logger = logging.getLogger(__name__)


class Ambient:
    """Additive ambient: Z or Q when ``modulus`` is None, Z_N otherwise."""

    def __init__(self, modulus: Optional[int] = None):
        if modulus is not None and modulus < 1:
            raise DomainError(f"modulus must be positive, got {modulus}")
        self.modulus = modulus

    def __repr__(self) -> str:
        return "Z" if self.modulus is None else f"Z{self.modulus}"

    def reduce(self, a):
        return a if self.modulus is None else a % self.modulus

    def op(self, a, b):
        return self.reduce(a + b)

    def inv(self, a):
        return self.reduce(-a)

    def mul(self, a, b):
        return self.reduce(a * b)

    def normalize(self, A: Iterable) -> Set:
        return {self.reduce(a) for a in A}


class GroupAmbient:
    """A finite group used as an ambient: ``op`` is the group law."""

    def __init__(self, group: Any):
        self.group = group

    def __repr__(self) -> str:
        return repr(self.group)

    def op(self, a, b):
        return self.group.mul(a, b)

    def inv(self, a):
        return self.group.inv(a)

    def normalize(self, A: Iterable) -> Set:
        return set(A)


INTEGERS = Ambient()


def sumset(A: Iterable, B: Iterable, ambient=INTEGERS) -> Set:
    """A + B (A * B in a group ambient)."""
    B = list(ambient.normalize(B))
    return {ambient.op(a, b) for a in ambient.normalize(A) for b in B}


def difference_set(A: Iterable, B: Iterable, ambient=INTEGERS) -> Set:
    """A - B (A * B^-1 in a group ambient)."""
    return sumset(A, [ambient.inv(b) for b in ambient.normalize(B)], ambient)


def productset(A: Iterable, B: Iterable, ambient: Ambient = INTEGERS) -> Set:
    B = list(ambient.normalize(B))
    return {ambient.mul(a, b) for a in ambient.normalize(A) for b in B}


def restricted_sumset(A: Iterable, B: Iterable, ambient: Ambient = INTEGERS) -> Set:
    """{a + b : a in A, b in B, a != b}."""
    B = list(ambient.normalize(B))
    return {ambient.op(a, b) for a in ambient.normalize(A) for b in B if a != b}


def iterated_sumset(B: Iterable, k: int, m: int, ambient=INTEGERS) -> Set:
    """kB - mB (B^k (B^-1)^m in a group ambient)."""
    if k < 0 or m < 0 or k + m == 0:
        raise DomainError(f"kB - mB needs k, m >= 0 not both zero, got k={k}, m={m}")
    B = ambient.normalize(B)
    neg = {ambient.inv(b) for b in B}
    out = None
    for part in [B] * k + [neg] * m:
        out = set(part) if out is None else sumset(out, part, ambient)
    return out


def cauchy_davenport(A: Iterable[int], B: Iterable[int], p: int) -> Tuple[int, int]:
    """(|A + B|, min(p, |A| + |B| - 1)) in Z_p, asserting the first is at least the second."""
    if not is_prime(p):
        raise DomainError(f"Cauchy-Davenport needs a prime modulus, got {p}")
    amb = Ambient(p)
    A, B = amb.normalize(A), amb.normalize(B)
    if not A or not B:
        raise DomainError("Cauchy-Davenport needs non-empty sets")
    size, bound = len(sumset(A, B, amb)), min(p, len(A) + len(B) - 1)
    if size < bound:
        raise ConsistencyError(f"|A + B| = {size} < {bound} in Z_{p}")
    return size, bound


def restricted_sumset_bound(A: Iterable[int], B: Iterable[int], p: int) -> Tuple[int, int]:
    """(|A +^ B|, min(|A| + |B| - 3, p)), asserted in Z_p."""
    if not is_prime(p):
        raise DomainError(f"restricted sumsets are bounded over a prime field, got {p}")
    amb = Ambient(p)
    A, B = amb.normalize(A), amb.normalize(B)
    size, bound = len(restricted_sumset(A, B, amb)), min(len(A) + len(B) - 3, p)
    if size < bound:
        raise ConsistencyError(f"|A +^ B| = {size} < {bound} in Z_{p}")
    return size, bound


def _representation_counts(A: Iterable, combine: Callable) -> Counter:
    A = list(A)
    return Counter(combine(a, b) for a in A for b in A)


def energy_additive(A: Iterable, ambient: Ambient = INTEGERS) -> int:
    """#{(a, b, c, d) in A^4 : a + b = c + d}."""
    return sum(r * r for r in _representation_counts(ambient.normalize(A), ambient.op).values())


def energy_multiplicative(A: Iterable, ambient: Ambient = INTEGERS) -> int:
    """#{(a, b, c, d) in A^4 : a d = b c}, i.e. sum over products of r(s)^2."""
    return sum(r * r for r in _representation_counts(ambient.normalize(A), ambient.mul).values())


@dataclass
class EnergyReport:
    size: int
    energy: int
    set_size: int

    @property
    def lower_bound(self) -> Fraction:
        return Fraction(self.size ** 4, self.set_size)

    def to_json(self) -> dict:
        return {"|A|": self.size, "E": self.energy, "|A.A| or |A+A|": self.set_size,
                "|A|^4 / |A.A|": float(self.lower_bound)}


def energy_report(A: Iterable, multiplicative: bool = True,
                  ambient: Ambient = INTEGERS) -> EnergyReport:
    """Energy together with the Cauchy-Schwarz bound E >= |A|^4 / |A.A| (or |A+A|)."""
    A = ambient.normalize(A)
    if multiplicative:
        report = EnergyReport(len(A), energy_multiplicative(A, ambient),
                              len(productset(A, A, ambient)))
    else:
        report = EnergyReport(len(A), energy_additive(A, ambient), len(sumset(A, A, ambient)))
    if report.energy < report.lower_bound:
        raise ConsistencyError(f"energy below |A|^4 / |AA|: {report.to_json()}")
    return report


@dataclass
class InequalityCheck:
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "margin": self.margin}


def check_pluennecke(A: Iterable, B: Iterable, k: int, m: int, ambient=INTEGERS) -> InequalityCheck:
    """|kB - mB| <= K^(k+m) |A| with K = |A + B| / |A|."""
    A, B = ambient.normalize(A), ambient.normalize(B)
    if not A or not B:
        raise DomainError("Pluennecke needs non-empty sets")
    K = Fraction(len(sumset(A, B, ambient)), len(A))
    check = InequalityCheck(len(iterated_sumset(B, k, m, ambient)),
                            float(K ** (k + m) * len(A)))
    if check.margin < 0:
        raise ConsistencyError(f"Pluennecke fails: {check.to_json()}")
    return check


def check_ruzsa_triangle(A: Iterable, B: Iterable, C: Iterable,
                         ambient=INTEGERS) -> InequalityCheck:
    """|A - C| |B| <= |A - B| |B - C|, or |A C^-1| |B| <= |A B^-1| |B C^-1| in a group."""
    A, B, C = ambient.normalize(A), ambient.normalize(B), ambient.normalize(C)
    lhs = len(difference_set(A, C, ambient)) * len(B)
    rhs = len(difference_set(A, B, ambient)) * len(difference_set(B, C, ambient))
    check = InequalityCheck(lhs, rhs)
    if check.margin < 0:
        raise ConsistencyError(f"Ruzsa triangle inequality fails: {check.to_json()}")
    return check


def ruzsa_covering(A: Iterable, B: Iterable, ambient=INTEGERS) -> List:
    """Greedy maximal X in B with disjoint translates x + A; then B lies in A - A + X and
    |X| <= |A + B| / |A|. Both facts are checked."""
    A, B = ambient.normalize(A), sorted(ambient.normalize(B), key=repr)
    if not A:
        raise DomainError("covering needs a non-empty A")
    X: List = []
    covered: Set = set()
    for b in B:
        translate = {ambient.op(b, a) for a in A}
        if covered.isdisjoint(translate):
            X.append(b)
            covered |= translate
    K = Fraction(len(sumset(B, A, ambient)), len(A))
    if len(X) > K:
        raise ConsistencyError(f"covering uses {len(X)} translates, more than K = {K}")
    if not set(B) <= sumset(X, difference_set(A, A, ambient), ambient):
        raise ConsistencyError("B is not covered by X + A - A")
    return X


def _xor_basis(vectors: Iterable[int]) -> List[int]:
    basis: List[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return basis


@dataclass
class SmallDoublingReport:
    size: int
    doubling: Fraction
    span_size: int

    @property
    def in_regime(self) -> bool:
        return self.doubling < Fraction(3, 2)

    def to_json(self) -> dict:
        return {"|A|": self.size, "|A+A|/|A|": float(self.doubling),
                "|coset|": self.span_size, "small_doubling": self.in_regime}


def small_doubling_f2n(A: Iterable[int]) -> SmallDoublingReport:
    """For A in F_2^n (ints as bit vectors): if |A + A| < 3|A|/2 then the affine span of A has
    size at most 3|A|/2."""
    A = sorted(set(A))
    if not A:
        raise DomainError("small doubling needs a non-empty set")
    sums = {a ^ b for a in A for b in A}
    a0 = A[0]
    span = 1 << len(_xor_basis(a ^ a0 for a in A))
    report = SmallDoublingReport(len(A), Fraction(len(sums), len(A)), span)
    if report.in_regime and 2 * span > 3 * len(A):
        raise ConsistencyError(f"small doubling without a small coset: {report.to_json()}")
    return report


def sum_product_measurement(A: Iterable, theta: float = 4 / 3) -> dict:
    """max(|A+A|, |A.A|) / |A|^theta, measured only."""
    A = {Fraction(a) for a in A}
    if not A:
        raise DomainError("sum-product needs a non-empty set")
    plus, times = len(sumset(A, A)), len(productset(A, A))
    return {"|A|": len(A), "|A+A|": plus, "|A.A|": times, "theta": theta,
            "ratio": max(plus, times) / len(A) ** theta}
