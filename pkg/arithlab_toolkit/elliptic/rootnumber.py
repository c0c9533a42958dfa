"""Global root number as a product of local factors over infinity and the bad primes."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Union

from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.exactnum.ntheory import legendre_symbol
from arithlab_toolkit.elliptic.curve import WeierstrassCurve, vp
from arithlab_toolkit.elliptic.reduction import (ADDITIVE, NONSPLIT, SPLIT, reduce_and_count,
                                                 reduction_model)

logger = logging.getLogger(__name__)

Place = Union[int, str]
UNDETERMINED = "undetermined"


@dataclass
class LocalRootNumber:
    place: Place
    value: Optional[int]
    rule: str

    def to_json(self) -> dict:
        return {"place": self.place, "value": self.value, "rule": self.rule}


@dataclass
class RootNumberReport:
    local: Dict[Place, LocalRootNumber] = field(default_factory=dict)

    @property
    def undetermined(self) -> list:
        return [p for p, w in self.local.items() if w.value is None]

    @property
    def value(self) -> Optional[int]:
        """The global root number, or ``None`` when some local factor is undetermined."""
        if self.undetermined:
            return None
        return math.prod(w.value for w in self.local.values())

    def to_json(self) -> dict:
        return {"W": self.value, "undetermined": [str(p) for p in self.undetermined],
                "local": {str(p): w.to_json() for p, w in self.local.items()}}


def _potentially_good_sign(p: int, e: int) -> int:
    if e in (2, 6):
        return legendre_symbol(-1, p)
    if e == 3:
        return legendre_symbol(-3, p)
    if e == 4:
        return legendre_symbol(-2, p)
    return 1


def local_root_number(curve: WeierstrassCurve, p: int) -> LocalRootNumber:
    """W_p for a bad prime p; cases at 2 and 3 outside the classical rules are undetermined."""
    red = reduce_and_count(curve, p)
    if red.kind == SPLIT:
        return LocalRootNumber(p, -1, "multiplicative split")
    if red.kind == NONSPLIT:
        return LocalRootNumber(p, 1, "multiplicative non-split")
    if red.kind != ADDITIVE:
        raise DomainError(f"{p} is a prime of good reduction")
    model = reduction_model(curve, p)
    if vp(p, model.j_invariant) < 0:
        if p == 2:
            return LocalRootNumber(p, None, UNDETERMINED)
        return LocalRootNumber(p, legendre_symbol(-1, p), "potentially multiplicative")
    if p < 5:
        return LocalRootNumber(p, None, UNDETERMINED)
    e = 12 // math.gcd(int(vp(p, model.discriminant)), 12)
    return LocalRootNumber(p, _potentially_good_sign(p, e), f"potentially good, e={e}")


def local_root_numbers(curve: WeierstrassCurve,
                       overrides: Optional[Mapping[int, int]] = None) -> RootNumberReport:
    """Per-place root numbers; ``overrides`` supplies W_p at places the rules leave open."""
    overrides = dict(overrides or {})
    for p, w in overrides.items():
        if w not in (1, -1):
            raise DomainError(f"override at {p} must be +1 or -1, got {w}")
    report = RootNumberReport()
    report.local["inf"] = LocalRootNumber("inf", -1, "archimedean")
    model, _ = curve.integral_model()
    for p in model.bad_primes():
        if p >= 5 and vp(p, reduction_model(curve, p).discriminant) == 0:
            continue
        if p in overrides:
            report.local[p] = LocalRootNumber(p, overrides[p], "override")
        else:
            report.local[p] = local_root_number(curve, p)
    for p in report.undetermined:
        logger.info("root number of %s undetermined at %s", curve, p)
    return report


def root_number(curve: WeierstrassCurve,
                overrides: Optional[Mapping[int, int]] = None) -> RootNumberReport:
    return local_root_numbers(curve, overrides)
