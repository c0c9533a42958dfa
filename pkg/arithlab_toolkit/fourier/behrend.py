"""Behrend's sphere construction of large 3-AP-free subsets of [N]."""

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BehrendParameters:
    m: int
    d: int
    k: int
    size: int

    def to_json(self) -> dict:
        return {"m": self.m, "d": self.d, "k": self.k, "size": self.size}


def _digit_bound(m: int) -> int:
    # digits up to (m - 1) // 2 add without carries in radix m
    return (m - 1) // 2


def _fits(m: int, d: int, N: int) -> bool:
    h = _digit_bound(m)
    return 1 + h * (m ** d - 1) // (m - 1) <= N


def _layer_sizes(m: int, d: int, budget: int) -> Counter:
    h = _digit_bound(m)
    if (h + 1) ** d > budget:
        raise BudgetExceeded(f"Behrend layer count over {(h + 1) ** d} digit vectors",
                             bound=budget, key=key_for("enum_budget"))
    digits = np.arange(h + 1) ** 2
    norms = np.zeros(1, dtype=np.int64)
    for _ in range(d):
        norms = (norms[:, None] + digits[None, :]).reshape(-1)
    return Counter(norms.tolist())


def behrend_parameters(N: int, budget: Optional[int] = None) -> BehrendParameters:
    """Exhaustive search over radix m and dimension d for the largest sphere layer in [N]."""
    if N < 10:
        raise DomainError(f"Behrend construction needs N >= 10, got {N}")
    budget = budget or get_config().enum_budget
    best = None
    # one-dimensional layers are singletons
    m = 2
    while _fits(m + 1, 2, N):
        m += 1
        d = 2
        while _fits(m, d, N):
            layers = _layer_sizes(m, d, budget)
            k, size = max(layers.items(), key=lambda kv: (kv[1], -kv[0]))
            candidate = BehrendParameters(m, d, k, size)
            if best is None or size > best.size:
                best = candidate
            d += 1
    logger.debug("Behrend parameters for N=%d: %s", N, best)
    return best


def behrend_layer(m: int, d: int, k: int) -> List[int]:
    """1 + sum x_i m^i over digit vectors with 0 <= x_i <= (m-1)//2 and sum x_i^2 = k."""
    h = _digit_bound(m)
    out = []
    for vec in itertools.product(range(h + 1), repeat=d):
        if sum(x * x for x in vec) == k:
            out.append(1 + sum(x * m ** i for i, x in enumerate(vec)))
    return sorted(out)


def is_ap3_free(A: Iterable[int]) -> bool:
    """No x < z in A with (x + z) / 2 in A."""
    elems = sorted(set(A))
    members = set(elems)
    for i, x in enumerate(elems):
        for z in elems[i + 1:]:
            if (x + z) % 2 == 0 and (x + z) // 2 in members:
                return False
    return True


def behrend_lower_bound(N: int) -> float:
    """N exp(-2 sqrt(2 log 2 log N)), the usual explicit shape of the Behrend bound."""
    return N * math.exp(-2 * math.sqrt(2 * math.log(2) * math.log(N)))


@dataclass
class BehrendSet:
    N: int
    parameters: BehrendParameters
    elements: List[int]

    @property
    def density(self) -> float:
        return len(self.elements) / self.N

    def to_json(self) -> dict:
        return {"N": self.N, **self.parameters.to_json(), "elements": self.elements,
                "density": self.density, "lower_bound_form": behrend_lower_bound(self.N)}


def behrend_set(N: int, m: Optional[int] = None, d: Optional[int] = None) -> BehrendSet:
    """A 3-AP-free subset of [1, N]; (m, d) default to the best layer found by search."""
    if N < 10:
        raise DomainError(f"Behrend construction needs N >= 10, got {N}")
    if m is None or d is None:
        params = behrend_parameters(N)
    else:
        if m < 3 or d < 1 or not _fits(m, d, N):
            raise DomainError(f"radix {m} and dimension {d} do not fit inside [1, {N}]")
        k, size = max(_layer_sizes(m, d, get_config().enum_budget).items(),
                      key=lambda kv: (kv[1], -kv[0]))
        params = BehrendParameters(m, d, k, size)
    elements = behrend_layer(params.m, params.d, params.k)
    if not is_ap3_free(elements):
        raise ConsistencyError(f"Behrend layer {params} contains a 3-term progression")
    if elements and elements[-1] > N:
        raise ConsistencyError(f"Behrend layer {params} leaves [1, {N}]")
    return BehrendSet(N, params, elements)
