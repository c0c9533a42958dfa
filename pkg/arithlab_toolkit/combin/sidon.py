"""Sidon and B_h sets: verification, algebraic constructions, exhaustive F_2(n), greedy
sequences."""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError
from arithlab_toolkit.exactnum.finite_field import FiniteField
from arithlab_toolkit.exactnum.ntheory import factorize, is_prime, primitive_root

logger = logging.getLogger(__name__)

F2_MAX = 40
CONSTRUCTION_KINDS = ("erdos_turan", "ruzsa", "bose_chowla")


@dataclass
class SidonCertificate:
    elements: List[int]
    h: int
    modulus: Optional[int]
    is_sidon: bool
    violation: Optional[Tuple] = None

    def to_json(self) -> dict:
        return {"elements": self.elements, "h": self.h, "modulus": self.modulus,
                "is_sidon": self.is_sidon,
                "violation": list(self.violation) if self.violation else None}


def sidon_verify(A: Iterable[int], h: int = 2, modulus: Optional[int] = None) -> SidonCertificate:
    """Exact B_h test in Z or Z_modulus.

    For h = 2 the nonzero ordered differences must be distinct; a repeat a - b = c - d is
    reported as the sum collision (a, d, c, b). For larger h the h-fold sums of multisets
    are compared directly and the violation is the pair of colliding multisets.
    """
    if h < 2:
        raise DomainError(f"B_h needs h >= 2, got {h}")
    if modulus is not None and modulus < 1:
        raise DomainError(f"modulus must be positive, got {modulus}")
    red = (lambda v: v % modulus) if modulus else (lambda v: v)
    elements = sorted({red(int(a)) for a in A})

    if h == 2:
        seen: Dict[int, Tuple[int, int]] = {}
        for a, b in itertools.permutations(elements, 2):
            d = red(a - b)
            if d in seen:
                c, e = seen[d]
                return SidonCertificate(elements, h, modulus, False, (a, e, c, b))
            seen[d] = (a, b)
        return SidonCertificate(elements, h, modulus, True)

    total = math.comb(len(elements) + h - 1, h)
    budget = get_config().enum_budget
    if total > budget:
        raise BudgetExceeded(f"B_{h} check over {total} multisets", bound=budget,
                             key=key_for("enum_budget"))
    sums: Dict[int, Tuple[int, ...]] = {}
    for combo in itertools.combinations_with_replacement(elements, h):
        s = red(sum(combo))
        if s in sums:
            return SidonCertificate(elements, h, modulus, False, (sums[s], combo))
        sums[s] = combo
    return SidonCertificate(elements, h, modulus, True)


def difference_triangle(A: Iterable[int]) -> List[List[int]]:
    """Rows of consecutive differences: row k holds a_{i+k} - a_i."""
    elements = sorted(set(A))
    return [[elements[i + k] - elements[i] for i in range(len(elements) - k)]
            for k in range(1, len(elements))]


@dataclass
class SidonConstruction:
    kind: str
    parameter: int
    h: int
    elements: List[int]
    modulus: Optional[int]
    ambient: str
    certificate: SidonCertificate = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {"kind": self.kind, "parameter": self.parameter, "h": self.h,
                "elements": self.elements, "size": len(self.elements),
                "ambient": self.ambient, "is_sidon": self.certificate.is_sidon}


def _erdos_turan(p: int) -> List[int]:
    return sorted((x * x) % p + 2 * x * p for x in range(p))


def _ruzsa(p: int, g: Optional[int]) -> List[int]:
    g = primitive_root(p) if g is None else g
    if g % p == 0 or any(pow(g, (p - 1) // r, p) == 1 for r in factorize(p - 1)):
        raise DomainError(f"{g} is not a primitive root mod {p}")
    m = p * (p - 1)
    return sorted((p * x - (p - 1) * pow(g, x, p)) % m for x in range(1, p))


def _prime_power(q: int) -> Tuple[int, int]:
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    factors = factorize(q)
    if len(factors) != 1:
        raise DomainError(f"{q} is not a prime power")
    (p, e), = factors.items()
    return p, e


def _bose_chowla(q: int, h: int, theta: Optional[Sequence[int]],
                 modulus: Optional[Sequence[int]]) -> List[int]:
    p, e = _prime_power(q)
    F = FiniteField(p, e * h, modulus)
    base = F.generator() if theta is None else F(tuple(theta))
    if not base.is_generator():
        raise DomainError(f"{base} does not generate F_{F.q}*")
    logs = {}
    cur = F.one
    for k in range(F.q - 1):
        logs[cur] = k
        cur = cur * base
    return sorted(logs[base + a] for a in F.subfield_elements(e))


def sidon_construct(kind: str, parameter: int, h: int = 2, g: Optional[int] = None,
                    theta: Optional[Sequence[int]] = None,
                    modulus: Optional[Sequence[int]] = None) -> SidonConstruction:
    """Builds one of the classical Sidon sets and verifies it in its ambient.

    erdos_turan(p): {(x^2 mod p) + 2xp : 0 <= x < p}, Sidon in [0, 2p^2].
    ruzsa(p): {px - (p-1)(g^x mod p) : 1 <= x < p}, Sidon in Z_{p(p-1)}.
    bose_chowla(q, h): {log_theta(theta + a) : a in F_q}, B_h in Z_{q^h - 1}.
    """
    if kind not in CONSTRUCTION_KINDS:
        raise DomainError(f"unknown construction {kind!r}; choose from {CONSTRUCTION_KINDS}")
    if kind != "bose_chowla":
        if not is_prime(parameter):
            raise DomainError(f"{kind} needs a prime, got {parameter}")
        if h != 2:
            raise DomainError(f"{kind} builds Sidon sets only (h = 2)")
    if kind == "erdos_turan":
        elements, mod, ambient = _erdos_turan(parameter), None, f"[0, {2 * parameter ** 2}]"
    elif kind == "ruzsa":
        mod = parameter * (parameter - 1)
        elements, ambient = _ruzsa(parameter, g), f"Z_{mod}"
    else:
        if h < 2:
            raise DomainError(f"B_h needs h >= 2, got {h}")
        mod = parameter ** h - 1
        elements, ambient = _bose_chowla(parameter, h, theta, modulus), f"Z_{mod}"

    cert = sidon_verify(elements, h, mod)
    if not cert.is_sidon or len(cert.elements) != len(elements):
        raise ConsistencyError(f"{kind}({parameter}) failed verification: {cert.to_json()}")
    expected = parameter - 1 if kind == "ruzsa" else parameter
    if len(elements) != expected:
        raise ConsistencyError(f"{kind}({parameter}) has {len(elements)} elements")
    logger.debug("%s(%d): %s in %s", kind, parameter, elements, ambient)
    return SidonConstruction(kind, parameter, h, elements, mod, ambient, cert)


@dataclass
class SidonBounds:
    n: int
    trivial: float
    lindstrom: float
    refined: float

    def to_json(self) -> dict:
        return {"n": self.n, "trivial": self.trivial, "lindstrom": self.lindstrom,
                "refined": self.refined}


def sidon_upper_bounds(n: int) -> SidonBounds:
    """F_2(n) < sqrt(2n) + 1/2, < n^(1/2) + n^(1/4) + 1 and, sharper, + 1/2."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    root, quarter = n ** 0.5, n ** 0.25
    return SidonBounds(n, math.sqrt(2 * n) + 0.5, root + quarter + 1, root + quarter + 0.5)


@dataclass
class F2Result:
    n: int
    value: int
    witness: List[int]
    table: Dict[int, int]
    nodes: int

    def to_json(self) -> dict:
        bounds = sidon_upper_bounds(self.n)
        return {"n": self.n, "F2": self.value, "witness": self.witness,
                "bounds": bounds.to_json(), "nodes": self.nodes}


class _Search:
    """Sidon sets of a given size in [1, m] containing both 1 and m."""

    def __init__(self, m: int, target: int, table: Dict[int, int], budget: int):
        self.m, self.target, self.table, self.budget = m, target, table, budget
        self.nodes = 0

    def run(self, nodes_before: int) -> Optional[List[int]]:
        self.nodes = nodes_before
        if self.target == 1:
            return [1] if self.m == 1 else None
        chosen = [1, self.m]
        return self._extend(chosen, 1, 1 << (self.m - 1))

    def _extend(self, chosen: List[int], last: int, diffs: int) -> Optional[List[int]]:
        if len(chosen) == self.target:
            return sorted(chosen)
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"F_2 search over [1, {self.m}]", bound=self.budget,
                                 key=key_for("enum_budget"))
        for x in range(last + 1, self.m):
            # x together with the still missing elements lies in [x, m]
            if self.target - len(chosen) + 1 > self.table[self.m - x + 1]:
                break
            new = 0
            ok = True
            for e in chosen:
                bit = 1 << abs(x - e)
                if (diffs | new) & bit:
                    ok = False
                    break
                new |= bit
            if ok:
                found = self._extend(chosen + [x], x, diffs | new)
                if found:
                    return found
        return None


def f2_exhaustive(n: int) -> F2Result:
    """Largest Sidon subset of [1, n], by branch and bound on the difference bitmask.

    F_2(m) exceeds F_2(m - 1) by at most one, and a larger set must contain m and,
    after translation, 1; so each step searches only sets containing both endpoints.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n > F2_MAX:
        raise DomainError(f"exhaustive F_2(n) is limited to n <= {F2_MAX}; "
                          "use sidon_upper_bounds beyond that")
    budget = get_config().enum_budget
    table = {0: 0, 1: 1}
    witness = [1]
    nodes = 0
    for m in range(2, n + 1):
        search = _Search(m, table[m - 1] + 1, table, budget)
        found = search.run(nodes)
        nodes = search.nodes
        if found:
            table[m], witness = len(found), found
        else:
            table[m] = table[m - 1]
    bounds = sidon_upper_bounds(n)
    if table[n] >= bounds.trivial:
        raise ConsistencyError(f"F_2({n}) = {table[n]} reaches the bound {bounds.trivial}")
    if not sidon_verify(witness).is_sidon:
        raise ConsistencyError(f"witness {witness} is not Sidon")
    return F2Result(n, table[n], witness, table, nodes)


def greedy_bh(h: int, count: int, start: int = 1) -> List[int]:
    """Greedy B_h sequence: each term is the least integer keeping all h-fold sums distinct."""
    if h < 2:
        raise DomainError(f"B_h needs h >= 2, got {h}")
    if count < 0:
        raise DomainError(f"count must be non-negative, got {count}")
    # sums[k] holds the k-fold sums of the terms chosen so far, all distinct
    sums = [{0}] + [set() for _ in range(h)]
    terms: List[int] = []
    x = start - 1
    while len(terms) < count:
        x += 1
        fresh = [j * x + s for j in range(1, h + 1) for s in sums[h - j]]
        if len(set(fresh)) != len(fresh) or not sums[h].isdisjoint(fresh):
            continue
        terms.append(x)
        sums = [{0}] + [set().union(*(
            {j * x + s for s in sums[k - j]} for j in range(k + 1))) for k in range(1, h + 1)]
    return terms


def greedy_mian_chowla(count: int) -> List[int]:
    """1, 2, 4, 8, 13, 21, 31, ..."""
    return greedy_bh(2, count)
