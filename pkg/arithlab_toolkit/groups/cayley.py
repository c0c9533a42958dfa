"""Cayley graphs, growth of product sets and the spectral side of SL_2(F_p)."""

import concurrent.futures
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, List, Optional, Set, Tuple

import numpy as np

from arithlab_toolkit.combin.sumsets import GroupAmbient, check_ruzsa_triangle
from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError
from arithlab_toolkit.groups.finite import FiniteGroup, SL2Group, counter_rng

logger = logging.getLogger(__name__)

CLUSTER_TOL = 1e-6


@dataclass
class CayleyGraph:
    """Gamma(G, A) with A replaced by A u A^-1; g is joined to a g for a in A."""

    group: FiniteGroup
    generators: List = field(default_factory=list)

    def __post_init__(self):
        closed = self.group.symmetric_closure(self.generators)
        if not closed:
            raise DomainError("a Cayley graph needs a non-empty generating set")
        self.generators = sorted(closed)

    @property
    def degree(self) -> int:
        return len(self.generators)

    def neighbors(self, g) -> List:
        return [self.group.mul(a, g) for a in self.generators]

    def is_connected(self) -> bool:
        return self.group.generates(self.generators)

    def adjacency_operator(self) -> np.ndarray:
        """(Af)(g) = (1/|A|) sum_a f(a g), as a dense |G| x |G| matrix."""
        n = self.group.order
        limit = get_config().dense_spectrum_max
        if n > limit:
            raise BudgetExceeded(f"dense spectrum of a {n}-vertex Cayley graph", bound=limit,
                                 key=key_for("dense_spectrum_max"))
        table = self.group.table()
        gens = table.indices(self.generators)
        M = np.zeros((n, n))
        rows = np.repeat(np.arange(n), len(gens))
        cols = table.mul[gens][:, np.arange(n)].T.reshape(-1)
        np.add.at(M, (rows, cols), 1.0 / len(gens))
        return M


def cayley_diameter(group: FiniteGroup, A: Iterable) -> int:
    """Eccentricity of the identity, which is the diameter by vertex transitivity."""
    graph = CayleyGraph(group, list(A))
    budget = get_config().bfs_budget
    if group.order > budget:
        raise BudgetExceeded(f"BFS over {group.order} elements", bound=budget,
                             key=key_for("bfs_budget"))
    seen = {group.identity}
    frontier = [group.identity]
    radius = 0
    while True:
        nxt = []
        for g in frontier:
            for h in graph.neighbors(g):
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        if not nxt:
            break
        frontier = nxt
        radius += 1
    if len(seen) != group.order:
        raise DomainError(f"{graph.generators} generates only {len(seen)} of {group.order} "
                          f"elements of {group}")
    ball = graph.degree + (group.identity not in graph.generators)
    if ball > 1 and radius < math.log(group.order) / math.log(ball) - 1e-12:
        raise ConsistencyError(f"diameter {radius} below log|G| / log|A u A^-1 u e|")
    logger.debug("diam Gamma(%s, %d generators) = %d", group, graph.degree, radius)
    return radius


def product_set(group: FiniteGroup, A: Iterable, B: Iterable) -> Set:
    B = list(B)
    return {group.mul(a, b) for a in A for b in B}


@dataclass
class GrowthProfile:
    sizes: List[int]
    order: int

    @property
    def tripling_exponent(self) -> Optional[float]:
        """log|A^3| / log|A|."""
        if len(self.sizes) < 3 or self.sizes[0] < 2:
            return None
        return math.log(self.sizes[2]) / math.log(self.sizes[0])

    @property
    def covers(self) -> bool:
        return len(self.sizes) >= 3 and self.sizes[2] == self.order

    def to_json(self) -> dict:
        return {"sizes": self.sizes, "order": self.order,
                "tripling_exponent": self.tripling_exponent, "A^3 = G": self.covers}


def growth_profile(group: FiniteGroup, A: Iterable, kmax: int = 3) -> GrowthProfile:
    """|A|, |A^2|, ..., |A^kmax| by hashed products; measured, never asserted."""
    if kmax < 1:
        raise DomainError(f"kmax must be at least 1, got {kmax}")
    A = {group.canonical(a) for a in A}
    if not A:
        raise DomainError("growth of the empty set")
    budget = get_config().enum_budget
    sizes = [len(A)]
    cur = A
    for _ in range(kmax - 1):
        if len(cur) * len(A) > budget:
            raise BudgetExceeded(f"product set of {len(cur)} x {len(A)} elements", bound=budget,
                                 key=key_for("enum_budget"))
        cur = product_set(group, cur, A)
        sizes.append(len(cur))
    return GrowthProfile(sizes, group.order)


def tripling_check(group: FiniteGroup, A: Iterable, k: int):
    """|A^k| / |A| <= (|A^3| / |A|)^(k-2) for symmetric A, plus the Ruzsa triangle inequality
    on (A, A^-1, A) in the group."""
    if k < 3:
        raise DomainError(f"k must be at least 3, got {k}")
    A = group.symmetric_closure(A)
    sizes = growth_profile(group, A, k).sizes
    lhs = Fraction(sizes[k - 1], sizes[0])
    rhs = Fraction(sizes[2], sizes[0]) ** (k - 2)
    if lhs > rhs:
        raise ConsistencyError(f"|A^{k}|/|A| = {lhs} exceeds (|A^3|/|A|)^{k - 2} = {rhs}")
    check_ruzsa_triangle(A, {group.inv(a) for a in A}, A, GroupAmbient(group))
    return float(lhs), float(rhs)


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray = field(repr=False)
    clusters: List[Tuple[float, int]]
    trace_residual: float
    connected: bool
    bipartite: bool
    min_nontrivial_multiplicity: Optional[int]
    frobenius_bound: Optional[int]

    @property
    def frobenius_holds(self) -> Optional[bool]:
        if self.frobenius_bound is None or self.min_nontrivial_multiplicity is None:
            return None
        return self.min_nontrivial_multiplicity >= self.frobenius_bound

    def to_json(self) -> dict:
        return {"clusters": [{"eigenvalue": v, "multiplicity": m} for v, m in self.clusters],
                "trace_residual": self.trace_residual, "connected": self.connected,
                "bipartite": self.bipartite,
                "min_nontrivial_multiplicity": self.min_nontrivial_multiplicity,
                "frobenius_bound": self.frobenius_bound, "frobenius_holds": self.frobenius_holds}


def cluster_eigenvalues(values: np.ndarray, tol: float = CLUSTER_TOL) -> List[Tuple[float, int]]:
    """Groups sorted eigenvalues whose consecutive gaps are below ``tol``."""
    clusters: List[List[float]] = []
    for v in np.sort(values):
        if clusters and v - clusters[-1][-1] < tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return [(float(np.mean(c)), len(c)) for c in clusters]


def adjacency_spectrum(group: FiniteGroup, A: Iterable) -> SpectrumReport:
    """Spectrum of the normalized adjacency operator with multiplicities.

    On SL_2(F_p) every eigenvalue other than 1 has multiplicity at least (p - 1)/2, the least
    degree of a nontrivial representation; this is asserted when the group is SL_2 itself.
    """
    graph = CayleyGraph(group, list(A))
    M = graph.adjacency_operator()
    values = np.linalg.eigvalsh(M)
    clusters = cluster_eigenvalues(values)
    top = [m for v, m in clusters if abs(v - 1) < CLUSTER_TOL]
    ones = top[0] if top else 0
    bipartite = any(abs(v + 1) < CLUSTER_TOL for v, _ in clusters)
    # closed 2-walks: sum v_j^2 = |G| |A| / |A|^2
    residual = abs(float(np.sum(values ** 2)) - group.order / graph.degree)
    if residual > 1e-6 * group.order:
        raise ConsistencyError(f"trace identity fails by {residual}")
    nontrivial = [m for v, m in clusters if abs(v - 1) >= CLUSTER_TOL]
    bound = None
    if isinstance(group, SL2Group) and not group.projective and group.p > 2:
        bound = (group.p - 1) // 2
    report = SpectrumReport(values, clusters, residual, ones == 1, bipartite,
                            min(nontrivial) if nontrivial else None, bound)
    if ones == 1 and report.frobenius_holds is False:
        raise ConsistencyError(f"eigenvalue multiplicity below (p-1)/2 on {group}: "
                               f"{report.min_nontrivial_multiplicity}")
    return report


@dataclass
class NikolovPyberReport:
    p: int
    order: int
    threshold: int
    trials: int
    sizes: List[int]
    covered: List[bool]

    @property
    def all_covered(self) -> bool:
        return all(self.covered)

    def to_json(self) -> dict:
        return {"p": self.p, "|G|": self.order, "threshold": self.threshold,
                "trials": self.trials, "sizes": self.sizes, "A^3 = G": self.covered}


def nikolov_pyber_threshold(order: int) -> int:
    return math.ceil(2 * order ** (8 / 9))


def _np_trial(group: SL2Group, threshold: int, seed: int, trial: int) -> Tuple[int, bool]:
    table = group.table()
    rng = counter_rng(seed, trial)
    chosen = np.zeros(table.n, dtype=bool)
    for i in rng.permutation(table.n):
        if chosen.sum() >= threshold:
            break
        chosen[i] = chosen[table.inv[i]] = True
    A = np.flatnonzero(chosen).astype(np.int32)
    cube = table.power(A, 3)
    return len(A), len(cube) == table.n


def nikolov_pyber_check(p: int, trials: int = 5, seed: int = 0,
                        num_threads: Optional[int] = None) -> NikolovPyberReport:
    """Random symmetric A in SL_2(F_p) with |A| >= 2|G|^(8/9); A^3 must be all of G."""
    group = SL2Group(p)
    order = p * (p * p - 1)
    threshold = nikolov_pyber_threshold(order)
    if threshold >= order:
        raise DomainError(f"2|G|^(8/9) = {threshold} is not below |G| = {order} for p = {p}")
    group.table()
    num_threads = num_threads or get_config().num_threads
    results = [None] * trials
    with concurrent.futures.ThreadPoolExecutor(max_workers=num_threads) as executor:
        future_dict = {
            executor.submit(_np_trial, group, threshold, seed, t): t for t in range(trials)
        }
        for future in concurrent.futures.as_completed(future_dict):
            results[future_dict[future]] = future.result()
    report = NikolovPyberReport(p, order, threshold, trials, [r[0] for r in results],
                                [r[1] for r in results])
    if not report.all_covered:
        raise ConsistencyError(f"A^3 != G in SL_2(F_{p}): {report.to_json()}")
    return report


@dataclass
class OrbitStabilizerCheck:
    lhs: int
    rhs: Fraction
    orbit: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": float(self.rhs), "orbit": self.orbit,
                "holds": self.holds}


def orbit_stabilizer_check(group: FiniteGroup, act: Callable, A: Iterable,
                           x: Hashable) -> OrbitStabilizerCheck:
    """|A^-1 A n Stab(x)| >= |A| / |A x|."""
    A = {group.canonical(a) for a in A}
    if not A:
        raise DomainError("orbit-stabilizer needs a non-empty set")
    orbit = {act(a, x) for a in A}
    quotient = product_set(group, {group.inv(a) for a in A}, A)
    lhs = sum(1 for g in quotient if act(g, x) == x)
    check = OrbitStabilizerCheck(lhs, Fraction(len(A), len(orbit)), len(orbit))
    if not check.holds:
        raise ConsistencyError(f"orbit-stabilizer inequality fails: {check.to_json()}")
    return check


def conjugation_check(group: FiniteGroup, A: Iterable, g, l: int) -> OrbitStabilizerCheck:
    """For g in A^l: |A^-1 A n C(g)| >= |A| / |A^(l+1) A^-1 n Cl(g)|."""
    A = {group.canonical(a) for a in A}
    g = group.canonical(g)
    power = A
    for _ in range(l - 1):
        power = product_set(group, power, A)
    if g not in power:
        raise DomainError(f"{g} is not in A^{l}")
    conj = lambda a, y: group.mul(group.mul(a, y), group.inv(a))  # noqa: E731
    klass = {conj(h, g) for h in group.elements()}
    big = product_set(group, product_set(group, power, A), {group.inv(a) for a in A})
    centralizer_part = sum(1 for h in product_set(group, {group.inv(a) for a in A}, A)
                           if group.mul(h, g) == group.mul(g, h))
    denom = len(big & klass)
    check = OrbitStabilizerCheck(centralizer_part, Fraction(len(A), denom), denom)
    if not check.holds:
        raise ConsistencyError(f"centralizer bound fails: {check.to_json()}")
    return check


@dataclass
class BorelExample:
    p: int
    size: int
    square: int
    cube: int
    double_coset: int

    def to_json(self) -> dict:
        return {"p": self.p, "|A|": self.size, "|A^2|": self.square, "|A^3|": self.cube,
                "|HgH|": self.double_coset}


def helfgott_ex31_instance(p: int = 5) -> BorelExample:
    """A = H u {g}, H the upper triangular subgroup and g = (0 -1; 1 0): A^2 stays below
    3|A| while A^3 contains the double coset HgH."""
    group = SL2Group(p)
    H = group.borel()
    g = group.canonical((0, -1, 1, 0))
    A = set(H) | {g}
    square = product_set(group, A, A)
    cube = product_set(group, square, A)
    double_coset = product_set(group, product_set(group, H, [g]), H)
    if not double_coset <= cube:
        raise ConsistencyError("A^3 does not contain HgH")
    if len(square) >= 3 * len(A):
        raise ConsistencyError(f"|A^2| = {len(square)} is not below 3|A| = {3 * len(A)}")
    return BorelExample(p, len(A), len(square), len(cube), len(double_coset))
