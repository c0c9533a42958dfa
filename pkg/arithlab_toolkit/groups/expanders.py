"""Spectral criteria for property (T), random bipartite expanders and return probabilities."""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from tqdm import tqdm

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import is_prime
from arithlab_toolkit.groups.finite import FiniteGroup, counter_rng

logger = logging.getLogger(__name__)

EXACT_HPRIME_MAX = 18
EXACT_H_MAX = 10
WALK_MAX = 40
LINK_PRESETS = ("z-pm12", "fano", "k4")


def link_graph(S: Iterable, group: Optional[FiniteGroup] = None) -> nx.Graph:
    """L(S): vertices S, with s ~ s' whenever s^-1 s' lies in S. ``group=None`` means Z."""
    S = list(dict.fromkeys(S))
    if group is None:
        members = set(S)
        joined = lambda s, t: (t - s) in members  # noqa: E731
    else:
        members = {group.canonical(s) for s in S}
        joined = lambda s, t: group.mul(group.inv(s), t) in members  # noqa: E731
    graph = nx.Graph()
    graph.add_nodes_from(S)
    graph.add_edges_from((s, t) for s, t in itertools.combinations(S, 2) if joined(s, t))
    return graph


def projective_plane_incidence(q: int) -> nx.Graph:
    """Point-line incidence graph of PG(2, q) for q prime."""
    if not is_prime(q):
        raise DomainError(f"projective planes are built over prime fields here, got {q}")
    reps = [v for v in itertools.product(range(q), repeat=3)
            if any(v) and v[next(i for i, c in enumerate(v) if c)] == 1]
    graph = nx.Graph()
    graph.add_nodes_from((("P", v) for v in reps), bipartite=0)
    graph.add_nodes_from((("L", v) for v in reps), bipartite=1)
    graph.add_edges_from((("P", x), ("L", l)) for x in reps for l in reps
                         if sum(a * b for a, b in zip(x, l)) % q == 0)
    return graph


def link_preset(name: str) -> nx.Graph:
    if name == "z-pm12":
        return link_graph([-2, -1, 1, 2])
    if name == "fano":
        return projective_plane_incidence(2)
    if name == "k4":
        return nx.complete_graph(4)
    raise DomainError(f"unknown link graph {name!r}; choose from {LINK_PRESETS}")


def normalized_laplacian(graph: nx.Graph) -> np.ndarray:
    """D^-1/2 (D - A) D^-1/2, the symmetric form of f(s) - (1/deg s) sum_{s'~s} f(s')."""
    A = nx.to_numpy_array(graph, nodelist=list(graph.nodes))
    deg = A.sum(axis=1)
    if np.any(deg == 0):
        raise DomainError("isolated vertex in link graph")
    scale = 1 / np.sqrt(deg)
    return np.eye(len(deg)) - scale[:, None] * A * scale[None, :]


@dataclass
class ZukVerdict:
    lambda1: Optional[float]
    has_property_t: bool
    status: str

    def to_json(self) -> dict:
        return {"lambda1": self.lambda1, "property_T": self.has_property_t,
                "status": self.status}


def zuk_criterion(graph: nx.Graph) -> ZukVerdict:
    """lambda_1 of the link graph's Laplacian; above 1/2 certifies property (T)."""
    if graph.number_of_nodes() < 2:
        raise DomainError("link graph needs at least two vertices")
    if not nx.is_connected(graph):
        return ZukVerdict(None, False, "inconclusive: disconnected link graph")
    values = np.linalg.eigvalsh(normalized_laplacian(graph))
    if values[0] < -1e-9 or values[-1] > 2 + 1e-9:
        raise ConsistencyError(f"Laplacian spectrum leaves [0, 2]: {values}")
    lam = float(values[1])
    verdict = lam > 0.5 + 1e-12
    return ZukVerdict(lam, verdict, "property (T)" if verdict else "criterion not met")


def feit_higman_lambda1(q: int) -> float:
    """1 - sqrt(q)/(q + 1) for the incidence graph of a projective plane of order q."""
    return 1 - math.sqrt(q) / (q + 1)


@dataclass
class BipartiteSample:
    """A graph of X(n, k): input i is joined to output pi_j(i) for each of k permutations."""

    n: int
    permutations: List[Tuple[int, ...]]

    @property
    def k(self) -> int:
        return len(self.permutations)

    def edges(self) -> List[Tuple[int, int]]:
        """Multigraph edges as (input, n + output)."""
        return [(i, self.n + perm[i]) for perm in self.permutations for i in range(self.n)]


def _popcount(values: np.ndarray) -> np.ndarray:
    table = np.zeros(256, dtype=np.int64)
    for j in range(8):
        table[1 << j:1 << (j + 1)] = table[:1 << j] + 1
    out = np.zeros_like(values)
    v = values.copy()
    while np.any(v):
        out += table[v & 255]
        v >>= 8
    return out


def boundary_ratio_exact(sample: BipartiteSample,
                         with_h: bool = False) -> Tuple[Fraction, Optional[Fraction]]:
    """(h', h): h' over input subsets of size <= n/2 with the output neighbourhood as boundary;
    h over all vertex subsets of size <= n with the edge boundary, multi-edges counted."""
    n = sample.n
    if n > EXACT_HPRIME_MAX:
        raise BudgetExceeded(f"exact h' over 2^{n} subsets", bound=EXACT_HPRIME_MAX)
    single = np.zeros(n, dtype=np.int64)
    for perm in sample.permutations:
        for i in range(n):
            single[i] |= 1 << perm[i]
    nbr = np.zeros(1 << n, dtype=np.int64)
    size = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        nbr[1 << j:1 << (j + 1)] = nbr[:1 << j] | single[j]
        size[1 << j:1 << (j + 1)] = size[:1 << j] + 1
    ok = (size >= 1) & (2 * size <= n)
    ratios = _popcount(nbr[ok]) / size[ok]
    best = int(np.argmin(ratios))
    h_prime = Fraction(int(_popcount(nbr[ok][best:best + 1])[0]), int(size[ok][best]))

    h = None
    if with_h:
        if n > EXACT_H_MAX:
            raise BudgetExceeded(f"exact h over 2^{2 * n} subsets", bound=EXACT_H_MAX)
        masks = np.arange(1 << (2 * n), dtype=np.int64)
        members = _popcount(masks)
        crossing = np.zeros_like(masks)
        for u, v in sample.edges():
            crossing += ((masks >> u) & 1) ^ ((masks >> v) & 1)
        ok = (members >= 1) & (members <= n)
        idx = int(np.argmin(crossing[ok] / members[ok]))
        h = Fraction(int(crossing[ok][idx]), int(members[ok][idx]))
        if h < h_prime - 1:
            raise ConsistencyError(f"h = {h} below h' - 1 = {h_prime - 1}")
    return h_prime, h


@dataclass
class ExpanderSample:
    n: int
    k: int
    trials: int
    seed: int
    h_primes: List[Fraction]

    @property
    def fraction(self) -> float:
        return sum(h >= Fraction(3, 2) for h in self.h_primes) / self.trials

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "trials": self.trials, "seed": self.seed,
                "fraction_h'>=3/2": self.fraction, "min_h'": float(min(self.h_primes))}


def sample_bipartite(n: int, k: int, seed: int, trial: int) -> BipartiteSample:
    rng = counter_rng(seed, trial)
    return BipartiteSample(n, [tuple(int(x) for x in rng.permutation(n)) for _ in range(k)])


def random_expander_sample(n: int, k: int = 5, trials: int = 200, seed: int = 0,
                           show_progress: bool = False) -> ExpanderSample:
    """Fraction of random X(n, k) graphs with h' >= 3/2, each graph scanned exactly.

    Trial t draws its permutations from the stream (seed, t), so the first k permutations
    are shared across k and the fraction is monotone in k.
    """
    if k < 1 or n < 2 or trials < 1:
        raise DomainError(f"need n >= 2, k >= 1, trials >= 1; got n={n}, k={k}, "
                          f"trials={trials}")
    if k < 5:
        logger.warning("k = %d is below the range k >= 5 where expanders are typical", k)
    if n > EXACT_HPRIME_MAX:
        raise DomainError(f"exact h' is limited to n <= {EXACT_HPRIME_MAX}, got {n}")
    trial_iter = range(trials)
    if show_progress:
        trial_iter = tqdm(trial_iter, desc=f"X({n},{k})")
    h_primes = [boundary_ratio_exact(sample_bipartite(n, k, seed, t))[0] for t in trial_iter]
    return ExpanderSample(n, k, trials, seed, h_primes)


@dataclass
class ReturnProbability:
    walk: str
    steps: int
    probabilities: List[Fraction]

    @property
    def value(self) -> Fraction:
        return self.probabilities[-1]

    def roots(self) -> List[Optional[float]]:
        """p_{2m}^(1/2m) for m = 1..n, the Kesten trend."""
        return [float(p) ** (1 / (2 * m)) if p else None
                for m, p in enumerate(self.probabilities) if m]

    def growth_limit(self) -> Optional[float]:
        """sqrt(p_{2m} / p_{2m-2}) with the m^(-3/2) factor of tree walks removed."""
        m = len(self.probabilities) - 1
        if m < 2 or not self.probabilities[m - 1]:
            return None
        ratio = self.probabilities[m] / self.probabilities[m - 1]
        if self.walk == "free":
            ratio = float(ratio) * (m / (m - 1)) ** 1.5
        return math.sqrt(float(ratio))

    def to_json(self) -> dict:
        return {"walk": self.walk, "2n": self.steps, "p": str(self.value),
                "p_float": float(self.value), "roots": self.roots(),
                "growth_limit": self.growth_limit()}


def _zd_closed_walks(d: int, n: int) -> int:
    """Closed walks of length 2n on Z^d: sum over n_1+...+n_d = n of (2n)! / prod n_i!^2."""
    total = 0
    for parts in itertools.product(range(n + 1), repeat=d - 1):
        rest = n - sum(parts)
        if rest < 0:
            continue
        denom = 1
        for k in parts + (rest,):
            denom *= math.factorial(k) ** 2
        total += math.factorial(2 * n) // denom
    return total


def _tree_closed_walks(degree: int, steps: int) -> List[int]:
    """Closed walk counts at every even length up to ``steps`` on the regular tree."""
    counts = [1]
    by_distance = [1]
    for s in range(1, steps + 1):
        nxt = [0] * (len(by_distance) + 1)
        for j, c in enumerate(by_distance):
            if not c:
                continue
            if j == 0:
                nxt[1] += degree * c
            else:
                nxt[j - 1] += c
                nxt[j + 1] += (degree - 1) * c
        by_distance = nxt
        if s % 2 == 0:
            counts.append(by_distance[0])
    return counts


def _group_closed_walks(group: FiniteGroup, S: Sequence, steps: int) -> List[int]:
    table = group.table()
    gens = [group.index(s) for s in S]
    cur = [0] * table.n
    cur[table.identity] = 1
    counts = [1]
    for s in range(1, steps + 1):
        nxt = [0] * table.n
        for g, c in enumerate(cur):
            if c:
                for a in gens:
                    nxt[table.mul[a, g]] += c
        cur = nxt
        if s % 2 == 0:
            counts.append(cur[table.identity])
    return counts


def return_probability(walk: str, steps: int, d: int = 2, group: Optional[FiniteGroup] = None,
                       generators: Optional[Sequence] = None) -> ReturnProbability:
    """Exact p_{2m}(id, id) for 2m <= steps on Z^d (``zd``), on a finite group with a symmetric
    generating multiset (``group``) or on the free group F_2 (``free``, the 4-regular tree)."""
    if steps < 0 or steps % 2 or steps > WALK_MAX:
        raise DomainError(f"walk length must be even and in [0, {WALK_MAX}], got {steps}")
    n = steps // 2
    if walk == "zd":
        if d < 1:
            raise DomainError(f"lattice dimension must be positive, got {d}")
        probs = [Fraction(_zd_closed_walks(d, m), (2 * d) ** (2 * m)) for m in range(n + 1)]
    elif walk == "free":
        probs = [Fraction(c, 4 ** (2 * m))
                 for m, c in enumerate(_tree_closed_walks(4, steps))]
    elif walk == "group":
        if group is None or not generators:
            raise DomainError("a group walk needs a group and generators")
        S = list(generators)
        if sorted(group.canonical(s) for s in S) != sorted(group.inv(s) for s in S):
            raise DomainError("the generating multiset must be symmetric")
        budget = get_config().enum_budget
        if group.order * len(S) * steps > budget:
            raise BudgetExceeded(f"walk of {steps} steps on {group.order} elements",
                                 bound=budget, key=key_for("enum_budget"))
        probs = [Fraction(c, len(S) ** (2 * m))
                 for m, c in enumerate(_group_closed_walks(group, S, steps))]
    else:
        raise DomainError(f"unknown walk {walk!r}; choose zd, group or free")
    return ReturnProbability(walk, steps, probs)
