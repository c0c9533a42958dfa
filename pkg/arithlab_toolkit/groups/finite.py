"""Explicit finite groups and their numpy multiplication tables."""

import itertools
import logging
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, DomainError
from arithlab_toolkit.exactnum.ntheory import is_prime

logger = logging.getLogger(__name__)

TABLE_MAX = 3000


def counter_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent reproducible stream per (seed, stream), e.g. one per trial."""
    return np.random.default_rng([int(seed) % (1 << 64), int(stream)])


class FiniteGroup:
    """Base class: subclasses provide ``mul``, ``inv``, ``identity`` and ``_enumerate``."""

    name = "G"
    _elements: Optional[List[Hashable]] = None
    _index: Optional[Dict[Hashable, int]] = None
    _table: Optional["GroupTable"] = None

    def __repr__(self) -> str:
        return self.name

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    def _enumerate(self) -> Iterable[Hashable]:
        raise NotImplementedError

    def canonical(self, g):
        return g

    def elements(self) -> List[Hashable]:
        if self._elements is None:
            self._elements = sorted(self._enumerate())
            self._index = {g: i for i, g in enumerate(self._elements)}
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def index(self, g) -> int:
        self.elements()
        return self._index[self.canonical(g)]

    def power(self, g, k: int):
        if k < 0:
            g, k = self.inv(g), -k
        out = self.identity
        while k:
            if k & 1:
                out = self.mul(out, g)
            g = self.mul(g, g)
            k >>= 1
        return out

    def element_order(self, g) -> int:
        k, cur = 1, self.canonical(g)
        while cur != self.identity:
            cur = self.mul(cur, g)
            k += 1
        return k

    def symmetric_closure(self, A: Iterable) -> Set:
        A = {self.canonical(a) for a in A}
        return A | {self.inv(a) for a in A}

    def generated_subgroup(self, S: Iterable) -> Set:
        """Closure of S under multiplication, by breadth-first search from the identity."""
        S = list(self.symmetric_closure(S))
        budget = get_config().bfs_budget
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in S:
                    h = self.mul(s, g)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            if len(seen) > budget:
                raise BudgetExceeded(f"subgroup closure in {self.name}", bound=budget,
                                     key=key_for("bfs_budget"))
            frontier = nxt
        return seen

    def generates(self, S: Iterable) -> bool:
        return len(self.generated_subgroup(S)) == self.order

    def table(self) -> "GroupTable":
        if self._table is None:
            self._table = GroupTable(self)
        return self._table

    def product_row(self, g) -> np.ndarray:
        """Indices of g * h for every element h, in element order."""
        return np.array([self._index[self.mul(g, h)] for h in self.elements()], dtype=np.int32)


class CyclicGroup(FiniteGroup):
    """Z_N written additively; elements are 0..N-1."""

    def __init__(self, N: int):
        if N < 1:
            raise DomainError(f"cyclic group order must be positive, got {N}")
        self.N = N
        self.name = f"Z{N}"

    def mul(self, a, b):
        return (a + b) % self.N

    def inv(self, a):
        return (-a) % self.N

    @property
    def identity(self):
        return 0

    def canonical(self, g):
        return g % self.N

    def _enumerate(self):
        return range(self.N)

    def product_row(self, g) -> np.ndarray:
        return ((g + np.arange(self.N)) % self.N).astype(np.int32)


class SymmetricGroup(FiniteGroup):
    """S_n on {0, ..., n-1}; (a * b)(i) = a(b(i))."""

    def __init__(self, n: int):
        if not 1 <= n <= 8:
            raise DomainError(f"symmetric groups are enumerated for 1 <= n <= 8, got {n}")
        self.n = n
        self.name = f"S{n}"

    def mul(self, a, b):
        return tuple(a[i] for i in b)

    def inv(self, a):
        out = [0] * self.n
        for i, ai in enumerate(a):
            out[ai] = i
        return tuple(out)

    @property
    def identity(self):
        return tuple(range(self.n))

    def _enumerate(self):
        return itertools.permutations(range(self.n))

    @staticmethod
    def act(g, x: int) -> int:
        return g[x]


Matrix = Tuple[int, int, int, int]


class SL2Group(FiniteGroup):
    """SL_2(F_p) as tuples (a, b, c, d); with ``projective`` the quotient PSL_2 by +-I,
    each class represented by its lexicographically smaller member."""

    def __init__(self, p: int, projective: bool = False):
        if not is_prime(p):
            raise DomainError(f"SL_2(F_p) needs p prime, got {p}")
        self.p = p
        self.projective = projective and p > 2
        self.name = f"{'PSL' if self.projective else 'SL'}2(F{p})"

    def canonical(self, g) -> Matrix:
        p = self.p
        g = tuple(x % p for x in g)
        if self.projective:
            neg = tuple((-x) % p for x in g)
            return min(g, neg)
        return g

    def mul(self, x, y) -> Matrix:
        a, b, c, d = x
        e, f, g, h = y
        return self.canonical((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def inv(self, x) -> Matrix:
        a, b, c, d = x
        return self.canonical((d, -b, -c, a))

    @property
    def identity(self) -> Matrix:
        return self.canonical((1, 0, 0, 1))

    @property
    def expected_order(self) -> int:
        n = self.p * (self.p ** 2 - 1)
        return n // 2 if self.projective else n

    def _enumerate(self):
        p = self.p
        out = set()
        for a, c in itertools.product(range(p), repeat=2):
            if a:
                inv = pow(a, -1, p)
                for b in range(p):
                    out.add(self.canonical((a, b, c, (1 + b * c) * inv)))
            elif c:
                b = (-pow(c, -1, p)) % p
                for d in range(p):
                    out.add(self.canonical((0, b, c, d)))
        return out

    def trace(self, g) -> int:
        return (g[0] + g[3]) % self.p

    def is_regular_semisimple(self, g) -> bool:
        return self.trace(g) not in (2 % self.p, (-2) % self.p)

    def unipotent_pair(self) -> List[Matrix]:
        """(1 1; 0 1) and (1 0; 1 1)."""
        return [self.canonical((1, 1, 0, 1)), self.canonical((1, 0, 1, 1))]

    def borel(self) -> List[Matrix]:
        """Upper triangular matrices."""
        return [g for g in self.elements() if g[2] == 0]

    def _encode(self, arr: np.ndarray) -> np.ndarray:
        p = self.p
        arr = arr % p
        key = ((arr[:, 0] * p + arr[:, 1]) * p + arr[:, 2]) * p + arr[:, 3]
        if self.projective:
            neg = (-arr) % p
            key = np.minimum(key, ((neg[:, 0] * p + neg[:, 1]) * p + neg[:, 2]) * p + neg[:, 3])
        return key

    def product_row(self, g) -> np.ndarray:
        if not hasattr(self, "_lookup"):
            mats = np.array(self.elements(), dtype=np.int64)
            self._mats = mats
            self._lookup = np.full(self.p ** 4, -1, dtype=np.int32)
            self._lookup[self._encode(mats)] = np.arange(len(mats), dtype=np.int32)
        a, b, c, d = g
        m = self._mats
        prod = np.stack([a * m[:, 0] + b * m[:, 2], a * m[:, 1] + b * m[:, 3],
                         c * m[:, 0] + d * m[:, 2], c * m[:, 1] + d * m[:, 3]], axis=1)
        return self._lookup[self._encode(prod)]


class GroupTable:
    """Dense multiplication table: ``mul[i, j]`` is the index of g_i * g_j."""

    def __init__(self, group: FiniteGroup):
        n = group.order
        if n > TABLE_MAX:
            raise BudgetExceeded(f"multiplication table of {group} with {n} elements",
                                 bound=TABLE_MAX)
        self.group = group
        self.n = n
        self.mul = np.empty((n, n), dtype=np.int32)
        for i, g in enumerate(group.elements()):
            self.mul[i] = group.product_row(g)
        self.identity = group.index(group.identity)
        self.inv = np.argmax(self.mul == self.identity, axis=1).astype(np.int32)
        logger.debug("built %dx%d table for %s", n, n, group)

    def indices(self, A: Iterable) -> np.ndarray:
        return np.unique(np.fromiter((self.group.index(a) for a in A), dtype=np.int32))

    def elements_of(self, idx: Sequence[int]) -> List:
        els = self.group.elements()
        return [els[i] for i in idx]

    def product(self, A_idx: np.ndarray, B_idx: np.ndarray) -> np.ndarray:
        """Indices of A * B."""
        return np.unique(self.mul[np.ix_(A_idx, B_idx)])

    def inverse(self, A_idx: np.ndarray) -> np.ndarray:
        return np.unique(self.inv[A_idx])

    def power(self, A_idx: np.ndarray, k: int) -> np.ndarray:
        out = A_idx
        for _ in range(k - 1):
            out = self.product(out, A_idx)
        return out
