"""Dense exact linear algebra over Q and integer lattice utilities."""

import math
import logging
import concurrent.futures
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, DomainError

logger = logging.getLogger(__name__)


class RatMatrix:
    """Immutable rectangular matrix with ``Fraction`` entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not data:
            raise DomainError("matrix needs at least one row")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DomainError("matrix rows have different lengths")
        self.rows = data
        self.nrows, self.ncols = len(data), width

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(m)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        return self.rows[ij[0]][ij[1]]

    def column(self, j: int) -> List[Fraction]:
        return [row[j] for row in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            other = RatMatrix(other)
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other) -> "RatMatrix":
        if isinstance(other, RatMatrix):
            return self @ other
        return RatMatrix([[a * other for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DomainError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return RatMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __pow__(self, n: int) -> "RatMatrix":
        result, base = RatMatrix.identity(self.nrows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def apply(self, vector: Sequence) -> List[Fraction]:
        """Matrix times column vector."""
        return [sum(a * Fraction(b) for a, b in zip(r, vector)) for r in self.rows]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows))

    def trace(self) -> Fraction:
        return sum(self.rows[i][i] for i in range(min(self.shape)))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def commutes_with(self, other: "RatMatrix") -> bool:
        return (self @ other).rows == (other @ self).rows

    def to_int_rows(self) -> List[List[int]]:
        if not self.is_integral():
            raise DomainError("matrix has non-integral entries")
        return [[int(x) for x in r] for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows])

    def to_json(self) -> List[List[str]]:
        return [[str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
                 for x in r] for r in self.rows]

    def _same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")

    # determinants
    def det(self) -> Fraction:
        """Determinant by fraction-free (Bareiss) elimination on the cleared integer matrix."""
        self._require_square()
        n = self.nrows
        scale = Fraction(1)
        rows = []
        for r in self.rows:
            den = math.lcm(*(x.denominator for x in r))
            scale /= den
            rows.append([int(x * den) for x in r])
        sign, prev = 1, 1
        for k in range(n - 1):
            if rows[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
                if swap is None:
                    return Fraction(0)
                rows[k], rows[swap] = rows[swap], rows[k]
                sign = -sign
            pivot = rows[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
                rows[i][k] = 0
            prev = pivot
        return sign * rows[n - 1][n - 1] * scale

    def cofactor_det(self) -> Fraction:
        """Determinant by Laplace expansion along the first row (small matrices only)."""
        self._require_square()
        if self.nrows > 8:
            raise BudgetExceeded("cofactor expansion limited to 8x8", bound=8)
        return _laplace([list(r) for r in self.rows])

    def _require_square(self) -> None:
        if self.nrows != self.ncols:
            raise DomainError(f"matrix {self.shape} is not square")

    # elimination
    def rref(self) -> Tuple["RatMatrix", List[int]]:
        m = [list(r) for r in self.rows]
        pivots: List[int] = []
        row = 0
        for col in range(self.ncols):
            pr = next((i for i in range(row, self.nrows) if m[i][col] != 0), None)
            if pr is None:
                continue
            m[row], m[pr] = m[pr], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for i in range(self.nrows):
                if i != row and m[i][col] != 0:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        return RatMatrix(m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> List[List[Fraction]]:
        """Basis of the right null space {v : M v = 0}."""
        r, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for i, pc in enumerate(pivots):
                v[pc] = -r.rows[i][f]
            basis.append(v)
        return basis

    def inverse(self) -> "RatMatrix":
        self._require_square()
        n = self.nrows
        aug = RatMatrix([list(r) + [1 if i == j else 0 for j in range(n)]
                         for i, r in enumerate(self.rows)])
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise DomainError("matrix is singular")
        return RatMatrix([r[n:] for r in red.rows])

    def solve(self, rhs: Sequence) -> List[Fraction]:
        return self.inverse().apply(rhs)

    def charpoly(self) -> List[Fraction]:
        """Characteristic polynomial det(xI - M), lowest degree first (Faddeev-LeVerrier)."""
        self._require_square()
        n = self.nrows
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        ident = RatMatrix.identity(n)
        mk = RatMatrix.zeros(n, n)
        for k in range(1, n + 1):
            mk = self @ mk + ident * coeffs[n - k + 1]
            coeffs[n - k] = -(self @ mk).trace() / k
        return coeffs


def _laplace(m: List[List[Fraction]]) -> Fraction:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Fraction(0)
    for j, a in enumerate(m[0]):
        if a == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * a * _laplace(minor)
    return total


def hnf_rows(vectors: Iterable[Sequence[int]]) -> List[List[int]]:
    """Row Hermite normal form of the integer lattice spanned by ``vectors``.

    Output rows are upper triangular with positive pivots and entries above each pivot
    reduced into [0, pivot). Zero rows are dropped, so the result is a basis.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis: List[List[int]] = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col] != 0]
        rows = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (rest if r[col] != 0 else rows).append(r)
            nz = [piv] + rest
        if nz:
            piv = nz[0] if nz[0][col] > 0 else [-a for a in nz[0]]
            basis.append(piv)
        rows = [r for r in rows if any(r)]
        col += 1
    for i, piv in enumerate(basis):
        pc = next(j for j, a in enumerate(piv) if a != 0)
        for k in range(i):
            q = basis[k][pc] // piv[pc]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], piv)]
    return basis


def _cholesky_form(gram: np.ndarray) -> np.ndarray:
    """Upper matrix q with Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = gram.shape[0]
    q = gram.astype(float).copy()
    for i in range(n):
        for j in range(i + 1, n):
            q[j, i] = q[i, j]
            q[i, j] = q[i, j] / q[i, i]
        for k in range(i + 1, n):
            for m in range(k, n):
                q[k, m] -= q[k, i] * q[i, m]
    return q


class _Enumerator:
    """Fincke-Pohst enumeration of integer vectors with x^T G x <= bound."""

    def __init__(self, gram: Sequence[Sequence[int]], bound: int, budget: int):
        self.g = [list(map(int, r)) for r in gram]
        self.n = len(self.g)
        self.bound = bound
        self.budget = budget
        q = _cholesky_form(np.array(self.g, dtype=float))
        if any(q[i, i] <= 0 for i in range(self.n)):
            raise DomainError("Gram matrix is not positive definite")
        self.q = q

    def _range(self, i: int, x: List[int], remaining: float) -> range:
        centre = -sum(self.q[i, j] * x[j] for j in range(i + 1, self.n))
        radius = math.sqrt(max(remaining, 0.0) / self.q[i, i]) + 1e-7
        return range(math.ceil(centre - radius), math.floor(centre + radius) + 1)

    def _norm(self, x: List[int]) -> int:
        n = self.n
        return sum(self.g[i][j] * x[i] * x[j] for i in range(n) for j in range(n))

    def run(self, top_value: int, leaf: Callable[[List[int], int], None]) -> int:
        """Enumerate the subtree with x[n-1] = top_value; returns visited node count."""
        n = self.n
        x = [0] * n
        x[n - 1] = top_value
        remaining = self.bound - self.q[n - 1, n - 1] * top_value ** 2
        if n == 1:
            norm = self._norm(x)
            if norm <= self.bound:
                leaf(x, norm)
            return 1
        return self._descend(n - 2, x, remaining, leaf, 1)

    def _descend(self, i, x, remaining, leaf, visited) -> int:
        # partial sums ignore the coordinates below i, so only the float radius may prune here
        centre = -sum(self.q[i, j] * x[j] for j in range(i + 1, self.n))
        for v in self._range(i, x, remaining):
            visited += 1
            if visited > self.budget:
                raise BudgetExceeded(f"lattice enumeration exceeded {self.budget} nodes",
                                     bound=self.budget, key=key_for("enum_budget"))
            x[i] = v
            if i == 0:
                norm = self._norm(x)
                if norm <= self.bound:
                    leaf(x, norm)
                continue
            rem = remaining - self.q[i, i] * (v - centre) ** 2
            visited = self._descend(i - 1, x, rem, leaf, visited)
        x[i] = 0
        return visited


def _top_values(gram: Sequence[Sequence[int]], bound: int) -> range:
    g = np.array(gram, dtype=float)
    inv = np.linalg.inv(g)
    n = len(gram)
    radius = math.sqrt(max(bound, 0) * inv[n - 1, n - 1]) + 1e-7
    return range(-math.floor(radius), math.floor(radius) + 1)


def enumerate_lattice(gram: Sequence[Sequence[int]], bound: int,
                      leaf_factory: Callable[[], Tuple[Callable, Callable]],
                      budget: Optional[int] = None, num_threads: int = 1) -> list:
    """Split the enumeration over the last coordinate and merge per-value results in order."""
    budget = budget or get_config().enum_budget
    enum = _Enumerator(gram, bound, budget)
    tops = list(_top_values(gram, bound))

    def work(value: int):
        leaf, collect = leaf_factory()
        enum.run(value, leaf)
        return collect()

    results: Dict[int, object] = {}
    if num_threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=num_threads) as executor:
            future_dict = {executor.submit(work, v): v for v in tops}
            for future in concurrent.futures.as_completed(future_dict):
                results[future_dict[future]] = future.result()
    else:
        results = {v: work(v) for v in tops}
    return [results[v] for v in sorted(results)]


def short_vectors(gram: Sequence[Sequence[int]], bound: int, budget: Optional[int] = None,
                  num_threads: int = 1) -> List[Tuple[Tuple[int, ...], int]]:
    """All integer vectors x with x^T G x <= bound, paired with their exact norm."""

    def factory():
        found: List[Tuple[Tuple[int, ...], int]] = []
        return (lambda x, nrm: found.append((tuple(x), nrm))), (lambda: found)

    parts = enumerate_lattice(gram, bound, factory, budget, num_threads)
    return [item for part in parts for item in part]


def count_by_norm(gram: Sequence[Sequence[int]], bound: int, budget: Optional[int] = None,
                  num_threads: int = 1) -> Counter:
    """Number of lattice vectors of each norm value up to ``bound``."""

    def factory():
        counts: Counter = Counter()

        def leaf(_x, nrm):
            counts[nrm] += 1
        return leaf, (lambda: counts)

    total: Counter = Counter()
    for part in enumerate_lattice(gram, bound, factory, budget, num_threads):
        total.update(part)
    logger.debug("enumerated %d lattice vectors up to norm %d", sum(total.values()), bound)
    return total
