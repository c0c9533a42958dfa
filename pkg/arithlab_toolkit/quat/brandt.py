"""Brandt matrices, their common eigenbasis and the theta pairing on the class module."""

import concurrent.futures
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from arithlab_toolkit.config import get_config
from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.exactnum.linalg import RatMatrix
from arithlab_toolkit.exactnum.ntheory import is_prime, primes_up_to
from arithlab_toolkit.exactnum.poly import IntPoly
from arithlab_toolkit.modforms.qseries import QSeries
from arithlab_toolkit.quat.classes import ClassSet, hecke_neighbours, ideal_norm

logger = logging.getLogger(__name__)

Vector = List[Fraction]


class BrandtModule:
    """Free module on the ideal classes with the Hecke action by Brandt matrices.

    Column i of B(n) lists, for each class j, how many ideals in T_n(I_i) lie in class j.
    """

    def __init__(self, classes: ClassSet, num_threads: Optional[int] = None):
        self.classes = classes
        self.level = classes.level
        self.num_threads = num_threads or get_config().num_threads
        self._cache: Dict[int, RatMatrix] = {}
        self._theta_direct: Optional[tuple] = None

    @property
    def rank(self) -> int:
        return len(self.classes)

    @property
    def weights(self) -> List[int]:
        return self.classes.weights

    def _column(self, i: int, n: int) -> List[int]:
        col = [0] * self.rank
        for J in hecke_neighbours(self.classes.ideals[i], self.classes.order, n):
            col[self.classes.classify(J)] += 1
        return col

    def matrix(self, n: int) -> RatMatrix:
        if n < 1:
            raise DomainError(f"Brandt index must be >= 1, got {n}")
        if n % self.level == 0:
            raise DomainError(f"Brandt matrix B({n}) needs n coprime to the level {self.level}")
        if n in self._cache:
            return self._cache[n]
        h = self.rank
        cols: Dict[int, List[int]] = {}
        if self.num_threads > 1 and h > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=self.num_threads) as executor:
                future_dict = {executor.submit(self._column, i, n): i for i in range(h)}
                for future in concurrent.futures.as_completed(future_dict):
                    cols[future_dict[future]] = future.result()
        else:
            cols = {i: self._column(i, n) for i in range(h)}
        m = RatMatrix([[cols[i][j] for i in range(h)] for j in range(h)])
        self._cache[n] = m
        logger.debug("B(%d) for N=%d: %s", n, self.level, m.to_int_rows())
        return m

    def apply(self, n: int, f: Sequence) -> Vector:
        return self.matrix(n).apply(f)

    def degree(self, f: Sequence) -> Fraction:
        return sum((Fraction(c) for c in f), Fraction(0))

    def pairing(self, f: Sequence, g: Sequence) -> Fraction:
        """<f, g> = sum_i w_i f_i g_i."""
        return sum((w * Fraction(a) * Fraction(b) for w, a, b in zip(self.weights, f, g)),
                   Fraction(0))

    def basis_vector(self, i: int) -> Vector:
        return [Fraction(int(i == j)) for j in range(self.rank)]

    def eisenstein_vector(self) -> Vector:
        return [Fraction(1, w) for w in self.weights]

    def check_invariants(self, primes: Sequence[int]) -> None:
        """Commutativity, self-adjointness, column sums p + 1 and the prime-power recursion."""
        mats = {p: self.matrix(p) for p in primes}
        W = RatMatrix([[w if i == j else 0 for j in range(self.rank)]
                       for i, w in enumerate(self.weights)])
        for p, m in mats.items():
            if any(sum(m.column(j)) != p + 1 for j in range(self.rank)):
                raise ConsistencyError(f"B({p}) has a column sum different from {p + 1}")
            if W @ m != (W @ m).transpose():
                raise ConsistencyError(f"B({p}) is not self-adjoint for the weights")
            for q, m2 in mats.items():
                if not m.commutes_with(m2):
                    raise ConsistencyError(f"B({p}) and B({q}) do not commute")
        for p in primes:
            if p * p % self.level and p * p <= 10 ** 4:
                lhs = self.matrix(p * p)
                rhs = mats[p] @ mats[p] - RatMatrix.identity(self.rank) * p
                if lhs != rhs:
                    raise ConsistencyError(f"B({p * p}) != B({p})^2 - {p}")


@dataclass
class Eigenvector:
    vector: List
    exact: bool
    eigenvalues: Dict[int, object] = field(default_factory=dict)
    field_degree: int = 1

    def to_json(self) -> dict:
        return {"vector": [str(c) for c in self.vector], "exact": self.exact,
                "eigenvalues": {str(p): str(v) for p, v in self.eigenvalues.items()},
                "field_degree": self.field_degree}


def _normalize_first(v: Sequence[Fraction]) -> Vector:
    lead = next(c for c in v if c != 0)
    return [Fraction(c) / lead for c in v]


def _primes_for(module: BrandtModule, count: int = 4) -> List[int]:
    return [p for p in primes_up_to(60) if p != module.level][:count]


def _rational_eigenvalues(m: RatMatrix) -> List[Fraction]:
    charpoly = IntPoly([int(c) for c in m.charpoly()])
    return [Fraction(-f[0], f[1]) for f, _mult in charpoly.factor_over_z() if f.degree == 1]


def _shared_eigenspaces(mats: Mapping[int, RatMatrix], h: int) -> List[List[Vector]]:
    """Bases of the joint rational eigenspaces, refined one Brandt matrix at a time."""
    spaces = [[[Fraction(int(i == j)) for j in range(h)] for i in range(h)]]
    for p, m in mats.items():
        refined = []
        for basis in spaces:
            for lam in _rational_eigenvalues(m):
                shifted = m - RatMatrix.identity(h) * lam
                images = [shifted.apply(v) for v in basis]
                restricted = RatMatrix([[img[r] for img in images] for r in range(h)])
                sub = [[sum((c[k] * basis[k][r] for k in range(len(basis))), Fraction(0))
                        for r in range(h)] for c in restricted.kernel()]
                if sub:
                    refined.append(sub)
        spaces = refined
    return spaces


def eigenbasis(module: BrandtModule, primes: Optional[Sequence[int]] = None) -> List[Eigenvector]:
    """Simultaneous eigenvectors of the Brandt matrices.

    Rational eigenvectors are exact; the Eisenstein vector is scaled to (1/w_i) and the rest
    so that their first nonzero entry is 1. Eigenvalues with irrational conjugates are
    returned numerically with ``exact = False``.
    """
    primes = list(primes or _primes_for(module))
    mats = {p: module.matrix(p) for p in primes}
    for a, p in enumerate(primes):
        for q in primes[a + 1:]:
            if not mats[p].commutes_with(mats[q]):
                raise ConsistencyError(f"B({p}) and B({q}) do not commute")
    h = module.rank
    out: List[Eigenvector] = []
    eis = module.eisenstein_vector()
    for space in _shared_eigenspaces(mats, h):
        for v in space:
            v = eis if _proportional(v, eis) else _normalize_first(v)
            eig = {p: _exact_eigenvalue(mats[p], v) for p in primes}
            out.append(Eigenvector(v, True, eig, 1))
    combo = RatMatrix.zeros(h, h)
    for c, p in enumerate(primes, start=1):
        combo = combo + mats[p] * c
    charpoly = IntPoly([int(c) for c in combo.charpoly()])
    for factor, _mult in charpoly.factor_over_z():
        if factor.degree > 1:
            out.extend(_numeric_eigenvectors(combo, mats, factor))
    out.sort(key=lambda e: (e.vector != eis, not e.exact))
    return out


def _proportional(v: Sequence[Fraction], w: Sequence[Fraction]) -> bool:
    ratio = None
    for a, b in zip(v, w):
        if (a == 0) != (b == 0):
            return False
        if a:
            r = Fraction(a) / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is not None


def _exact_eigenvalue(m: RatMatrix, v: Sequence[Fraction]) -> Fraction:
    image = m.apply(v)
    k = next(i for i, c in enumerate(v) if c != 0)
    lam = image[k] / v[k]
    if any(image[i] != lam * v[i] for i in range(len(v))):
        raise ConsistencyError("Brandt matrices do not share this eigenvector")
    return lam


def _numeric_eigenvectors(combo: RatMatrix, mats: Mapping[int, RatMatrix],
                          factor: IntPoly) -> List[Eigenvector]:
    """Eigenvectors for the roots of an irreducible factor of degree > 1, in floating point."""
    vals, vecs = np.linalg.eig(combo.to_numpy())
    out = []
    for idx, lam in enumerate(vals):
        value = sum(float(c) * lam ** k for k, c in enumerate(factor.coeffs))
        if abs(value) > 1e-6 * max(1.0, abs(lam)) ** factor.degree:
            continue
        v = vecs[:, idx]
        k = int(np.argmax(np.abs(v)))
        v = v / v[k]
        eig = {p: complex((m.to_numpy() @ v)[k]) for p, m in mats.items()}
        out.append(Eigenvector([complex(c) for c in v], False, eig, factor.degree))
    return out



def _direct_table(module: BrandtModule, precision: int) -> List[List[List[Fraction]]]:
    """Norm-count theta coefficients of every class pair, cached at the largest precision seen."""
    cached = module._theta_direct
    if cached is None or cached[0] < precision:
        h = module.rank
        table = [[list(theta_pair_direct(module, i, j, precision).coeffs) for j in range(h)]
                 for i in range(h)]
        module._theta_direct = cached = (precision, table)
    return cached[1]


def theta_pair(module: BrandtModule, f: Sequence, g: Sequence, precision: int) -> QSeries:
    """Theta pairing: constant term deg(f) deg(g) / 2 and q^n coefficient <t_n f, g>.

    For n prime to the level the coefficient comes from B(n), and every class pair is checked
    against the norm count first. For N | n it is the bilinear extension of the norm counts.
    """
    h = module.rank
    direct = _direct_table(module, precision)
    coeffs = [module.degree(f) * module.degree(g) / 2]
    for n in range(1, precision + 1):
        if n % module.level == 0:
            coeffs.append(sum((Fraction(f[i]) * Fraction(g[j]) * direct[i][j][n]
                               for i in range(h) for j in range(h)), Fraction(0)))
            continue
        m = module.matrix(n)
        for i in range(h):
            col = m.column(i)
            for j in range(h):
                if module.weights[j] * col[j] != direct[i][j][n]:
                    raise ConsistencyError(
                        f"q^{n} coefficient of classes ({i}, {j}): Brandt "
                        f"{module.weights[j] * col[j]}, norm count {direct[i][j][n]}")
        coeffs.append(module.pairing(module.apply(n, f), g))
    return QSeries(coeffs, precision, 2)


def theta_pair_direct(module: BrandtModule, i: int, j: int, precision: int) -> QSeries:
    """Theta series of the class pair (i, j) by counting norms in I_i I_j*.

    Coefficient n is half the number of x in I_i I_j* with nu(x) = n nu(I_i) nu(I_j).
    """
    I, J = module.classes.ideals[i], module.classes.ideals[j]
    scale = ideal_norm(I) * ideal_norm(J)
    counts = I.product(J.conj()).norm_counts(precision * scale)
    coeffs = [Fraction(counts.get(n * scale, 0), 2) for n in range(precision + 1)]
    return QSeries(coeffs, precision, 2)


def theta_matrix(module: BrandtModule, precision: int) -> List[List[QSeries]]:
    h = module.rank
    return [[theta_pair(module, module.basis_vector(i), module.basis_vector(j), precision)
             for j in range(h)] for i in range(h)]


def eichler_shimura_check(module: BrandtModule, cusp_vector: Sequence[Fraction],
                          ap: Mapping[int, int]) -> Dict[int, bool]:
    """Whether the cusp eigenvector has B(p)-eigenvalue a_p for each p not dividing N."""
    result = {}
    for p, a in sorted(ap.items()):
        if not is_prime(p) or p == module.level:
            continue
        result[p] = _exact_eigenvalue(module.matrix(p), cusp_vector) == a
    return result


def brandt_matrix(classes: ClassSet, n: int) -> RatMatrix:
    """B(n) for a class set; matrices are cached on the class set's module."""
    module = getattr(classes, "_brandt_module", None)
    if module is None:
        module = BrandtModule(classes)
        classes._brandt_module = module
    return module.matrix(n)


@dataclass
class BrandtReport:
    level: int
    weights: List[int]
    matrices: Dict[int, RatMatrix]
    eigenvectors: List[Eigenvector]
    thetas: List[List[QSeries]]

    def to_json(self) -> dict:
        return {"level": self.level, "weights": self.weights,
                "matrices": {str(n): m.to_json() for n, m in sorted(self.matrices.items())},
                "eigenvectors": [e.to_json() for e in self.eigenvectors],
                "thetas": [[t.to_json() for t in row] for row in self.thetas]}


def brandt_module(N: int, primes: Sequence[int], precision: Optional[int] = None,
                  classes: Optional[ClassSet] = None) -> BrandtReport:
    """Classes, Brandt matrices, eigenbasis and theta series of level N in one report."""
    from arithlab_toolkit.quat.classes import class_set

    classes = classes or class_set(N)
    module = BrandtModule(classes)
    classes._brandt_module = module
    primes = [p for p in primes if p != N]
    module.check_invariants([p for p in primes if p * p < 200])
    mats = {p: module.matrix(p) for p in primes}
    prec = precision if precision is not None else 10
    return BrandtReport(N, list(classes.weights), mats, eigenbasis(module, primes),
                        theta_matrix(module, prec))
