"""Even unimodular lattices and their theta series."""

import logging
from typing import List, Optional, Sequence

import numpy as np

from arithlab_toolkit.config import get_config
from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.exactnum.linalg import RatMatrix, count_by_norm
from arithlab_toolkit.modforms.qseries import QSeries

logger = logging.getLogger(__name__)


class EvenLattice:
    """Positive definite even unimodular lattice given by an integer Gram matrix."""

    def __init__(self, gram: Sequence[Sequence[int]]):
        m = RatMatrix(gram)
        n = m.nrows
        if m.ncols != n or not m.is_symmetric() or not m.is_integral():
            raise DomainError("Gram matrix must be square, symmetric and integral")
        if n % 8:
            raise DomainError(f"even unimodular lattices have rank divisible by 8, got {n}")
        if any(m[i, i] % 2 for i in range(n)):
            raise DomainError("Gram matrix diagonal must be even")
        if m.det() != 1:
            raise DomainError(f"Gram determinant is {m.det()}, not 1")
        if np.linalg.eigvalsh(m.to_numpy()).min() <= 0:
            raise DomainError("Gram matrix is not positive definite")
        self.gram: List[List[int]] = m.to_int_rows()
        self.rank = n


def e8_lattice() -> EvenLattice:
    """E8 from its Cartan matrix (branch node attached to the third node of the chain)."""
    edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
    gram = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -1
    return EvenLattice(gram)


def theta_series(lattice: EvenLattice, precision: int, budget: Optional[int] = None,
                 num_threads: int = 1) -> QSeries:
    """theta_L = sum_m r_{2m}(L) q^m, counting vectors of norm 2m exactly."""
    if precision < 0:
        raise DomainError("precision must be >= 0")
    counts = count_by_norm(lattice.gram, 2 * precision,
                           budget or get_config().enum_budget, num_threads)
    if any(k % 2 for k in counts):
        raise DomainError("lattice has a vector of odd norm")
    coeffs = [counts.get(2 * m, 0) for m in range(precision + 1)]
    logger.debug("theta series of rank %d to q^%d", lattice.rank, precision)
    return QSeries(coeffs, precision, lattice.rank // 2)
