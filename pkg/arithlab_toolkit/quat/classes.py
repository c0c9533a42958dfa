"""Right ideal classes of a maximal order: equivalence, p-neighbours and the class set."""

import itertools
import logging
from collections import deque
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError
from arithlab_toolkit.exactnum.ntheory import factorize, is_prime
from arithlab_toolkit.quat.algebra import Quaternion
from arithlab_toolkit.quat.lattice import QuatLattice
from arithlab_toolkit.quat.orders import QuatOrder, maximal_order

logger = logging.getLogger(__name__)


def ideal_norm(ideal: QuatLattice) -> Fraction:
    return ideal.norm()


def equivalence_witness(I: QuatLattice, J: QuatLattice) -> Optional[Quaternion]:
    """d with I = d J, or ``None`` when the right ideals are not left-equivalent."""
    alg = I.algebra
    nI, nJ = ideal_norm(I), ideal_norm(J)
    prod = I.product(J.conj())
    for x in prod.elements_of_norm(nI * nJ):
        d = alg.scale(1 / nJ, x)
        if J.left_mul(d) == I:
            return d
    return None


def are_equivalent(I: QuatLattice, J: QuatLattice) -> bool:
    return equivalence_witness(I, J) is not None


def stabilizer_weight(I: QuatLattice) -> int:
    """w_I = |O_L(I)^x| / 2, counted as elements of norm nu(I)^2 in I I*."""
    n = ideal_norm(I)
    count = len(I.product(I.conj()).elements_of_norm(n * n))
    if count % 2:
        raise ConsistencyError(f"odd unit count {count}")
    return count // 2


def _residue_form(I: QuatLattice, p: int):
    alg = I.algebra
    n = ideal_norm(I)
    b = I.basis
    diag = [int(alg.norm(x) / n) % p for x in b]
    cross = {(i, j): int(alg.bilinear(b[i], b[j]) / n) % p
             for i in range(4) for j in range(i + 1, 4)}

    def Q(v):
        s = sum(diag[i] * v[i] * v[i] for i in range(4))
        s += sum(c * v[i] * v[j] for (i, j), c in cross.items())
        return s % p

    def B(u, v):
        return (Q([x + y for x, y in zip(u, v)]) - Q(u) - Q(v)) % p

    return Q, B


def _span_mod_p(vectors, p: int) -> List[List[int]]:
    """Row echelon basis of the span of ``vectors`` over F_p."""
    rows = [[c % p for c in v] for v in vectors]
    basis = []
    col = 0
    while rows and col < 4:
        piv = next((r for r in rows if r[col]), None)
        if piv is not None:
            inv = pow(piv[col], -1, p)
            piv = [c * inv % p for c in piv]
            rows = [[(a - r[col] * b) % p for a, b in zip(r, piv)] for r in rows if r is not piv]
            basis.append(piv)
        rows = [r for r in rows if any(r)]
        col += 1
    return basis


def _in_span(v, basis, p) -> bool:
    return len(_span_mod_p(list(basis) + [v], p)) == len(basis)


def _complete(v0, vectors, p: int):
    """Two vectors that extend v0 to a basis of span(v0, vectors)."""
    chosen = [v0]
    for v in vectors:
        if not _in_span(v, chosen, p):
            chosen.append(v)
    if len(chosen) != 3:
        raise ConsistencyError("orthogonal complement of an isotropic vector is not 3-dim")
    return chosen[1], chosen[2]


def _kernel_of_functional(f: Sequence[int], p: int) -> List[List[int]]:
    piv = next(i for i in range(4) if f[i] % p)
    inv = pow(f[piv], -1, p)
    out = []
    for j in range(4):
        if j == piv:
            continue
        v = [0] * 4
        v[j] = 1
        v[piv] = (-f[j] * inv) % p
        out.append(v)
    return out


def p_neighbours(I: QuatLattice, order: QuatOrder, p: int) -> List[QuatLattice]:
    """The p + 1 right ideals I' in I with nu(I') = p nu(I), for p not dividing the level.

    I/pI carries the split quadric Q = nu / nu(I) mod p; each I'/pI is an isotropic plane of
    the form v O, and v runs over the projective points of the other ruling through a fixed
    isotropic v0.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    alg = I.algebra
    Q, B = _residue_form(I, p)
    v0 = next(list(v) for v in itertools.product(range(p), repeat=4) if any(v) and Q(v) == 0)

    def times_order(v) -> List[List[int]]:
        x = alg.combine(v, list(I.basis))
        return [[int(c) % p for c in I.coords(alg.mul(x, r))] for r in order.basis]

    plane_r = _span_mod_p(times_order(v0), p)
    if len(plane_r) != 2:
        raise DomainError(f"{p} divides the discriminant of the order")
    perp = _kernel_of_functional([B(v0, e) for e in _unit_vectors()], p)
    u1, u2 = _complete(v0, perp, p)
    other_plane = None
    for s, t in [(1, x) for x in range(p)] + [(0, 1)]:
        w = [(s * a + t * b) % p for a, b in zip(u1, u2)]
        if Q(w) == 0 and not _in_span(w, plane_r, p):
            other_plane = _span_mod_p([v0, w], p)
            break
    if other_plane is None:
        raise ConsistencyError(f"quadric of a right ideal is not split at {p}")
    l1, l2 = other_plane
    out = []
    seen = set()
    for s, t in [(1, x) for x in range(p)] + [(0, 1)]:
        v = [(s * a + t * b) % p for a, b in zip(l1, l2)]
        x = alg.combine(v, list(I.basis))
        gens = [alg.mul(x, r) for r in order.basis] + [alg.scale(p, e) for e in I.basis]
        J = QuatLattice.from_generators(alg, gens)
        if J not in seen:
            seen.add(J)
            out.append(J)
    if len(out) != p + 1:
        raise ConsistencyError(f"found {len(out)} neighbours at {p}, expected {p + 1}")
    return out


def _unit_vectors():
    return [[1 if i == j else 0 for j in range(4)] for i in range(4)]


def hecke_neighbours(I: QuatLattice, order: QuatOrder, n: int) -> List[QuatLattice]:
    """All right ideals I' in I with nu(I') = n nu(I), for n coprime to the level."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return [I]
    local = []
    for p, e in sorted(factorize(n).items()):
        layer = [I]
        for _ in range(e):
            nxt = {}
            for J in layer:
                for K in p_neighbours(J, order, p):
                    nxt.setdefault(K, None)
            layer = list(nxt)
        local.append((n // p ** e, layer))
    if len(local) == 1:
        return local[0][1]
    out = []
    for choice in itertools.product(*[layer for _, layer in local]):
        gens = []
        for (cof, _), L in zip(local, choice):
            gens.extend(I.algebra.scale(cof, x) for x in L.basis)
        out.append(QuatLattice.from_generators(I.algebra, gens))
    return out


def class_number_formula(N: int) -> int:
    """h for the maximal order of prime discriminant N."""
    if not is_prime(N):
        raise DomainError(f"{N} is not prime")
    if N in (2, 3):
        return 1
    extra = {1: 0, 5: 1, 7: 1, 11: 2}[N % 12]
    return N // 12 + extra


def eichler_mass(N: int) -> Fraction:
    return Fraction(N - 1, 12)


class ClassSet:
    """Representatives of the right ideal classes of a maximal order of prime level."""

    def __init__(self, order: QuatOrder, ideals: Sequence[QuatLattice], level: int):
        self.order = order
        self.ideals = list(ideals)
        self.level = level
        self.weights = [stabilizer_weight(I) for I in self.ideals]
        self._lookup: Dict[QuatLattice, int] = {I: i for i, I in enumerate(self.ideals)}
        self._brandt_module = None

    def __len__(self) -> int:
        return len(self.ideals)

    def mass(self) -> Fraction:
        return sum((Fraction(1, w) for w in self.weights), Fraction(0))

    def classify(self, J: QuatLattice) -> int:
        """Index of the class containing J."""
        hit = self._lookup.get(J)
        if hit is not None:
            return hit
        for i, I in enumerate(self.ideals):
            if are_equivalent(J, I):
                self._lookup[J] = i
                return i
        raise ConsistencyError(f"ideal {J} is in no known class")

    def to_json(self) -> dict:
        return {"level": self.level,
                "weights": self.weights,
                "mass": str(self.mass()),
                "ideals": [[[str(c) for c in q] for q in I.basis] for I in self.ideals]}


def _search_prime(N: int) -> int:
    return 3 if N == 2 else 2


def class_set(order: Union[QuatOrder, int], budget: Optional[int] = None) -> ClassSet:
    """Class set by breadth-first closure under p-neighbours from the unit ideal.

    ``order`` is a maximal order of prime discriminant, or the prime itself. The result is
    checked against the mass formula and the closed class number formula.
    """
    N = order if isinstance(order, int) else order.discriminant()
    if not is_prime(N):
        raise DomainError(f"discriminant {N} must be prime")
    cfg = get_config()
    if N > cfg.quat_disc_max:
        raise BudgetExceeded(f"discriminant {N} above {cfg.quat_disc_max}",
                             bound=cfg.quat_disc_max, key=key_for("quat_disc_max"))
    budget = budget or cfg.bfs_budget
    if isinstance(order, int):
        order = maximal_order(N)
    elif order.algebra.discriminant() != N:
        raise DomainError(f"order of discriminant {N} is not maximal")
    p = _search_prime(N)
    reps: List[QuatLattice] = [order.unit_ideal()]
    queue = deque(reps)
    steps = 0
    while queue:
        I = queue.popleft()
        for J in p_neighbours(I, order, p):
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"class search exceeded {budget} steps", bound=budget,
                                     key=key_for("bfs_budget"))
            if not any(are_equivalent(J, K) for K in reps):
                reps.append(J)
                queue.append(J)
    classes = ClassSet(order, reps, N)
    if classes.mass() != eichler_mass(N):
        raise ConsistencyError(f"mass {classes.mass()} != {eichler_mass(N)} for N={N}")
    if len(classes) != class_number_formula(N):
        raise ConsistencyError(f"{len(classes)} classes, formula gives "
                               f"{class_number_formula(N)} for N={N}")
    logger.info("N=%d: %d classes, weights %s", N, len(classes), classes.weights)
    return classes


def ideal_from_basis(order: QuatOrder, basis: Sequence[Sequence]) -> QuatLattice:
    """Right ideal spanned by ``basis``; rejects lattices that are not right ideals."""
    J = QuatLattice.from_generators(order.algebra, [tuple(Fraction(c) for c in q) for q in basis])
    if not order.is_right_ideal(J):
        raise DomainError("lattice is not a right ideal of the order")
    return J


def ideal_norm_table(classes: ClassSet) -> List[Tuple[int, Fraction, int]]:
    return [(i, ideal_norm(I), w) for i, (I, w) in enumerate(zip(classes.ideals, classes.weights))]
