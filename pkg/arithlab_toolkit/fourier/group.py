"""Finite abelian groups Z_N1 x ... x Z_Nt and complex functions on them."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.exactnum.ntheory import is_prime, lcm

logger = logging.getLogger(__name__)

CHARACTER_TABLE_MAX = 1000

Element = Union[int, Tuple[int, ...]]


class FiniteAbelianGroup:
    """G = Z_N1 x ... x Z_Nt with the symmetric form r.x = sum r_j x_j / N_j mod 1.

    Elements are ints when t = 1 and tuples otherwise. Functions on G are flat numpy arrays
    in C order over ``shape``, so the index of an element of Z_N is the element itself.
    """

    def __init__(self, invariants: Sequence[int]):
        invariants = tuple(int(n) for n in invariants)
        if not invariants or any(n < 1 for n in invariants):
            raise DomainError(f"invariant factors must be positive, got {invariants}")
        self.invariants = invariants

    @classmethod
    def zn(cls, N: int) -> "FiniteAbelianGroup":
        return cls((N,))

    @classmethod
    def fpn(cls, p: int, n: int) -> "FiniteAbelianGroup":
        if not is_prime(p) or n < 1:
            raise DomainError(f"F_p^n needs a prime p and n >= 1, got p={p}, n={n}")
        return cls((p,) * n)

    @classmethod
    def parse(cls, spec: str) -> "FiniteAbelianGroup":
        """'z101' or 'f3^4'."""
        spec = spec.strip().lower()
        try:
            if spec.startswith("z"):
                return cls.zn(int(spec[1:]))
            if spec.startswith("f") and "^" in spec:
                p, n = spec[1:].split("^")
                return cls.fpn(int(p), int(n))
        except ValueError:
            pass
        raise DomainError(f"unrecognised group {spec!r}; use zN or fP^n")

    def __repr__(self) -> str:
        return " x ".join(f"Z{n}" for n in self.invariants)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteAbelianGroup) and self.invariants == other.invariants

    def __hash__(self) -> int:
        return hash(self.invariants)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.invariants

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    @property
    def exponent(self) -> int:
        return lcm(*self.invariants)

    @property
    def is_elementary(self) -> bool:
        p = self.invariants[0]
        return is_prime(p) and all(n == p for n in self.invariants)

    @cached_property
    def coords(self) -> np.ndarray:
        """(|G|, t) integer array of all elements in index order."""
        grids = np.indices(self.invariants).reshape(self.rank, -1)
        return grids.T.astype(np.int64)

    def elements(self) -> List[Element]:
        return [self.element(i) for i in range(self.order)]

    def element(self, i: int) -> Element:
        if self.rank == 1:
            return int(i)
        return tuple(int(c) for c in self.coords[i])

    def _vector(self, x: Element) -> np.ndarray:
        if isinstance(x, (int, np.integer)):
            if self.rank != 1:
                raise DomainError(f"{x} is not an element of {self}")
            return np.array([int(x)], dtype=np.int64)
        v = np.asarray(tuple(x), dtype=np.int64)
        if v.shape != (self.rank,):
            raise DomainError(f"{x} is not an element of {self}")
        return v

    def index(self, x: Element) -> int:
        v = self._vector(x) % np.array(self.invariants)
        return int(np.ravel_multi_index(tuple(v), self.invariants))

    def indices(self, elements: Iterable[Element]) -> np.ndarray:
        return np.array(sorted({self.index(x) for x in elements}), dtype=np.int64)

    def index_of_coords(self, coords: np.ndarray) -> np.ndarray:
        """Vectorised ``index`` for an (m, t) array, reducing mod the invariants first."""
        coords = np.mod(coords, np.array(self.invariants))
        return np.ravel_multi_index(tuple(coords.T), self.invariants)

    def add(self, x: Element, y: Element) -> Element:
        return self.element(self.index(self._vector(x) + self._vector(y)))

    def neg(self, x: Element) -> Element:
        return self.element(self.index(-self._vector(x)))

    def scale(self, c: int, x: Element) -> Element:
        return self.element(self.index(c * self._vector(x)))

    def pairing(self, r: Element, x: Element) -> Fraction:
        rv, xv = self._vector(r), self._vector(x)
        total = sum(Fraction(int(a) * int(b), n) for a, b, n in zip(rv, xv, self.invariants))
        return total - math.floor(total)

    def is_bijective_multiplier(self, c: int) -> bool:
        return all(math.gcd(c, n) == 1 for n in self.invariants)

    def scale_permutation(self, c: int) -> np.ndarray:
        """perm[i] = index(c * element(i))."""
        return self.index_of_coords(c * self.coords)

    def translate_permutation(self, x: Element) -> np.ndarray:
        """perm[i] = index(element(i) + x)."""
        return self.index_of_coords(self.coords + self._vector(x))

    def phase_numerators(self, r: Element) -> np.ndarray:
        """L * (r.x) mod L for every x, with L the exponent; exact integers."""
        L = self.exponent
        weights = np.array([L // n for n in self.invariants], dtype=np.int64)
        rv = self._vector(r) % np.array(self.invariants)
        return (self.coords @ (rv * weights)) % L

    def character_table(self) -> np.ndarray:
        """chi[r, x] = e(r.x) for |G| <= CHARACTER_TABLE_MAX."""
        if self.order > CHARACTER_TABLE_MAX:
            raise DomainError(f"character table limited to |G| <= {CHARACTER_TABLE_MAX}, "
                              f"got {self.order}")
        L = self.exponent
        weights = np.array([L // n for n in self.invariants], dtype=np.int64)
        phases = (self.coords * weights) @ self.coords.T % L
        return np.exp(2j * np.pi * phases / L)

    def orthogonality_residual(self) -> float:
        """max over r != 0 of |E_x e(r.x)|, which vanishes for a finite abelian group."""
        table = self.character_table()
        means = np.abs(table.mean(axis=1))
        means[0] = 0.0
        return float(means.max()) if len(means) else 0.0


@dataclass
class GroupFunction:
    """A complex-valued function on ``group`` stored as a flat array over element indices."""

    group: FiniteAbelianGroup
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if self.values.shape != (self.group.order,):
            raise DomainError(f"function on {self.group} needs {self.group.order} values, "
                              f"got {self.values.shape[0]}")

    @classmethod
    def constant(cls, group: FiniteAbelianGroup, c: complex = 1.0) -> "GroupFunction":
        return cls(group, np.full(group.order, c, dtype=np.complex128))

    @classmethod
    def from_callable(cls, group: FiniteAbelianGroup, fn) -> "GroupFunction":
        return cls(group, np.array([fn(x) for x in group.elements()], dtype=np.complex128))

    def _check(self, other: "GroupFunction") -> None:
        if other.group != self.group:
            raise DomainError(f"functions live on different groups: {self.group} vs {other.group}")

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        self._check(other)
        return GroupFunction(self.group, self.values + other.values)

    def __sub__(self, other: "GroupFunction") -> "GroupFunction":
        self._check(other)
        return GroupFunction(self.group, self.values - other.values)

    def __mul__(self, other) -> "GroupFunction":
        if isinstance(other, GroupFunction):
            self._check(other)
            return GroupFunction(self.group, self.values * other.values)
        return GroupFunction(self.group, self.values * other)

    __rmul__ = __mul__

    def __call__(self, x: Element) -> complex:
        return complex(self.values[self.group.index(x)])

    def conj(self) -> "GroupFunction":
        return GroupFunction(self.group, np.conj(self.values))

    def reflect(self) -> "GroupFunction":
        """x -> f(-x)."""
        return GroupFunction(self.group, self.values[self.group.scale_permutation(-1)])

    def compose_scale(self, c: int) -> "GroupFunction":
        """x -> f(c x)."""
        return GroupFunction(self.group, self.values[self.group.scale_permutation(c)])

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.values.imag) <= 1e-12 * max(1.0, self.sup_norm())))

    def mean(self) -> complex:
        return complex(self.values.mean())

    def sup_norm(self) -> float:
        return float(np.abs(self.values).max())

    def l2_norm(self) -> float:
        """(E_x |f(x)|^2)^(1/2)."""
        return float(np.sqrt(np.mean(np.abs(self.values) ** 2)))

    def support(self) -> List[Element]:
        idx = np.nonzero(np.abs(self.values) > 1e-9 * max(1.0, self.sup_norm()))[0]
        return [self.group.element(i) for i in idx]


def indicator(group: FiniteAbelianGroup, A: Iterable[Element]) -> GroupFunction:
    values = np.zeros(group.order, dtype=np.complex128)
    values[group.indices(A)] = 1.0
    return GroupFunction(group, values)


def density(group: FiniteAbelianGroup, A: Iterable[Element]) -> float:
    return len(group.indices(A)) / group.order


def balanced_function(group: FiniteAbelianGroup, A: Iterable[Element]) -> GroupFunction:
    """f_A = 1_A - alpha."""
    f = indicator(group, A)
    return GroupFunction(group, f.values - f.values.real.mean())


def random_set(group: FiniteAbelianGroup, density_: float, seed: int = 0) -> List[Element]:
    """Each element kept independently with probability ``density_``."""
    if not 0 <= density_ <= 1:
        raise DomainError(f"density must lie in [0, 1], got {density_}")
    rng = np.random.default_rng(seed)
    keep = np.nonzero(rng.random(group.order) < density_)[0]
    return [group.element(i) for i in keep]


def u3_contrast_function(N: int) -> GroupFunction:
    """The quadratic phase x -> e(x^2 / N) on Z_N: small Fourier bias, U^3 norm 1."""
    G = FiniteAbelianGroup.zn(N)
    x = np.arange(N, dtype=np.int64)
    return GroupFunction(G, np.exp(2j * np.pi * ((x * x) % N) / N))
