"""Fourier transform, convolution, solution counts of linear equations and uniformity norms.

Normalisation: f^(r) = E_x f(x) e(-r.x) and f(x) = sum_r f^(r) e(r.x), so that Parseval reads
E_x |f(x)|^2 = sum_r |f^(r)|^2 and (f * g)^ = f^ g^ for f * g(x) = E_y f(y) g(x - y).
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from arithlab_toolkit.config import get_config, key_for
from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError
from arithlab_toolkit.fourier.group import (Element, FiniteAbelianGroup, GroupFunction,
                                            balanced_function, density, indicator)

logger = logging.getLogger(__name__)

RTOL = 1e-9
DENSE_MAX = 2048
U2_BRUTE_MAX = 64

FunctionLike = Union[GroupFunction, Iterable[Element]]


def _dense_transform(values: np.ndarray, shape, sign: int, normalise: bool) -> np.ndarray:
    arr = values.reshape(shape)
    for axis, n in enumerate(shape):
        k = np.arange(n)
        W = np.exp(sign * 2j * np.pi * np.outer(k, k) / n)
        if normalise:
            W /= n
        arr = np.moveaxis(np.tensordot(W, arr, axes=([1], [axis])), 0, axis)
    return arr.reshape(-1)


def _pick_method(group: FiniteAbelianGroup, method: str) -> str:
    if method == "auto":
        return "dense" if group.order <= DENSE_MAX else "fft"
    if method not in ("dense", "fft"):
        raise DomainError(f"unknown transform method {method!r}")
    return method


def dft(f: GroupFunction, method: str = "auto") -> GroupFunction:
    """f^ indexed by frequencies r, using the same indexing as elements."""
    G = f.group
    if _pick_method(G, method) == "dense":
        return GroupFunction(G, _dense_transform(f.values, G.shape, -1, True))
    return GroupFunction(G, np.fft.fftn(f.values.reshape(G.shape)).reshape(-1) / G.order)


def inverse_dft(F: GroupFunction, method: str = "auto") -> GroupFunction:
    G = F.group
    if _pick_method(G, method) == "dense":
        return GroupFunction(G, _dense_transform(F.values, G.shape, 1, False))
    return GroupFunction(G, np.fft.ifftn(F.values.reshape(G.shape)).reshape(-1) * G.order)


def convolution(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """f * g(x) = E_y f(y) g(x - y)."""
    f._check(g)
    return inverse_dft(GroupFunction(f.group, dft(f).values * dft(g).values))


def parseval_residual(f: GroupFunction) -> float:
    lhs = float(np.mean(np.abs(f.values) ** 2))
    rhs = float(np.sum(np.abs(dft(f).values) ** 2))
    return abs(lhs - rhs) / max(lhs, 1e-300)


def inversion_residual(f: GroupFunction) -> float:
    back = inverse_dft(dft(f))
    return float(np.abs(back.values - f.values).max()) / max(f.sup_norm(), 1e-300)


def _as_function(group: FiniteAbelianGroup, f: FunctionLike) -> GroupFunction:
    if isinstance(f, GroupFunction):
        if f.group != group:
            raise DomainError(f"function lives on {f.group}, expected {group}")
        return f
    return indicator(group, f)


def _check_multipliers(group: FiniteAbelianGroup, coeffs: Sequence[int]) -> None:
    if len(coeffs) < 2:
        raise DomainError(f"a linear equation needs at least two variables, got {coeffs}")
    for i, c in enumerate(coeffs):
        if not group.is_bijective_multiplier(c):
            raise DomainError(f"coefficient c{i + 1} = {c} is not invertible on {group}")


def _real_if_possible(value: complex, funcs: Sequence[GroupFunction]):
    if all(f.is_real for f in funcs):
        return float(value.real)
    return complex(value)


def count_linear_solutions(group: FiniteAbelianGroup, coeffs: Sequence[int],
                           funcs: Sequence[FunctionLike]):
    """E over solutions of c1 x1 + ... + ct xt = 0 of prod f_i(x_i), as sum_r prod f_i^(c_i r).

    The average is the number of solutions weighted by the f_i divided by |G|^(t-1).
    """
    if len(coeffs) != len(funcs):
        raise DomainError(f"{len(coeffs)} coefficients for {len(funcs)} functions")
    _check_multipliers(group, coeffs)
    fs = [_as_function(group, f) for f in funcs]
    product = np.ones(group.order, dtype=np.complex128)
    for c, f in zip(coeffs, fs):
        product *= dft(f).values[group.scale_permutation(c)]
    return _real_if_possible(complex(product.sum()), fs)


def count_linear_solutions_brute(group: FiniteAbelianGroup, coeffs: Sequence[int],
                                 funcs: Sequence[FunctionLike], budget: Optional[int] = None):
    """The same average by running over x1..x_{t-1} and solving for x_t."""
    _check_multipliers(group, coeffs)
    fs = [_as_function(group, f) for f in funcs]
    t = len(coeffs)
    limit = budget or get_config().enum_budget
    if group.order ** t > limit:
        raise BudgetExceeded(f"brute-force count over |G|^{t} = {group.order ** t} tuples",
                             bound=limit, key=key_for("enum_budget"))
    scaled = [group.scale_permutation(c) for c in coeffs]
    # x_t = c_t^{-1} (-s): invert the permutation x -> c_t x
    last_inverse = np.empty(group.order, dtype=np.int64)
    last_inverse[scaled[-1]] = np.arange(group.order)
    neg = group.scale_permutation(-1)
    coords = group.coords
    total = 0j
    for combo in itertools.product(range(group.order), repeat=t - 1):
        weight = 1 + 0j
        for f, i in zip(fs, combo):
            weight *= f.values[i]
            if weight == 0:
                break
        if weight == 0:
            continue
        s = sum(coords[scaled[k][i]] for k, i in enumerate(combo))
        x_last = last_inverse[neg[group.index_of_coords(s[None, :])[0]]]
        total += weight * fs[-1].values[x_last]
    return _real_if_possible(total / group.order ** (t - 1), fs)


def t3_count(group: FiniteAbelianGroup, A: Iterable[Element]) -> float:
    """Density of 3-term progressions E_{x,d} 1_A(x) 1_A(x+d) 1_A(x+2d), via Fourier."""
    if group.order % 2 == 0:
        raise DomainError(f"3-AP counting needs |G| odd, got {group.order}")
    A = list(A)
    return count_linear_solutions(group, (1, -2, 1), [A, A, A])


def ap3_brute(group: FiniteAbelianGroup, A: Iterable[Element]) -> float:
    """#{(x, d) : x, x+d, x+2d in A} / |G|^2, d = 0 included."""
    mask = np.zeros(group.order, dtype=bool)
    mask[group.indices(A)] = True
    coords = group.coords
    hits = 0
    for d in coords:
        hits += int(np.count_nonzero(mask & mask[group.index_of_coords(coords + d)]
                                     & mask[group.index_of_coords(coords + 2 * d)]))
    return hits / group.order ** 2


def uniformity_norm(f: GroupFunction) -> float:
    """||f||_u = max_r |f^(r)|."""
    return float(np.abs(dft(f).values).max())


def u2_norm(f: GroupFunction) -> float:
    """||f||_{U^2} = (sum_r |f^(r)|^4)^(1/4)."""
    return float(np.sum(np.abs(dft(f).values) ** 4) ** 0.25)


def u2_norm_brute(f: GroupFunction) -> float:
    """(E_{x,a,b} f(x) conj f(x+a) conj f(x+b) f(x+a+b))^(1/4), for |G| <= U2_BRUTE_MAX."""
    G = f.group
    if G.order > U2_BRUTE_MAX:
        raise DomainError(f"4-point U^2 average limited to |G| <= {U2_BRUTE_MAX}, got {G.order}")
    add = np.stack([G.translate_permutation(G.element(a)) for a in range(G.order)], axis=1)
    v = f.values
    x = np.arange(G.order)[:, None, None]
    a = np.arange(G.order)[None, :, None]
    b = np.arange(G.order)[None, None, :]
    xa = add[x, a]
    total = np.mean(v[x] * np.conj(v[xa]) * np.conj(v[add[x, b]]) * v[add[xa, b]])
    return float(max(total.real, 0.0) ** 0.25)


@dataclass
class UniformityReport:
    sup: float
    u2: float
    l2: float

    @property
    def upper(self) -> float:
        return math.sqrt(self.sup * self.l2)

    def to_json(self) -> dict:
        return {"u": self.sup, "U2": self.u2, "L2": self.l2, "upper": self.upper}


def uniformity_sandwich(f: GroupFunction) -> UniformityReport:
    """||f||_u <= ||f||_{U^2} <= ||f||_u^(1/2) ||f||_{L^2}^(1/2), checked."""
    report = UniformityReport(uniformity_norm(f), u2_norm(f), f.l2_norm())
    tol = RTOL * max(1.0, report.u2)
    if not report.sup <= report.u2 + tol <= report.upper + 2 * tol:
        raise ConsistencyError(f"uniformity sandwich fails: {report.to_json()}")
    return report


@dataclass
class AP3Deviation:
    t3: float
    alpha: float
    bias: float

    @property
    def deviation(self) -> float:
        return abs(self.t3 - self.alpha ** 3)

    @property
    def holds(self) -> bool:
        return self.deviation <= self.bias * self.alpha + RTOL


def ap3_deviation(group: FiniteAbelianGroup, A: Iterable[Element]) -> AP3Deviation:
    """|T3(A) - alpha^3| against the bound ||f_A||_u alpha."""
    A = list(A)
    return AP3Deviation(t3_count(group, A), density(group, A),
                        uniformity_norm(balanced_function(group, A)))


def general_count_deviation(group: FiniteAbelianGroup, coeffs: Sequence[int],
                            sets: Sequence[Iterable[Element]]):
    """(|alpha_1...alpha_t - average|, prod_{i<=t-2} ||f_Ai||_u sqrt(alpha_{t-1} alpha_t))."""
    sets = [list(A) for A in sets]
    if len(sets) < 3:
        raise DomainError("the deviation bound needs t >= 3 sets")
    alphas = [density(group, A) for A in sets]
    average = count_linear_solutions(group, coeffs, sets)
    bound = math.sqrt(alphas[-2] * alphas[-1])
    for A in sets[:-2]:
        bound *= uniformity_norm(balanced_function(group, A))
    return abs(math.prod(alphas) - average), bound


def quasirandom_bound(group: FiniteAbelianGroup, t: int) -> float:
    """4 sqrt(log(4 t |G|) / |G|): random sets of density 1/2 beat it with probability 1 - 1/t."""
    n = group.order
    return 4 * math.sqrt(math.log(4 * t * n) / n)


def sumset_mask(group: FiniteAbelianGroup, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Boolean mask of X + Y from two boolean masks, exact."""
    out = np.zeros(group.order, dtype=bool)
    xs = np.nonzero(X)[0]
    ys = np.nonzero(Y)[0]
    if len(xs) > len(ys):
        xs, ys = ys, xs
    for i in xs:
        out[group.translate_permutation(group.element(i))[ys]] = True
        if out.all():
            break
    return out


def difference_mask(group: FiniteAbelianGroup, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """X - Y."""
    return sumset_mask(group, X, Y[group.scale_permutation(-1)])


def spectrum_indices(f: GroupFunction, eps: float) -> List[int]:
    coeffs = np.abs(dft(f).values)
    return [int(i) for i in np.nonzero(coeffs >= eps - RTOL * max(eps, 1.0))[0]]


def spectrum(f: GroupFunction, eps: float) -> List[Element]:
    """Spec_eps(f) = {r : |f^(r)| >= eps}; asserts |Spec| <= eps^-2 ||f||_inf^2."""
    if eps <= 0:
        raise DomainError(f"spectrum threshold must be positive, got {eps}")
    idx = spectrum_indices(f, eps)
    bound = f.sup_norm() ** 2 / eps ** 2
    if len(idx) > bound * (1 + RTOL):
        raise ConsistencyError(f"|Spec_{eps}| = {len(idx)} exceeds {bound:.3f}")
    return [f.group.element(i) for i in idx]
