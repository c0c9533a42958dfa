"""Truncated q-expansions with exact rational coefficients."""

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from arithlab_toolkit.errors import DomainError, PrecisionError


class QSeries:
    """a_0 + a_1 q + ... + a_N q^N + O(q^(N+1)); ``precision`` is N."""

    __slots__ = ("weight", "precision", "coeffs")

    def __init__(self, coeffs: Iterable, precision: Optional[int] = None,
                 weight: Optional[int] = None):
        cs = [Fraction(c) for c in coeffs]
        if precision is None:
            precision = len(cs) - 1
        if precision < 0:
            raise DomainError("precision must be >= 0")
        cs = (cs + [Fraction(0)] * (precision + 1 - len(cs)))[:precision + 1]
        self.coeffs = tuple(cs)
        self.precision = precision
        self.weight = weight

    def coeff(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.precision:
            raise PrecisionError(f"coefficient a_{n} needs precision {n}, "
                                 f"series known to {self.precision}", required=n)
        return self.coeffs[n]

    __getitem__ = coeff

    def truncate(self, precision: int) -> "QSeries":
        if precision > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {precision}",
                                 required=precision)
        return QSeries(self.coeffs[:precision + 1], precision, self.weight)

    def _common(self, other: "QSeries") -> int:
        return min(self.precision, other.precision)

    def __add__(self, other: "QSeries") -> "QSeries":
        n = self._common(other)
        w = self.weight if self.weight == other.weight else None
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n, w)

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs], self.precision, self.weight)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            c = Fraction(other)
            return QSeries([a * c for a in self.coeffs], self.precision, self.weight)
        n = self._common(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            out.append(sum(a[i] * b[k - i] for i in range(k + 1) if a[i] and b[k - i]))
        w = None if self.weight is None or other.weight is None else self.weight + other.weight
        return QSeries(out, n, w)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "QSeries":
        return self * (1 / Fraction(scalar))

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise DomainError("negative powers of q-series are not supported")
        result = QSeries([1], self.precision, 0 if self.weight is not None else None)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def agrees_with(self, other: "QSeries") -> bool:
        """Coefficientwise equality up to the common precision."""
        n = self._common(other)
        return self.coeffs[:n + 1] == other.coeffs[:n + 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, QSeries) and self.precision == other.precision \
            and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.precision, self.coeffs))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def first_nonzero(self) -> Optional[int]:
        return next((i for i, c in enumerate(self.coeffs) if c != 0), None)

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "precision": self.precision,
            "coeffs": [str(c.numerator) if c.denominator == 1 else
                       f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls([Fraction(s) for s in data["coeffs"]], data["precision"], data["weight"])

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.precision >= 8 else ""
        return f"QSeries(weight={self.weight}, prec={self.precision}, [{shown}{more}])"


def sigma_table(n_max: int, k: int) -> List[int]:
    """[sigma_k(0)=0, sigma_k(1), ..., sigma_k(n_max)] by a divisor sieve."""
    table = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dk = d ** k
        for m in range(d, n_max + 1, d):
            table[m] += dk
    return table


def from_sequence(values: Sequence, weight: Optional[int] = None) -> QSeries:
    return QSeries(values, len(values) - 1, weight)
