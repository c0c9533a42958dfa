import math
from fractions import Fraction

import numpy as np
import pytest

from arithlab_toolkit import config as lab_config
from arithlab_toolkit.algebraic import (AlgebraicNumber, DiscreteMeasure, certified_roots,
                                        discriminant, energy_height_gap, equidistribution_stats,
                                        is_root_of_unity, lehmer_polynomial,
                                        mahler_identity_check, mahler_measure, minpoly_power,
                                        northcott_enumerate, orbit_energy, power_resultant,
                                        ramanujan_sum, resultant, root_of_unity_order,
                                        roots_of_unity_sequence, weil_height)
from arithlab_toolkit.errors import BudgetExceeded, DomainError
from arithlab_toolkit.exactnum import IntPoly, cyclotomic_poly, euler_phi, moebius_mu

PHI = (1 + math.sqrt(5)) / 2


def golden():
    return AlgebraicNumber.from_poly([-1, -1, 1], root_index=1)


@pytest.mark.parametrize("coeffs,expected", [
    ([-1] + [0] * 11 + [1], 1.0),
    ([-1, -1, 1], PHI),
    ([-1, 2], 2.0),
    ([3], 3.0),
    ([-3, 7, -5, 1], 3.0),  # (x - 1)^2 (x - 3)
])
def test_mahler_measure_examples(coeffs, expected):
    m = mahler_measure(coeffs)
    assert float(m) == pytest.approx(expected, abs=1e-12)
    assert m.err < 1e-12


def test_lehmer_measure(fixtures):
    m = mahler_measure(lehmer_polynomial())
    assert m.contains(float(fixtures["lehmer_mahler"]), slack=1e-15)


def test_mahler_multiplicative_on_random_pairs():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        f, g = ([int(c) for c in rng.integers(-5, 6, size=int(rng.integers(2, 10)))]
                for _ in range(2))
        f[-1] = f[-1] or 1
        g[-1] = g[-1] or 1
        assert mahler_identity_check(f, g).holds


def test_resultant_and_discriminant():
    f = IntPoly([-1, 0, 1])
    assert resultant(f, f.derivative()) == -4
    assert discriminant(f) == 4
    assert discriminant([-1, -1, 1]) == 5
    assert discriminant([1, -2, 1]) == 0
    assert resultant([-2, 1], [-3, 1]) == -1
    assert discriminant(cyclotomic_poly(5)) == 125
    with pytest.raises(DomainError):
        discriminant([7])


def test_weil_height_examples():
    assert float(weil_height(AlgebraicNumber.from_rational(2))) == pytest.approx(math.log(2))
    assert float(weil_height(AlgebraicNumber.from_rational(Fraction(3, 4)))) == pytest.approx(
        math.log(4))
    assert float(weil_height(AlgebraicNumber.root_of_unity(12))) == pytest.approx(0, abs=1e-12)
    h = weil_height(golden())
    assert float(h) == pytest.approx(0.5 * math.log(PHI), abs=1e-12)
    assert float(h) == pytest.approx(0.2406, abs=1e-4)


def test_inverse_uses_reverse_polynomial():
    inv = golden().inverse()
    assert complex(inv.value).real == pytest.approx(1 / PHI)
    assert inv.minpoly == IntPoly([1, -1, -1]).primitive_part()


def test_root_of_unity_detection():
    assert root_of_unity_order(AlgebraicNumber.root_of_unity(7)) == 7
    assert is_root_of_unity(AlgebraicNumber.from_rational(-1))
    assert root_of_unity_order(AlgebraicNumber.from_poly([1, 0, 1])) == 4
    assert not is_root_of_unity(golden())
    assert not is_root_of_unity(AlgebraicNumber.from_rational(0))
    assert not is_root_of_unity(AlgebraicNumber.from_poly([5, -6, 5]))
    assert not is_root_of_unity(AlgebraicNumber.from_poly(lehmer_polynomial().coeffs, 9))


def test_powers_of_algebraic_numbers():
    assert power_resultant(IntPoly([-2, 0, 1]), 2) == IntPoly([4, -4, 1])
    sqrt2 = AlgebraicNumber.from_poly([-2, 0, 1], 1)
    assert minpoly_power(sqrt2, 2).minpoly == IntPoly([-2, 1])
    zeta12 = AlgebraicNumber.root_of_unity(12)
    assert minpoly_power(zeta12, 3).minpoly == IntPoly([1, 0, 1])
    alpha = AlgebraicNumber.from_poly([-1, -1, 0, 1])
    for k in range(2, 6):
        power = minpoly_power(alpha, k)
        assert power.degree <= alpha.degree
        assert float(weil_height(power)) == pytest.approx(k * float(weil_height(alpha)))


def test_orbit_energy():
    energy = orbit_energy(golden())
    assert float(energy) == pytest.approx(-0.25 * math.log(5), abs=1e-12)
    gap = energy_height_gap(golden())
    assert gap.gap > 0
    two = energy_height_gap(AlgebraicNumber.from_rational(2))
    assert float(two.energy) == 0
    assert float(two.gap) == pytest.approx(2 * math.log(2))
    for n in (5, 8, 9):
        result = energy_height_gap(AlgebraicNumber.root_of_unity(n))
        assert float(result.energy) <= 1e-12


@pytest.mark.parametrize("n,k,expected", [(12, 4, -2), (7, 3, -1), (13, 1, -1), (12, 6, -4)])
def test_ramanujan_examples(n, k, expected):
    assert ramanujan_sum(n, k) == expected


def test_ramanujan_diagonal_and_grid():
    for n in range(1, 31):
        assert ramanujan_sum(n, n) == euler_phi(n)
        assert ramanujan_sum(n, 1) == moebius_mu(n)
    for n in range(1, 301):
        for k in range(1, 13):
            ramanujan_sum(n, k)


def test_equidistribution_of_roots_of_unity():
    rows = equidistribution_stats(roots_of_unity_sequence(12), k_max=4, num_threads=2)
    for n, row in enumerate(rows, start=1):
        assert row.degree == euler_phi(n)
        assert row.weyl[0].real == pytest.approx(moebius_mu(n) / euler_phi(n), abs=1e-12)
        assert row.in_window
    assert rows[1].discrepancy == pytest.approx(0.5)


def test_weyl_sums_for_101():
    [row] = equidistribution_stats([AlgebraicNumber.root_of_unity(101)], k_max=10)
    assert row.weyl_abs == pytest.approx([0.01] * 10, abs=1e-12)


def test_modulus_window_is_reported():
    [row] = equidistribution_stats([golden()], k_max=2)
    assert row.outside_window == 2
    measure = DiscreteMeasure((1j, -1j))
    assert measure.moment(2) == pytest.approx(-1)


def test_northcott_small_cases():
    result = northcott_enumerate(1, math.log(2))
    expected = {Fraction(s) * e for s in (1, 2, Fraction(1, 2)) for e in (1, -1)}
    assert set(result.rationals()) == expected
    assert len(result.rationals()) == 6
    cyclo = northcott_enumerate(2, 0)
    polys = {e.poly for e in cyclo.entries}
    assert polys == {IntPoly([-1, 1]), IntPoly([1, 1]), cyclotomic_poly(3), cyclotomic_poly(4),
                     cyclotomic_poly(6)}
    assert cyclo.count == 8


def test_northcott_height_zero_is_roots_of_unity():
    result = northcott_enumerate(3, 0)
    assert all(is_root_of_unity(AlgebraicNumber(e.poly)) for e in result.entries)
    assert max(e.degree for e in result.entries) == 2


def test_northcott_budgets(monkeypatch):
    with pytest.raises(BudgetExceeded):
        northcott_enumerate(5, 0)
    with pytest.raises(BudgetExceeded, match="ARITHLAB_ENUM_BUDGET"):
        northcott_enumerate(4, math.log(3))
    monkeypatch.setattr(lab_config, "_active", lab_config.LabConfig(enum_budget=10))
    with pytest.raises(BudgetExceeded):
        northcott_enumerate(2, 0)


def test_input_validation():
    with pytest.raises(DomainError):
        certified_roots(IntPoly([1, -2, 1]))
    with pytest.raises(DomainError):
        AlgebraicNumber.from_poly([-1, 0, 1])
    with pytest.raises(DomainError):
        AlgebraicNumber.root_of_unity(6, 2)
    payload = weil_height(golden()).to_json()
    assert payload["value"].startswith("0.2406") and payload["err"] < 1e-12
