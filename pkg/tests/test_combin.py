import math
import random
from fractions import Fraction

import pytest

from arithlab_toolkit import config as lab_config
from arithlab_toolkit.combin import (Ambient, IncidenceInstance, cauchy_davenport,
                                     check_pluennecke, check_ruzsa_triangle, difference_set,
                                     difference_triangle, dvir_bound, energy_additive,
                                     energy_multiplicative, energy_report, f2_exhaustive,
                                     greedy_bh, greedy_mian_chowla, incidences,
                                     incidences_fp_full, iterated_sumset, kakeya_construct,
                                     kakeya_report, kakeya_verify, line_through_slope,
                                     productset, restricted_sumset, restricted_sumset_bound,
                                     ruzsa_covering, sidon_construct, sidon_upper_bounds,
                                     sidon_verify, small_doubling_f2n, st_grid_instance,
                                     sum_product_measurement, sumset)
from arithlab_toolkit.errors import BudgetExceeded, DomainError


def _random_subset(rng, n, size):
    return rng.sample(range(n), size)


def test_sumset_examples():
    Z5, Z7 = Ambient(5), Ambient(7)
    assert sumset([0, 1], [0, 1], Z5) == {0, 1, 2}
    assert cauchy_davenport([0, 1], [0, 1], 5) == (3, 3)
    assert restricted_sumset([0, 1, 2], [0, 1, 2], Z7) == {1, 2, 3}
    assert restricted_sumset_bound([0, 1, 2], [0, 1, 2], 7) == (3, 3)
    assert sumset(range(7), range(7), Z7) == set(range(7))
    assert difference_set([1, 2], [1], Ambient()) == {0, 1}
    assert iterated_sumset([0, 1], 2, 1) == {-1, 0, 1, 2}


def test_cauchy_davenport_random():
    rng = random.Random(5)
    for _ in range(50):
        A = _random_subset(rng, 13, rng.randint(1, 8))
        B = _random_subset(rng, 13, rng.randint(1, 8))
        size, bound = cauchy_davenport(A, B, 13)
        assert size >= bound
    with pytest.raises(DomainError):
        cauchy_davenport([0], [1], 12)


def test_subgroup_has_no_doubling():
    Z12 = Ambient(12)
    H = {0, 3, 6, 9}
    assert sumset(H, H, Z12) == H


def test_pluennecke_and_ruzsa_on_random_sets():
    rng = random.Random(2024)
    Z50 = Ambient(50)
    for _ in range(10):
        A = _random_subset(rng, 50, 6)
        B = _random_subset(rng, 50, 5)
        C = _random_subset(rng, 50, 7)
        assert check_pluennecke(A, B, 2, 2, Z50).margin >= 0
        assert check_ruzsa_triangle(A, B, C, Z50).margin >= 0


def test_ruzsa_triangle_equality_on_subgroup():
    H = [0, 5, 10, 15]
    assert check_ruzsa_triangle(H, H, H, Ambient(20)).margin == 0


def test_ruzsa_covering():
    rng = random.Random(9)
    Z = Ambient(101)
    for _ in range(5):
        A = _random_subset(rng, 101, 10)
        B = _random_subset(rng, 101, 20)
        X = ruzsa_covering(A, B, Z)
        assert set(X) <= set(B)
        assert len(X) <= Fraction(len(sumset(A, B, Z)), len(A))


def test_small_doubling_in_f2n():
    subgroup = list(range(8))
    report = small_doubling_f2n(subgroup)
    assert report.in_regime and report.span_size == 8
    coset = [x ^ 8 for x in subgroup]
    assert small_doubling_f2n(coset).span_size == 8
    spread = small_doubling_f2n(subgroup + [16])
    assert not spread.in_regime


def test_energies():
    A = [1, 2, 3]
    assert energy_multiplicative(A) == 15
    assert len(productset(A, A)) == 6
    report = energy_report(A)
    assert report.lower_bound == Fraction(81, 6)
    assert energy_multiplicative([7]) == 1 and energy_additive([7]) == 1
    assert energy_additive([0, 1, 2]) == 19
    geometric = [1, 2, 4, 8]
    assert energy_multiplicative(geometric) == energy_additive([0, 1, 2, 3])
    energy_report(range(1, 20), multiplicative=False)


def test_sum_product_is_measured():
    m = sum_product_measurement(range(1, 11))
    assert m["|A+A|"] == 19
    assert m["ratio"] == pytest.approx(max(19, m["|A.A|"]) / 10 ** (4 / 3))


def test_incidence_counts():
    single = IncidenceInstance([(0, 0)], [line_through_slope(1, 0)])
    assert incidences(single).count == 1
    grid = incidences(st_grid_instance(5))
    assert grid.count == 5 * 125 and grid.bound_name == "szemeredi-trotter"
    assert grid.count <= grid.bound


@pytest.mark.parametrize("p", [2, 3, 7, 13, 31])
def test_full_plane_incidences(p):
    report = incidences_fp_full(p)
    assert report.count == p ** 3 + p ** 2
    assert report.lines == p * p + p


def test_incidences_deduplicate_lines():
    lines = [line_through_slope(2, 1, 7), line_through_slope(9, 8, 7)]
    inst = IncidenceInstance([(0, 1), (1, 3)], lines, 7)
    assert len(inst.lines) == 1
    assert incidences(inst).count == 2


def test_kakeya_small_planes():
    S5 = kakeya_construct(5)
    assert len(S5) == 17 and 15 <= len(S5) <= 20
    assert kakeya_verify(S5, 5).is_kakeya
    assert kakeya_report(3).size == 7
    full = [(x, y) for x in range(5) for y in range(5)]
    assert kakeya_verify(full, 5).is_kakeya


def test_kakeya_three_dimensions():
    verdict = kakeya_report(5, 3)
    assert verdict.is_kakeya
    assert verdict.size >= dvir_bound(5, 3) == 35
    assert dvir_bound(5, 2) == 15


def test_kakeya_missing_direction():
    line = [(x, 0) for x in range(5)]
    verdict = kakeya_verify(line, 5)
    assert not verdict.is_kakeya
    with pytest.raises(DomainError):
        kakeya_construct(2)


def test_sidon_fixtures(fixtures):
    cert = sidon_verify(fixtures["sidon_maximal_35"])
    assert cert.is_sidon
    bad = sidon_verify([1, 2, 3])
    assert not bad.is_sidon
    a, b, c, d = bad.violation
    assert a + b == c + d and sorted((a, b)) != sorted((c, d))
    assert sidon_verify(fixtures["mian_chowla"][:11]).is_sidon
    assert difference_triangle([1, 2, 5]) == [[1, 3], [4]]


def test_b3_violation_is_reported():
    cert = sidon_verify([0, 1, 2, 5], h=3)
    assert not cert.is_sidon
    first, second = cert.violation
    assert sum(first) == sum(second)


def test_named_constructions():
    assert sidon_construct("erdos_turan", 5).elements == [0, 11, 24, 34, 41]
    assert sidon_construct("ruzsa", 5, g=2).elements == [3, 14, 16, 17]
    bc = sidon_construct("bose_chowla", 3, h=2, theta=(1, 1), modulus=(1, 0, 1))
    assert bc.elements == [1, 6, 7] and bc.modulus == 8
    with pytest.raises(DomainError):
        sidon_construct("ruzsa", 5, g=4)
    with pytest.raises(DomainError):
        sidon_construct("bose_chowla", 6)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_prime_constructions_verify(p):
    assert len(sidon_construct("erdos_turan", p).elements) == p
    assert len(sidon_construct("ruzsa", p).elements) == p - 1


@pytest.mark.parametrize("q,h", [(2, 2), (3, 2), (4, 2), (5, 2), (7, 2), (8, 2), (9, 2),
                                 (3, 3), (4, 3), (5, 3)])
def test_bose_chowla_verifies(q, h):
    c = sidon_construct("bose_chowla", q, h=h)
    assert len(c.elements) == q
    assert c.certificate.is_sidon


def test_upper_bounds():
    b = sidon_upper_bounds(35)
    assert b.trivial == pytest.approx(math.sqrt(70) + 0.5)
    assert math.floor(b.trivial) == 8
    assert b.refined < b.lindstrom


def test_f2_exhaustive(fixtures):
    result = f2_exhaustive(35)
    assert result.value == 8
    assert sidon_verify(result.witness).is_sidon and max(result.witness) <= 35
    # k marks need a ruler of the given length, i.e. an interval of length + 1 integers
    for k, length in fixtures["golomb_lengths"].items():
        assert result.table[length + 1] == int(k)
    assert f2_exhaustive(7).value == 4
    assert f2_exhaustive(1).value == 1
    with pytest.raises(DomainError):
        f2_exhaustive(41)


def test_f2_respects_budget():
    lab_config.set_config(lab_config.LabConfig(enum_budget=50))
    with pytest.raises(BudgetExceeded, match="ARITHLAB_ENUM_BUDGET"):
        f2_exhaustive(35)


def test_mian_chowla(fixtures):
    terms = greedy_mian_chowla(17)
    assert terms == fixtures["mian_chowla"]
    assert terms[:8] == [1, 2, 4, 8, 13, 21, 31, 45]


def test_greedy_b3():
    terms = greedy_bh(3, 8)
    assert terms[:4] == [1, 2, 5, 14]
    assert sidon_verify(terms, h=3).is_sidon
