import math
from fractions import Fraction

import numpy as np
import pytest

from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.fourier import (FiniteAbelianGroup, GroupFunction, ap3_brute,
                                      ap3_deviation, balanced_function, behrend_parameters,
                                      behrend_set, bogolyubov_certificate, bohr_set,
                                      check_bohr_bounds, check_bohr_doubling, convolution,
                                      count_linear_solutions, count_linear_solutions_brute,
                                      density_increment_vs, density_increment_zn, dft,
                                      general_count_deviation, indicator, inverse_dft,
                                      inversion_residual, is_ap3_free, parseval_residual,
                                      quasirandom_bound, random_set, roth_graph, spectrum,
                                      t3_count, u2_norm, u2_norm_brute, u3_contrast_function,
                                      uniformity_norm, uniformity_sandwich)

Z = FiniteAbelianGroup.zn


def _random_function(G, seed):
    rng = np.random.default_rng(seed)
    return GroupFunction(G, rng.normal(size=G.order) + 1j * rng.normal(size=G.order))


def test_group_basics():
    G = FiniteAbelianGroup.fpn(3, 2)
    assert G.order == 9 and G.elements()[4] == (1, 1)
    assert G.index((2, 1)) == 7
    assert G.pairing((1, 2), (1, 1)) == 0
    assert G.pairing((1, 0), (2, 0)) == Fraction(2, 3)
    assert FiniteAbelianGroup.parse("f3^4") == FiniteAbelianGroup.fpn(3, 4)
    with pytest.raises(DomainError):
        FiniteAbelianGroup.fpn(4, 2)


@pytest.mark.parametrize("G", [Z(12), FiniteAbelianGroup.fpn(3, 2), FiniteAbelianGroup((2, 6))])
def test_characters_are_orthogonal(G):
    assert G.orthogonality_residual() < 1e-12
    table = G.character_table()
    assert np.allclose(table @ table.conj().T / G.order, np.eye(G.order))


def test_constant_function_transform():
    G = Z(10)
    F = dft(GroupFunction.constant(G))
    expected = np.zeros(10)
    expected[0] = 1
    assert np.allclose(F.values, expected)


def test_parseval_and_inversion():
    for seed in range(5):
        f = _random_function(Z(10), seed)
        assert parseval_residual(f) < 1e-9
        assert inversion_residual(f) < 1e-10 * f.group.order


def test_dense_and_fft_agree():
    for G in (Z(64), FiniteAbelianGroup.fpn(3, 5)):
        f = _random_function(G, 7)
        assert np.allclose(dft(f, "dense").values, dft(f, "fft").values, atol=1e-12)
        assert np.allclose(inverse_dft(dft(f), "fft").values, f.values)


def test_convolution_support_is_sumset():
    G = Z(7)
    conv = convolution(indicator(G, [0, 1]), indicator(G, [0, 3]))
    assert conv.support() == [0, 1, 3, 4]


def test_linear_solutions_small_example():
    G = Z(5)
    assert count_linear_solutions(G, (1, -2, 1), [[0, 1]] * 3) == pytest.approx(2 / 25)
    assert count_linear_solutions_brute(G, (1, -2, 1), [[0, 1]] * 3) == pytest.approx(2 / 25)
    full = list(range(5))
    assert count_linear_solutions(G, (1, 1, 3), [full] * 3) == pytest.approx(1.0)


def test_non_bijective_coefficient():
    with pytest.raises(DomainError, match="c2 = 2"):
        count_linear_solutions(Z(10), (1, 2, 1), [[0]] * 3)


def test_fourier_count_matches_brute_force():
    rng = np.random.default_rng(11)
    groups = [Z(7), Z(11), FiniteAbelianGroup.fpn(3, 2), FiniteAbelianGroup((5, 5)), Z(13)]
    for trial in range(20):
        G = groups[trial % len(groups)]
        t = 3 + trial % 2
        units = [c for c in range(1, G.exponent) if G.is_bijective_multiplier(c)]
        coeffs = [int(rng.choice(units)) * int(rng.choice([1, -1])) for _ in range(t)]
        sets = [random_set(G, 0.4, seed=100 * trial + i) for i in range(t)]
        fourier = count_linear_solutions(G, coeffs, sets)
        brute = count_linear_solutions_brute(G, coeffs, sets)
        assert fourier == pytest.approx(brute, abs=1e-6)


def test_t3_identity():
    G = Z(101)
    for seed in range(3):
        A = random_set(G, 0.3, seed)
        assert t3_count(G, A) == pytest.approx(ap3_brute(G, A), abs=1e-9)
    with pytest.raises(DomainError):
        t3_count(Z(10), [1, 2])


def test_uniformity_norms():
    G = Z(32)
    character = GroupFunction.from_callable(G, lambda x: np.exp(2j * np.pi * 5 * x / 32))
    assert uniformity_norm(character) == pytest.approx(1.0)
    rng = np.random.default_rng(3)
    signs = GroupFunction(G, rng.choice([-1.0, 1.0], size=32))
    assert u2_norm(signs) == pytest.approx(u2_norm_brute(signs), abs=1e-9)
    uniformity_sandwich(signs)


def test_u3_contrast_function():
    f = u3_contrast_function(101)
    assert uniformity_norm(f) == pytest.approx(1 / math.sqrt(101))
    assert f.sup_norm() == pytest.approx(1.0)


def test_ap3_deviation_bound():
    G = Z(101)
    for seed in range(25):
        assert ap3_deviation(G, random_set(G, 0.2 + 0.02 * seed, seed)).holds


def test_general_count_bound():
    G = Z(31)
    for seed in range(10):
        sets = [random_set(G, 0.5, seed * 10 + i) for i in range(4)]
        deviation, bound = general_count_deviation(G, (1, 2, -3, 5), sets)
        assert deviation <= bound + 1e-9


def test_random_sets_are_quasirandom():
    G = Z(1009)
    bound = quasirandom_bound(G, 10)
    passed = sum(uniformity_norm(balanced_function(G, random_set(G, 0.5, seed))) <= bound
                 for seed in range(10))
    assert passed >= 9


def test_bohr_set_membership():
    B = bohr_set(Z(10), [1], 0.2)
    assert B.members == [0, 1, 2, 8, 9]
    assert bohr_set(Z(10), [], Fraction(1, 100)).size == 10
    members = set(B.members)
    assert all((-x) % 10 in members for x in members)


def test_bohr_bounds_and_doubling():
    G = Z(101)
    B = bohr_set(G, [1, 17], 0.07)
    bounds = check_bohr_bounds(B)
    assert 0.07 ** 2 * 101 <= B.size
    assert bounds.min_coefficient_ratio >= 0.5
    for lam in (2, Fraction(5, 2)):
        big, bound = check_bohr_doubling(G, [1, 17], Fraction(7, 100), lam)
        assert big <= bound


def test_spectrum_bound():
    G = Z(50)
    A = random_set(G, 0.5, 4)
    f = indicator(G, A)
    S = spectrum(f, 0.1)
    assert 0 in S
    assert len(S) <= 1 / 0.1 ** 2


def test_bogolyubov_trivial_and_interval():
    G = Z(11)
    cert = bogolyubov_certificate(G, range(11))
    assert cert.frequencies == [0] and cert.contained
    N = 101
    cert = bogolyubov_certificate(Z(N), range(N // 4))
    assert cert.contained
    assert len(cert.frequencies) <= 32


def test_bogolyubov_random_set():
    G = Z(501)
    cert = bogolyubov_certificate(G, random_set(G, 0.3, 17))
    assert cert.contained
    assert len(cert.frequencies) <= cert.frequency_bound


def test_density_increment_on_hyperplane():
    G = FiniteAbelianGroup.fpn(3, 4)
    A = [x for x in G.elements() if x[0] == 1]
    inc = density_increment_vs(G, A)
    assert inc.c == pytest.approx(1.0)
    assert inc.density == 1.0 and inc.certified
    with pytest.raises(DomainError):
        density_increment_vs(G, G.elements())


def test_density_increment_on_progressions():
    evens = list(range(2, 101, 2))
    inc = density_increment_zn(evens, 100, 50, modulus=101)
    assert inc.certified
    assert inc.density >= 0.5 * (1 + inc.c / 4)
    assert all(1 <= x <= 100 for x in inc.elements())
    assert len(set(inc.elements()) & set(evens)) / inc.length == inc.density
    with pytest.raises(DomainError):
        density_increment_zn(evens, 100, 50, c=5.0, modulus=101)


def test_behrend_sets():
    small = behrend_set(26, m=3, d=3)
    assert small.elements == [2, 4, 10]
    assert is_ap3_free(small.elements)
    for N in (10, 26, 200, 1000):
        B = behrend_set(N)
        assert is_ap3_free(B.elements) and max(B.elements) <= N
        assert len(B.elements) == behrend_parameters(N).size
    assert not is_ap3_free([1, 4, 7])
    with pytest.raises(DomainError):
        behrend_set(9)


def test_roth_graph():
    assert roth_graph([1], 1).triangles == 1
    g = roth_graph([1, 2, 3], 3)
    assert g.triangles == 15 and g.solutions == 5
    free = roth_graph([1, 2, 4, 5], 5)
    assert free.triangles == 5 * 4 and free.edge_disjoint
