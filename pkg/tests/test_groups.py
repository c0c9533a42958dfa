import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.groups import (BipartiteSample, CyclicGroup, SL2Group, SymmetricGroup,
                                     adjacency_spectrum, boundary_ratio_exact, cayley_diameter,
                                     conjugation_check, counter_rng, feit_higman_lambda1,
                                     growth_profile, helfgott_ex31_instance, link_preset,
                                     nikolov_pyber_check, nikolov_pyber_threshold,
                                     orbit_stabilizer_check, projective_plane_incidence,
                                     random_expander_sample, return_probability,
                                     sample_bipartite, tripling_check, zuk_criterion)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_sl2_orders(p):
    G = SL2Group(p)
    assert G.order == p * (p * p - 1) == G.expected_order
    if p > 2:
        assert SL2Group(p, projective=True).order == G.order // 2


def test_table_matches_multiplication():
    G = SL2Group(5)
    table = G.table()
    els = G.elements()
    for i in (0, 17, 63):
        for j in (5, 44, 119):
            assert els[table.mul[i, j]] == G.mul(els[i], els[j])
    assert all(table.mul[i, table.inv[i]] == table.identity for i in range(G.order))


def test_cycle_diameter():
    assert cayley_diameter(CyclicGroup(10), [1]) == 5
    with pytest.raises(DomainError):
        cayley_diameter(CyclicGroup(10), [2])


def test_sl2_diameter_respects_ball_bound():
    G = SL2Group(5)
    diam = cayley_diameter(G, G.unipotent_pair())
    assert diam >= math.ceil(math.log(120) / math.log(5))
    assert diam <= 120


def test_growth_profiles():
    assert growth_profile(CyclicGroup(10), [0, 5]).sizes == [2, 2, 2]
    G = SL2Group(7)
    g = (1, 1, 0, 1)
    profile = growth_profile(G, [G.identity, g, G.inv(g)], 3)
    assert profile.sizes == [3, 5, 7]
    assert not profile.covers


def test_borel_example():
    ex = helfgott_ex31_instance(5)
    assert ex.size == 21
    assert ex.square < 3 * ex.size
    assert ex.double_coset == 100 and ex.cube >= 100


def test_tripling_inequality_in_sl2_f5():
    G = SL2Group(5)
    rng = counter_rng(3)
    els = G.elements()
    for _ in range(3):
        A = [els[i] for i in rng.choice(len(els), size=6, replace=False)] + [G.identity]
        lhs, rhs = tripling_check(G, A, 5)
        assert lhs <= rhs


def test_nikolov_pyber():
    assert 1188 <= nikolov_pyber_threshold(1320) <= 1189
    report = nikolov_pyber_check(11, trials=2, seed=7)
    assert report.all_covered
    assert min(report.sizes) >= report.threshold
    with pytest.raises(DomainError):
        nikolov_pyber_check(7)


def test_cycle_spectrum():
    report = adjacency_spectrum(CyclicGroup(12), [1])
    expected = np.sort(np.cos(2 * np.pi * np.arange(12) / 12))
    assert np.allclose(np.sort(report.eigenvalues), expected)
    assert report.connected and report.bipartite


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sl2_multiplicities(p):
    G = SL2Group(p)
    report = adjacency_spectrum(G, G.unipotent_pair())
    assert report.connected
    assert report.trace_residual < 1e-8
    assert report.frobenius_bound == (p - 1) // 2
    assert report.frobenius_holds


def test_orbit_stabilizer_on_s4():
    G = SymmetricGroup(4)
    stab = [g for g in G.elements() if g[0] == 0]
    check = orbit_stabilizer_check(G, G.act, stab, 0)
    assert check.orbit == 1 and check.lhs == check.rhs == 6
    rng = counter_rng(11)
    els = G.elements()
    for _ in range(5):
        A = [els[i] for i in rng.choice(24, size=5, replace=False)]
        assert orbit_stabilizer_check(G, G.act, A, 2).holds


def test_conjugation_form_in_sl2_f5():
    G = SL2Group(5)
    g = (2, 0, 0, 3)
    assert G.is_regular_semisimple(g)
    rng = counter_rng(5)
    els = G.elements()
    for _ in range(3):
        A = [els[i] for i in rng.choice(120, size=12, replace=False)] + [g]
        assert conjugation_check(G, A, g, 1).holds


def test_zuk_presets():
    path = zuk_criterion(link_preset("z-pm12"))
    assert path.lambda1 == pytest.approx(0.5, abs=1e-9)
    assert not path.has_property_t
    fano = zuk_criterion(link_preset("fano"))
    assert fano.lambda1 == pytest.approx(1 - math.sqrt(2) / 3, abs=1e-9)
    assert fano.has_property_t
    assert zuk_criterion(link_preset("k4")).lambda1 == pytest.approx(4 / 3)


def test_feit_higman_on_pg2_3():
    verdict = zuk_criterion(projective_plane_incidence(3))
    assert verdict.lambda1 == pytest.approx(feit_higman_lambda1(3), abs=1e-9)


def test_zuk_disconnected_is_inconclusive():
    graph = nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(3))
    verdict = zuk_criterion(graph)
    assert verdict.lambda1 is None and "inconclusive" in verdict.status


def test_identity_permutations_give_matching():
    sample = BipartiteSample(6, [tuple(range(6))] * 5)
    h_prime, h = boundary_ratio_exact(sample, with_h=True)
    assert h_prime == 1
    assert h >= h_prime - 1


def test_exact_h_spot_check():
    for t in range(3):
        h_prime, h = boundary_ratio_exact(sample_bipartite(6, 5, 1, t), with_h=True)
        assert h >= h_prime - 1


def test_random_expanders_monotone_in_k():
    fractions = [random_expander_sample(8, k, trials=40, seed=1).fraction for k in (5, 6, 7)]
    assert fractions == sorted(fractions)
    assert 0 <= fractions[0] <= 1


def test_return_probabilities():
    assert return_probability("zd", 4, d=2).value == Fraction(36, 256)
    assert return_probability("zd", 0).value == 1
    free = return_probability("free", 4)
    assert free.probabilities == [1, Fraction(1, 4), Fraction(7, 64)]
    G = CyclicGroup(10)
    assert return_probability("group", 2, group=G, generators=[1, 9]).value == Fraction(1, 2)
    with pytest.raises(DomainError):
        return_probability("group", 2, group=G, generators=[1])
    with pytest.raises(DomainError):
        return_probability("zd", 3)


def test_free_group_growth_rate():
    walk = return_probability("free", 40)
    assert walk.growth_limit() == pytest.approx(math.sqrt(3) / 2, abs=0.02)
    roots = walk.roots()
    assert roots[-1] <= math.sqrt(3) / 2
