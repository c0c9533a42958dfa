import math
from fractions import Fraction

import pytest

from arithlab_toolkit.errors import BudgetExceeded, ConsistencyError, DomainError
from arithlab_toolkit.exactnum import RatMatrix
from arithlab_toolkit.quat import (BrandtModule, QuatAlgebra, brandt_module, class_number_formula,
                                   class_set, congruence_trace_floor, eichler_mass,
                                   eichler_shimura_check, eigenbasis, hurwitz_order,
                                   ideal_from_basis, lipschitz_order, maximal_order,
                                   p_neighbours, quaternion, standard_maximal_order,
                                   systole_length_bound, theta_pair, theta_pair_direct)

h = Fraction(1, 2)

BRANDT_11 = {
    2: [[1, 3], [2, 0]],
    3: [[2, 3], [2, 1]],
    5: [[4, 3], [2, 3]],
    7: [[4, 6], [4, 2]],
}

THETA_11 = {
    (0, 0): [h, 2, 2, 4, 10, 8, 16, 8, 18, 14],
    (0, 1): [h, 0, 6, 6, 6, 6, 12, 12, 18, 18],
    (1, 1): [h, 3, 0, 3, 12, 9, 18, 6, 18, 12],
}


@pytest.fixture(scope="module")
def module11():
    return BrandtModule(class_set(11), num_threads=2)


def test_algebra_multiplication_and_norm():
    A = QuatAlgebra(-1, -11)
    i, j = quaternion(0, 1, 0, 0), quaternion(0, 0, 1, 0)
    k = A.mul(i, j)
    assert k == quaternion(0, 0, 0, 1)
    assert A.mul(j, i) == quaternion(0, 0, 0, -1)
    assert A.mul(i, i) == quaternion(-1, 0, 0, 0)
    assert A.mul(j, j) == quaternion(-11, 0, 0, 0)
    x = quaternion(1, 2, Fraction(1, 3), -1)
    assert A.norm(x) == A.mul(x, A.conj(x))[0]
    y = quaternion(0, 1, 1, 2)
    assert A.norm(A.mul(x, y)) == A.norm(x) * A.norm(y)
    assert A.mul(x, A.inverse(x)) == A.one


def test_ramification():
    assert QuatAlgebra(-1, -1).ramification() == {"inf", 2}
    assert QuatAlgebra(-1, -11).discriminant() == 11
    assert QuatAlgebra(-1, -11).is_definite()
    assert not QuatAlgebra(1, -11).is_definite()


def test_orders():
    assert lipschitz_order().discriminant() == 4
    assert not lipschitz_order().is_maximal()
    assert hurwitz_order().is_maximal()
    assert len(hurwitz_order().units()) == 24
    assert standard_maximal_order(11).discriminant() == 11
    for N in (5, 13, 17):
        order = maximal_order(N)
        assert order.discriminant() == N and order.is_maximal()
    with pytest.raises(DomainError):
        standard_maximal_order(13)


def test_neighbours_count():
    order = standard_maximal_order(11)
    for p in (2, 3):
        nbrs = p_neighbours(order.unit_ideal(), order, p)
        assert len(nbrs) == p + 1
        assert all(order.is_right_ideal(J) for J in nbrs)
        assert all(J.norm() == p for J in nbrs)


def test_class_set_11():
    classes = class_set(11)
    assert len(classes) == 2
    assert sorted(classes.weights) == [2, 3]
    assert classes.mass() == eichler_mass(11) == Fraction(5, 6)


def test_class_numbers():
    for N in (2, 3, 5, 7, 13, 23):
        assert len(class_set(N)) == class_number_formula(N)
    assert class_number_formula(13) == 1
    assert class_number_formula(23) == 3


def test_fixture_ideal_is_second_class():
    order = standard_maximal_order(11)
    I2 = ideal_from_basis(order, [(2, 0, 0, 0), (0, 2, 0, 0), (h, 1, h, 0), (1, 1 + h, 0, h)])
    classes = class_set(order)
    assert classes.weights[classes.classify(I2)] == 3
    with pytest.raises(DomainError):
        ideal_from_basis(order, [(1, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)])


def test_brandt_matrices_11(module11):
    for p, rows in BRANDT_11.items():
        assert module11.matrix(p).to_int_rows() == rows
    module11.check_invariants([2, 3, 5])
    with pytest.raises(DomainError):
        module11.matrix(11)


def test_eigenbasis_11(module11):
    vectors = eigenbasis(module11, [2, 3, 5, 7])
    eis, cusp = vectors
    assert eis.vector == [h, Fraction(1, 3)]
    assert eis.eigenvalues == {2: 3, 3: 4, 5: 6, 7: 8}
    assert cusp.vector == [1, -1]
    assert cusp.eigenvalues == {2: -2, 3: -1, 5: 1, 7: -2}


class _FixedMatrices:
    """Two classes with B(2), B(3) diagonal in the basis (1, 0), (1, 1)."""

    rank = 2
    level = 5

    def __init__(self, mats):
        self.mats = {p: RatMatrix(rows) for p, rows in mats.items()}

    def matrix(self, n):
        return self.mats[n]

    def eisenstein_vector(self):
        return [Fraction(1), Fraction(1)]


def test_eigenbasis_with_colliding_combination():
    # B(2) + 2 B(3) is 3I, so one linear combination cannot separate the eigenvectors
    module = _FixedMatrices({2: [[3, -2], [0, 1]], 3: [[0, 1], [0, 1]]})
    eis, other = eigenbasis(module, [2, 3])
    assert eis.vector == [1, 1] and eis.eigenvalues == {2: 1, 3: 1}
    assert other.vector == [1, 0] and other.eigenvalues == {2: 3, 3: 0}


def test_eigenbasis_needs_commuting_matrices():
    module = _FixedMatrices({2: [[3, -2], [0, 1]], 3: [[0, 1], [1, 0]]})
    with pytest.raises(ConsistencyError, match="do not commute"):
        eigenbasis(module, [2, 3])


def test_eichler_shimura_against_11a(module11):
    from arithlab_toolkit.elliptic import an_coefficients, curve

    a = an_coefficients(curve("11a"), 10)
    ap = {p: a[p - 1] for p in (2, 3, 5, 7)}
    assert all(eichler_shimura_check(module11, [1, -1], ap).values())


def test_theta_series_11(module11):
    for (i, j), expected in THETA_11.items():
        ei, ej = module11.basis_vector(i), module11.basis_vector(j)
        assert list(theta_pair(module11, ei, ej, 9).coeffs) == expected
        assert list(theta_pair_direct(module11, i, j, 9).coeffs) == expected


def test_eisenstein_minus_cusp_theta(module11):
    e0, f1 = module11.eisenstein_vector(), [Fraction(1), Fraction(-1)]
    assert module11.pairing(e0, e0) == Fraction(5, 6)
    assert module11.pairing(e0, f1) == 0
    E0 = theta_pair(module11, e0, e0, 9) * Fraction(6, 5)
    F1 = theta_pair(module11, f1, f1, 9) / 5
    assert list(E0.coeffs) == [Fraction(5, 12), 1, 3, 4, 7, 6, 12, 8, 15, 13]
    assert list(F1.coeffs) == [0, 1, -2, -1, 2, 1, 2, -2, 0, -2]
    theta12 = theta_pair(module11, module11.basis_vector(0), module11.basis_vector(1), 9)
    assert (E0 - F1).coeffs == (theta12 * Fraction(5, 6)).coeffs


def test_theta_past_the_level(module11):
    e0 = module11.basis_vector(0)
    series = theta_pair(module11, e0, e0, 12)
    assert list(series.coeffs) == [h, 2, 2, 4, 10, 8, 16, 8, 18, 14, 20, 2, 32]
    assert series.coeffs == theta_pair_direct(module11, 0, 0, 12).coeffs
    f = [Fraction(2), Fraction(-1)]
    pairs = {(0, 0): 4, (0, 1): -2, (1, 0): -2, (1, 1): 1}
    total = sum((c * theta_pair_direct(module11, i, j, 12).coeffs[11]
                 for (i, j), c in pairs.items()), Fraction(0))
    assert theta_pair(module11, f, f, 12).coeffs[11] == total


def test_theta_disagreement_is_reported(module11):
    module = BrandtModule(module11.classes, num_threads=1)
    e0 = module.basis_vector(0)
    theta_pair(module, e0, e0, 4)
    module._theta_direct[1][0][0][3] += 1
    with pytest.raises(ConsistencyError, match="q\\^3"):
        theta_pair(module, e0, e0, 4)


def test_brandt_report():
    report = brandt_module(11, [2, 3], precision=5)
    assert report.matrices[2].to_int_rows() == BRANDT_11[2]
    assert len(report.eigenvectors) == 2
    assert report.to_json()["level"] == 11


def test_disc_budget(monkeypatch):
    monkeypatch.setenv("ARITHLAB_QUAT_DISC_MAX", "7")
    from arithlab_toolkit import config

    monkeypatch.setattr(config, "_active", config.load_config())
    with pytest.raises(BudgetExceeded, match="ARITHLAB_QUAT_DISC_MAX"):
        class_set(11)


def test_congruence_trace_floor():
    report = congruence_trace_floor(5, 60)
    assert report.witness == (24, 5, 15, 5)
    x0, x1, x2, x3 = report.witness
    assert x0 * x0 - 2 * x1 * x1 - 3 * x2 * x2 + 6 * x3 * x3 == 1
    assert report.min_abs_trace_half == report.floor == 24
    assert report.length_bound == pytest.approx(2 * math.acosh(24))
    assert report.log_bound <= report.length_bound
    assert systole_length_bound(1) == 0.0
    with pytest.raises(DomainError):
        congruence_trace_floor(3, 10)
