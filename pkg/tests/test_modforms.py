from fractions import Fraction

import pytest

from arithlab_toolkit.errors import DomainError, PrecisionError
from arithlab_toolkit.modforms import (QSeries, delta_series, e8_lattice, eisenstein,
                                       eisenstein_constant, hecke_eigenvalue, hecke_Tn,
                                       is_hecke_eigenform, is_normalized_eigenform,
                                       ramanujan_bound_holds, tau, tau_values, theta_series,
                                       verify_sigma_identities)

from conftest import eta_product_delta

TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


def test_eisenstein_constants():
    assert [eisenstein_constant(k) for k in (4, 6, 8, 10)] == [240, -504, 480, -264]
    assert eisenstein_constant(12) == Fraction(65520, 691)
    assert eisenstein(4, 3).coeffs == (1, 240, 2160, 6720)


def test_delta_matches_eta_product():
    assert delta_series(30).coeffs == eta_product_delta(30).coeffs
    assert tau_values(10)[1:] == TAU


def test_tau_multiplicative_and_ramanujan():
    assert tau(6) == tau(2) * tau(3)
    assert tau(4) == tau(2) ** 2 - 2 ** 11
    assert all(ramanujan_bound_holds(p) for p in (2, 3, 5, 7, 11, 13))


def test_e4_squared_is_e8():
    assert (eisenstein(4, 20) ** 2).agrees_with(eisenstein(8, 20))


def test_sigma_identities():
    report = verify_sigma_identities(40)
    assert report.eq_sigma7_ok and report.eq_sigma9_ok
    assert not report.eq_sigma9_literal_ok


def test_delta_is_normalized_eigenform():
    report = is_normalized_eigenform(delta_series(40), [2, 3, 5])
    assert report.success
    assert report.eigenvalues[2] == -24


def test_delta_squared():
    d2 = delta_series(20) ** 2
    with pytest.raises(DomainError):
        is_normalized_eigenform(d2, [2])
    report = is_hecke_eigenform(d2, [2, 3])
    assert not report.success
    assert "T_2" in report.first_violation


def test_hecke_operators():
    d = delta_series(20)
    assert hecke_eigenvalue(d, 2) == -24
    assert hecke_Tn(d, 2).agrees_with(d * -24)
    e4 = eisenstein(4, 20)
    assert hecke_eigenvalue(e4, 3) == 1 + 3 ** 3
    with pytest.raises(PrecisionError):
        hecke_Tn(d, 3, precision=10)


def test_qseries_precision():
    f = QSeries([1, 2, 3], 2, 0)
    with pytest.raises(PrecisionError):
        f.coeff(3)
    assert (f * f).coeffs == (1, 4, 10)


def test_e8_theta_series():
    theta = theta_series(e8_lattice(), 3)
    assert theta.coeffs == (1, 240, 2160, 6720)
    assert theta.agrees_with(eisenstein(4, 3))
