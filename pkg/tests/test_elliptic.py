import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellipsoid_spectra.elliptic import complete_elliptic_K, jacobi_am, jacobi_sn_cn_dn, modulus

from oracles import complete_K, sn_cn_dn_series

moduli = st.floats(0.0, 0.995)
args = st.floats(-10.0, 10.0)


def test_K_at_zero_is_half_pi():
    assert complete_elliptic_K(0.0) == math.pi / 2
    assert modulus(0.0).K == math.pi / 2


@pytest.mark.parametrize("k", [math.sqrt(0.5), 0.9, 0.3, 0.99])
def test_K_against_quadrature(k):
    assert abs(complete_elliptic_K(k) - complete_K(k)) <= 1e-14 * complete_K(k)


def test_K_half_modulus_squared_digits():
    assert complete_elliptic_K(math.sqrt(0.5)) == pytest.approx(1.854074677, abs=1e-9)


def test_K_rejects_unit_modulus():
    with pytest.raises(ValueError):
        complete_elliptic_K(1.0)


def test_modulus_record():
    m = modulus(k2=5 / 8)
    assert abs(m.k2 + m.kp2 - 1.0) < 1e-15
    assert m.K >= math.pi / 2 and m.K_prime == pytest.approx(complete_elliptic_K(m.k_prime), abs=0)
    assert m.complement().K == m.K_prime


def test_values_at_zero_and_quarter_period():
    for k in (0.0, 0.3, 0.6, 0.95):
        assert jacobi_sn_cn_dn(0.0, k) == (0.0, 1.0, 1.0)
    K = complete_elliptic_K(0.6)
    sn, cn, dn = jacobi_sn_cn_dn(K, 0.6)
    assert abs(sn - 1) < 1e-15 and abs(cn) < 1e-15 and abs(dn - 0.8) < 1e-15


def test_series_and_duplication_oracle():
    k = math.sqrt(5 / 8)
    got = jacobi_sn_cn_dn(0.7, k)
    want = sn_cn_dn_series(0.7, k)
    assert np.allclose(got, want, atol=1e-14, rtol=0)
    sn, cn, dn = got
    assert abs(sn * sn + cn * cn - 1) < 1e-13 and abs(dn * dn + k * k * sn * sn - 1) < 1e-13


@given(args, st.floats(0.0, 0.99))
def test_against_series_oracle(t, k):
    assert np.allclose(jacobi_sn_cn_dn(t, k), sn_cn_dn_series(t, k), atol=1e-13, rtol=0)


@given(args, moduli)
def test_pythagorean_identities(t, k):
    sn, cn, dn = jacobi_sn_cn_dn(t, k)
    assert abs(sn * sn + cn * cn - 1) < 1e-12
    assert abs(dn * dn + k * k * sn * sn - 1) < 1e-12


@given(args, moduli)
def test_periods_and_parity(t, k):
    K = complete_elliptic_K(k)
    sn, cn, dn = jacobi_sn_cn_dn(t, k)
    sn4, cn4, _ = jacobi_sn_cn_dn(t + 4 * K, k)
    _, _, dn2 = jacobi_sn_cn_dn(t + 2 * K, k)
    assert abs(sn4 - sn) < 1e-11 and abs(cn4 - cn) < 1e-11 and abs(dn2 - dn) < 1e-11
    snm, cnm, dnm = jacobi_sn_cn_dn(-t, k)
    assert abs(snm + sn) < 1e-15 and abs(cnm - cn) < 1e-15 and abs(dnm - dn) < 1e-15


@given(st.floats(-50, 50))
def test_zero_modulus_degenerates_to_circular(t):
    sn, cn, dn = jacobi_sn_cn_dn(t, 0.0)
    assert abs(sn - math.sin(t)) < 1e-14 and abs(cn - math.cos(t)) < 1e-14 and dn == 1.0


def test_vectorised_matches_scalar():
    t = np.linspace(-3, 3, 17)
    sn, cn, dn = jacobi_sn_cn_dn(t, 0.7)
    for i, ti in enumerate(t):
        assert (sn[i], cn[i], dn[i]) == pytest.approx(jacobi_sn_cn_dn(float(ti), 0.7), abs=1e-16)


def test_amplitude_endpoints_and_consistency():
    k = math.sqrt(5 / 8)
    K = complete_elliptic_K(k)
    assert jacobi_am(0.0, k) == 0.0
    assert jacobi_am(K, k) == math.pi / 2
    assert abs(math.sin(jacobi_am(K / 2, k)) - jacobi_sn_cn_dn(K / 2, k)[0]) < 1e-13


def test_amplitude_rejects_outside_quarter_period():
    K = complete_elliptic_K(0.5)
    with pytest.raises(ValueError):
        jacobi_am(-0.1, 0.5)
    with pytest.raises(ValueError):
        jacobi_am(K + 0.1, 0.5)


@pytest.mark.parametrize("k", [0.1, 0.5, 0.9])
def test_amplitude_increasing_with_derivative_dn(k):
    K = complete_elliptic_K(k)
    t = np.linspace(0.0, K, 401)
    am = jacobi_am(t, k)
    assert np.all(np.diff(am) > 0)
    h = 1e-5
    inner = t[1:-1]
    fd = (jacobi_am(inner + h, k) - jacobi_am(inner - h, k)) / (2 * h)
    assert np.max(np.abs(fd - jacobi_sn_cn_dn(inner, k)[2])) < 1e-6
