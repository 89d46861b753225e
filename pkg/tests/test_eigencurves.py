import math

import pytest

from ellipsoid_spectra.eigencurves import (
    EigencurveId,
    H_at_zero,
    asymptotic_ratio,
    evaluate,
    galerkin_value,
    h_at_zero,
    prufer_value,
    slope,
)
from ellipsoid_spectra.geometry import EVEN, Parity, coefficient_p, sphere_mode
from ellipsoid_spectra.numerics import SolverError

from oracles import romberg


def test_id_validation_and_bits():
    p = Parity(1, 0, 1)
    assert EigencurveId("h", 0, p).boundary_bits == (1, 0)
    assert EigencurveId("H", 0, Parity(0, 1, 1)).boundary_bits == (1, 1)
    with pytest.raises(ValueError):
        EigencurveId("x", 0, p)
    with pytest.raises(ValueError):
        EigencurveId("h", -1, p)


def test_zero_lambda_examples(ref):
    assert abs(evaluate(ref, EigencurveId("h", 0, EVEN), 0.0).value) < 1e-10
    assert abs(evaluate(ref, EigencurveId("H", 0, EVEN), 0.0).value) < 1e-10
    integral = romberg(lambda s: coefficient_p(ref, s), 0.0, ref.K_prime)
    want = -((math.pi / integral) ** 2)
    for backend in ("galerkin", "prufer"):
        assert abs(evaluate(ref, EigencurveId("H", 1, EVEN), 0.0, backend).value - want) < 1e-8


def test_closed_forms_against_romberg(ref):
    integral = romberg(lambda s: coefficient_p(ref, s), 0.0, ref.K_prime)
    for m in range(4):
        assert abs(H_at_zero(ref, m) + (m * math.pi / integral) ** 2) < 1e-10
        assert h_at_zero(ref, m) >= 0.0


def test_sample_residuals_small(ref):
    for fam in "hH":
        for backend in ("galerkin", "prufer"):
            s = evaluate(ref, EigencurveId(fam, 2, Parity(1, 0, 1)), 7.5, backend)
            assert s.backend == backend and s.residual <= 1e-6
    with pytest.raises(ValueError):
        evaluate(ref, EigencurveId("h", 0, EVEN), 1.0, "spectral")


@pytest.mark.parametrize("parity", list(Parity.all()))
def test_backend_agreement(ref, parity):
    for fam in "hH":
        for idx in range(4):
            curve = EigencurveId(fam, idx, parity)
            for lam in (0.0, 1.0, 5.0, 10.0, 25.0):
                g = galerkin_value(ref, curve, lam)
                p, _ = prufer_value(ref, curve, lam, guess=g)
                assert abs(g - p) < 1e-7


def test_slope_examples(ref):
    k2 = 5 / 8
    assert 0.0 < slope(ref, EigencurveId("h", 0, EVEN), 0.0) < k2
    assert k2 < slope(ref, EigencurveId("H", 0, EVEN), 0.0) < 1.0


@pytest.mark.parametrize("parity", list(Parity.all()))
def test_sphere_slopes_ordered(parity):
    e = sphere_mode(k2=0.5)
    for idx in range(3):
        for lam in (0.5, 3.0, 12.0):
            dh = slope(e, EigencurveId("h", idx, parity), lam)
            dH = slope(e, EigencurveId("H", idx, parity), lam)
            assert 0.0 < dh < 0.5 < dH < 1.0


def test_asymptotic_ratios(ref):
    H0 = EigencurveId("H", 0, EVEN)
    h0 = EigencurveId("h", 0, EVEN)
    rH4, rH8 = asymptotic_ratio(ref, H0, 400.0), asymptotic_ratio(ref, H0, 800.0)
    rh4, rh8 = asymptotic_ratio(ref, h0, 400.0), asymptotic_ratio(ref, h0, 800.0)
    assert 0.8 <= rH4 <= 1.0 and 0.0 <= rh4 <= 0.2
    assert abs(1 - rH8) < abs(1 - rH4) and rh8 < rh4
    with pytest.raises(ValueError):
        asymptotic_ratio(ref, H0, 50.0)


@pytest.mark.parametrize("parity", [EVEN, Parity(1, 1, 1), Parity(0, 1, 0)])
def test_interlacing(ref, parity):
    for lam in (0.0, 3.0, 30.0):
        h = [galerkin_value(ref, EigencurveId("h", n, parity), lam) for n in range(6)]
        H = [galerkin_value(ref, EigencurveId("H", m, parity), lam) for m in range(6)]
        assert all(x < y for x, y in zip(h, h[1:]))
        assert all(x > y for x, y in zip(H, H[1:]))


def test_unconverged_index_refused(ref):
    with pytest.raises(SolverError, match="unconverged"):
        galerkin_value(ref, EigencurveId("h", 9, EVEN), 1.0, N=8)
