import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellipsoid_spectra import galerkin
from ellipsoid_spectra.galerkin import (
    BasisFamily,
    CoefficientSet,
    assemble,
    basis_for,
    coefficients_for_t_equation,
    eigenfunction,
    eigenvalues_h,
    evaluate_on_t,
    swap_for_s_equation,
)
from ellipsoid_spectra.elliptic import complete_elliptic_K
from ellipsoid_spectra.geometry import Parity, coefficient_q, sphere_mode
from ellipsoid_spectra.prufer import PruferProblem, shoot_h

from oracles import cosine_coefficients, romberg, sign_changes

BITS = [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_basis_table():
    assert basis_for(0, 0) is BasisFamily.COS_EVEN
    assert basis_for(1, 1) is BasisFamily.SIN_EVEN
    # t = 0 maps to tau = pi/2, so Dirichlet at t = 0 with Neumann at t = K is cos((2n+1) tau)
    assert basis_for(1, 0) is BasisFamily.COS_ODD
    assert basis_for(0, 1) is BasisFamily.SIN_ODD
    with pytest.raises(ValueError):
        basis_for(2, 0)


@pytest.mark.parametrize("N", [4, 9])
def test_dimensions(ref, N):
    cs = coefficients_for_t_equation(ref)
    for fam in BasisFamily:
        op = assemble(cs, fam, N)
        dim = N if fam is BasisFamily.SIN_EVEN else N + 1
        assert op.D.shape == op.C.shape == op.B.shape == (dim, dim)
    with pytest.raises(ValueError):
        assemble(cs, BasisFamily.COS_EVEN, 3)


def _bandwidth(M):
    idx = np.argwhere(np.abs(M) > 0)
    return int(np.max(np.abs(idx[:, 0] - idx[:, 1])))


def test_bandwidths(ref):
    op = assemble(coefficients_for_t_equation(ref), BasisFamily.COS_EVEN, 12)
    assert _bandwidth(op.D) <= 2 and _bandwidth(op.C) <= 3 and _bandwidth(op.B) <= 2


@given(st.fractions(1, 5, max_denominator=7), st.fractions(1, 5, max_denominator=7))
def test_B4_band_pattern(a, b):
    a, b = float(a), float(b)
    op = assemble(CoefficientSet(a, b, 0.5, 0.5), BasisFamily.COS_EVEN, 4)
    a2, b2 = a * a, b * b
    b0 = (3 * a2 * a2 + 2 * a2 * b2 + 3 * b2 * b2) / 8
    b1 = (b2 * b2 - a2 * a2) / 4
    bb = (a2 - b2) ** 2 / 16
    want = np.array(
        [
            [b0, b1, bb, 0, 0],
            [2 * b1, b0 + bb, b1, bb, 0],
            [2 * bb, b1, b0, b1, bb],
            [0, bb, b1, b0, b1],
            [0, 0, bb, b1, b0],
        ]
    )
    assert np.allclose(op.B, want, rtol=1e-14, atol=1e-14 * b0)


def test_D_and_C_columns_match_closed_forms(ref):
    a2, b2, c2, k2 = 9.0, 4.0, 1.0, ref.k**2
    op = assemble(coefficients_for_t_equation(ref), BasisFamily.COS_EVEN, 10)
    n = 4  # interior column, no folding
    col_D, col_C = op.D[:, n], op.C[:, n]
    assert col_D[n] == pytest.approx(n * n * (2 * (a2 + b2) - 0.5 * k2 * (a2 + 3 * b2)), rel=1e-14)
    assert col_D[n - 1] == pytest.approx(n * n * (b2 - a2 - b2 * k2) + 0.5 * n * c2 * k2, rel=1e-14)
    assert col_D[n + 1] == pytest.approx(n * n * (b2 - a2 - b2 * k2) - 0.5 * n * c2 * k2, rel=1e-14)
    assert col_D[n + 2] == pytest.approx(0.25 * n * n * k2 * (a2 - b2), rel=1e-14)
    assert col_C[n] == pytest.approx(k2 * (a2 * a2 + 2 * a2 * b2 + 5 * b2 * b2) / 16, rel=1e-14)
    assert col_C[n + 1] == pytest.approx(k2 * (15 * b2 * b2 + 2 * a2 * b2 - a2 * a2) / 64, rel=1e-14)
    assert col_C[n + 2] == pytest.approx(k2 * (b2 - a2) * (a2 + 3 * b2) / 32, rel=1e-14)
    assert col_C[n + 3] == pytest.approx(k2 * (a2 - b2) ** 2 / 64, rel=1e-14)


@given(st.floats(0.2, 4), st.floats(0.2, 4), st.floats(0.2, 4), st.floats(0.0, 0.95))
def test_multipliers_against_fourier_coefficients(A, B, C, k):
    second, first, c_series, b_series = CoefficientSet(A, B, C, k).multipliers()
    quad = lambda tau: A * A * np.sin(tau) ** 2 + B * B * np.cos(tau) ** 2
    k2 = k * k
    tol = 1e-12 * max(1.0, A, B, C) ** 4
    assert np.allclose(cosine_coefficients(lambda t: quad(t) * (1 - k2 * np.cos(t) ** 2), 2), second, atol=tol)
    assert np.allclose(cosine_coefficients(lambda t: k2 * np.cos(t) ** 2 * quad(t) ** 2, 3), c_series, atol=tol)
    assert np.allclose(cosine_coefficients(lambda t: quad(t) ** 2, 2), b_series, atol=tol)
    # C^2 k^2 cos(tau) sin(tau) = first * sin(2 tau)
    assert first == pytest.approx(0.5 * C * C * k2, rel=1e-15)


def test_sphere_D_corner_vanishes():
    op = assemble(CoefficientSet(1, 1, 1, 0.6), BasisFamily.COS_EVEN, 6)
    assert op.D[0, 0] == 0.0 and np.all(op.D[:, 0] == 0.0)


def test_odd_families_differ_in_six_positions(ref):
    cs = coefficients_for_t_equation(ref)
    co = assemble(cs, BasisFamily.COS_ODD, 8)
    so = assemble(cs, BasisFamily.SIN_ODD, 8)
    six = {(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)}
    union = set()
    for name in "DCB":
        diff = np.abs(getattr(co, name) - getattr(so, name)) > 1e-13
        union |= {(int(i) + 1, int(j) + 1) for i, j in np.argwhere(diff)}
    assert union == six


def test_sine_even_is_cosine_minus_first_row_and_column_except_three(ref):
    cs = coefficients_for_t_equation(ref)
    ce = assemble(cs, BasisFamily.COS_EVEN, 8)
    se = assemble(cs, BasisFamily.SIN_EVEN, 8)
    union = set()
    for name in "DCB":
        diff = np.abs(getattr(ce, name)[1:, 1:] - getattr(se, name)) > 1e-13
        union |= {(int(i) + 1, int(j) + 1) for i, j in np.argwhere(diff)}
    assert union == {(1, 1), (1, 2), (2, 1)}


def test_reference_h0_value(ref):
    op = assemble(coefficients_for_t_equation(ref), basis_for(0, 1), 24)
    assert abs(eigenvalues_h(op, 5.0)[0] - 0.558216) < 5e-6


def test_zero_lambda_cosine_family(ref):
    op = assemble(coefficients_for_t_equation(ref), BasisFamily.COS_EVEN, 32)
    hs = eigenvalues_h(op, 0.0)
    assert abs(hs[0]) < 1e-10
    integral = romberg(lambda t: coefficient_q(ref, t), 0.0, ref.K)
    assert abs(hs[1] - (math.pi / integral) ** 2) < 1e-8
    h, u = eigenfunction(op, 0.0, 0)
    assert abs(abs(u[0]) - 1.0) < 1e-12 and np.max(np.abs(u[1:])) < 1e-12


def test_sphere_lame_values_against_shooting():
    e = sphere_mode(k2=0.5)
    op = assemble(coefficients_for_t_equation(e), BasisFamily.COS_EVEN, 12)
    prob = PruferProblem.for_t_equation(e, Parity(0, 0, 0))
    for lam in (0.0, 6.0, 20.0):
        hs = eigenvalues_h(op, lam)
        for n in range(3):
            assert abs(hs[n] - shoot_h(prob, lam, n)) < 1e-8


def test_swap_rule(ref):
    s = swap_for_s_equation(ref)
    assert (s.axis_major, s.axis_mid, s.axis_minor) == (1.0, 2.0, 3.0)
    assert abs(s.modulus_k**2 - 3 / 8) < 1e-15
    e = sphere_mode(k2=0.3)
    t, s = coefficients_for_t_equation(e), swap_for_s_equation(e)
    assert (t.axis_major, t.axis_mid, t.axis_minor) == (s.axis_major, s.axis_mid, s.axis_minor)
    assert s.modulus_k == e.k_prime and t.modulus_k == e.k


@pytest.mark.parametrize("bits", BITS)
@pytest.mark.parametrize("swapped", [False, True])
def test_eigenfunction_zero_counts_and_boundary_conditions(ref, bits, swapped):
    cs = swap_for_s_equation(ref) if swapped else coefficients_for_t_equation(ref)
    op = assemble(cs, basis_for(*bits), 32)
    K = math.pi / 2 if cs.modulus_k == 0 else complete_elliptic_K(cs.modulus_k)
    t = np.linspace(0.0, K, 2000)
    for n in range(5):
        _, u = eigenfunction(op, 5.0, n)
        w, wt, _ = evaluate_on_t(op, u, t)
        assert sign_changes(w[1:-1]) == n
        scale = np.max(np.abs(w))
        ends = evaluate_on_t(op, u, np.array([0.0, K]))
        for side, bit in zip((0, 1), bits):
            value = ends[1][side] if bit == 0 else ends[0][side]
            assert abs(value) < 1e-6 * scale


def test_sphere_eigenfunction_sign_change():
    e = sphere_mode(k2=0.5)
    op = assemble(coefficients_for_t_equation(e), BasisFamily.COS_EVEN, 12)
    _, u = eigenfunction(op, 6.0, 1)
    w, _, _ = evaluate_on_t(op, u, np.linspace(0, e.K, 2000))
    assert sign_changes(w) == 1


def test_eigenfunction_rejects_tail_index(ref):
    op = assemble(coefficients_for_t_equation(ref), BasisFamily.COS_EVEN, 8)
    with pytest.raises(ValueError):
        eigenfunction(op, 1.0, op.converged_size)


@pytest.mark.parametrize("bits", BITS)
def test_truncation_convergence(ref, bits):
    cs = coefficients_for_t_equation(ref)
    hs = {N: eigenvalues_h(assemble(cs, basis_for(*bits), N), 10.0) for N in (8, 16, 32, 64)}
    for n in range(5):
        d8 = abs(hs[8][n] - hs[16][n])
        d16 = abs(hs[16][n] - hs[32][n])
        d32 = abs(hs[32][n] - hs[64][n])
        assert d16 <= max(d8, 1e-12)
        assert d32 < 1e-9


@pytest.mark.parametrize("bits", BITS)
def test_retained_eigenvalues_real_and_simple(ref, bits):
    for cs in (coefficients_for_t_equation(ref), swap_for_s_equation(ref)):
        op = assemble(cs, basis_for(*bits), 32)
        for lam in np.linspace(0.0, 100.0, 11):
            hs = eigenvalues_h(op, lam)[: op.converged_size]
            assert len(hs) == op.converged_size
            assert np.min(np.diff(hs)) > 1e-8


def test_default_truncation():
    assert galerkin.DEFAULT_N == 32
