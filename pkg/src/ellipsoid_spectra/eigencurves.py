"""Eigencurves ``h_n(lam)`` (``t``-equation) and ``H_m(lam)`` (``s``-equation).

Two interchangeable backends: the Galerkin matrices (fast, used for root
finding) and Prüfer shooting (independent check).  ``H_m`` is obtained as
``lam - h~_m(lam)`` from the swapped problem, which keeps the usual labels:
``H_0 > H_1 > ...`` with ``m`` zeros of the eigenfunction on ``(0, K')``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from . import galerkin, prufer
from .geometry import Ellipsoid, Parity, coefficient_p, coefficient_q
from .numerics import SolverError, integrate_checked

__all__ = [
    "EigencurveId",
    "EigencurveSample",
    "evaluate",
    "galerkin_value",
    "prufer_value",
    "slope",
    "asymptotic_ratio",
    "h_at_zero",
    "H_at_zero",
    "clear_caches",
]

Family = Literal["H", "h"]
Backend = Literal["galerkin", "prufer"]

_LAMBDA_DIGITS = 12


@dataclass(frozen=True)
class EigencurveId:
    family: Family
    index: int
    parity: Parity

    def __post_init__(self):
        if self.family not in ("H", "h"):
            raise ValueError(f"family must be 'H' or 'h', got {self.family!r}")
        if self.index < 0:
            raise ValueError("eigencurve index must be >= 0")

    @property
    def boundary_bits(self) -> tuple[int, int]:
        """``(left, right)`` bits: ``(k1, k2)`` for ``h``, ``(k3, k2)`` for ``H``."""
        p = self.parity
        return (p.k1, p.k2) if self.family == "h" else (p.k3, p.k2)


@dataclass(frozen=True)
class EigencurveSample:
    lam: float
    value: float
    backend: str
    residual: float


@lru_cache(maxsize=512)
def _operator(coeffs: galerkin.CoefficientSet, basis: galerkin.BasisFamily, N: int):
    return galerkin.assemble(coeffs, basis, N)


def _coefficients(e: Ellipsoid, family: Family) -> galerkin.CoefficientSet:
    if family == "h":
        return galerkin.coefficients_for_t_equation(e)
    return galerkin.swap_for_s_equation(e)


def operator_for(e: Ellipsoid, curve: EigencurveId, N: int = galerkin.DEFAULT_N):
    basis = galerkin.basis_for(*curve.boundary_bits)
    return _operator(_coefficients(e, curve.family), basis, N)


@lru_cache(maxsize=65536)
def _spectrum(coeffs, basis, N: int, lam: float) -> np.ndarray:
    hs = galerkin.eigenvalues_h(_operator(coeffs, basis, N), lam)
    hs.flags.writeable = False
    return hs


def clear_caches() -> None:
    """Drop cached operators and spectra (used for cold timings)."""
    _spectrum.cache_clear()
    _operator.cache_clear()


def _key(lam: float) -> float:
    # evaluate at the rounded value so the cache cannot make results order dependent
    return round(float(lam), _LAMBDA_DIGITS) + 0.0


def galerkin_value(e: Ellipsoid, curve: EigencurveId, lam: float, N: int = galerkin.DEFAULT_N) -> float:
    """``h_n(lam)`` or ``H_m(lam)`` from the Galerkin matrices."""
    lam = _key(lam)
    op = operator_for(e, curve, N)
    if curve.index >= op.converged_size:
        raise SolverError(
            f"index {curve.index} lies in the unconverged tail for N={N} "
            f"(trusted: < {op.converged_size})"
        )
    hs = _spectrum(op.coeffs, op.basis, N, lam)
    if len(hs) <= curve.index:
        raise SolverError(f"only {len(hs)} real eigenvalues at lam={lam!r}")
    h = float(hs[curve.index])
    return h if curve.family == "h" else lam - h


def _prufer_problem(e: Ellipsoid, curve: EigencurveId) -> prufer.PruferProblem:
    if curve.family == "h":
        return prufer.PruferProblem.for_t_equation(e, curve.parity)
    return prufer.PruferProblem.for_s_equation(e, curve.parity)


def prufer_value(
    e: Ellipsoid, curve: EigencurveId, lam: float, guess: float | None = None
) -> tuple[float, float]:
    """``(value, |theta(end) - target|)`` by shooting.

    ``guess`` (a value on the same curve) seeds the bracket; without it the
    bracket grows outward from ``h = 0``.
    """
    prob = _prufer_problem(e, curve)
    hint = None
    if guess is not None:
        h_guess = guess if curve.family == "h" else lam - guess
        hint = prufer.bracket_around(prob, lam, curve.index, h_guess)
    h = prufer.shoot_h(prob, lam, curve.index, hint)
    residual = abs(prufer.theta_at_end(prob, lam, h) - prob.target(curve.index))
    return (h if curve.family == "h" else lam - h), residual


def evaluate(
    e: Ellipsoid,
    curve: EigencurveId,
    lam: float,
    backend: Backend = "galerkin",
    N: int = galerkin.DEFAULT_N,
) -> EigencurveSample:
    if backend == "galerkin":
        value = galerkin_value(e, curve, lam, N)
        op = operator_for(e, curve, N)
        h = value if curve.family == "h" else _key(lam) - value
        A = op.D + _key(lam) * op.C
        u = galerkin.inverse_iteration_eigenvector(A, op.B, h)
        scale = np.linalg.norm(A, np.inf) + abs(h) * np.linalg.norm(op.B, np.inf)
        residual = float(np.linalg.norm(A @ u - h * (op.B @ u)) / scale)
        return EigencurveSample(float(lam), value, backend, residual)
    if backend == "prufer":
        value, residual = prufer_value(e, curve, lam)
        return EigencurveSample(float(lam), value, backend, residual)
    raise ValueError(f"unknown backend {backend!r}")


def slope(e: Ellipsoid, curve: EigencurveId, lam: float, N: int = galerkin.DEFAULT_N) -> float:
    """Central difference of the Galerkin eigencurve, step ``1e-4 * max(1, |lam|)``."""
    step = 1e-4 * max(1.0, abs(lam))
    hi = galerkin_value(e, curve, lam + step, N)
    lo = galerkin_value(e, curve, lam - step, N)
    return (hi - lo) / (2.0 * step)


def asymptotic_ratio(e: Ellipsoid, curve: EigencurveId, lam_large: float, N: int = galerkin.DEFAULT_N) -> float:
    """``value(lam) / lam``; tends to 1 for ``H`` and to 0 for ``h``."""
    if lam_large < 100.0:
        raise ValueError("asymptotic_ratio expects lam >= 100")
    return galerkin_value(e, curve, lam_large, N) / lam_large


def h_at_zero(e: Ellipsoid, n: int) -> float:
    """Neumann-Neumann ``h_n(0) = n^2 pi^2 / (int_0^K q dt)^2``."""
    integral = integrate_checked(lambda t: coefficient_q(e, t), 0.0, e.K)
    return (n * math.pi / integral) ** 2


def H_at_zero(e: Ellipsoid, m: int) -> float:
    """Neumann-Neumann ``H_m(0) = -m^2 pi^2 / (int_0^K' p ds)^2``."""
    integral = integrate_checked(lambda s: coefficient_p(e, s), 0.0, e.K_prime)
    return -((m * math.pi / integral) ** 2)
