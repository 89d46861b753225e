"""Trigonometric Galerkin matrices for the separated Lamé-type equation.

With ``tau = pi/2 - am(t, k)`` (so ``sn = cos tau``, ``cn = sin tau``) the
``t``-equation becomes ``D w + lam C w = h B w`` where

    D w = -(A^2 sin^2 + B^2 cos^2)(1 - k^2 cos^2) w'' - C^2 k^2 cos sin w'
    C w = k^2 cos^2 (A^2 sin^2 + B^2 cos^2)^2 w
    B w = (A^2 sin^2 + B^2 cos^2)^2 w

(``A``, ``B``, ``C`` are the roles ``axis_major``, ``axis_mid``,
``axis_minor``).  Every multiplier is a short cosine series in ``2 tau``, so
each basis function maps onto at most seven neighbours and the matrices are
banded.  The ``s``-equation is the same problem with ``a`` and ``c``
interchanged, ``k`` replaced by ``k'`` and ``h`` by ``lam - h``.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .elliptic import jacobi_am, jacobi_sn_cn_dn
from .geometry import Ellipsoid
from .numerics import inverse_iteration_eigenvector, real_generalized_eigenvalues

__all__ = [
    "BasisFamily",
    "CoefficientSet",
    "GalerkinOperator",
    "basis_for",
    "assemble",
    "eigenvalues_h",
    "eigenfunction",
    "coefficients_for_t_equation",
    "swap_for_s_equation",
    "evaluate_series",
    "evaluate_on_t",
    "DEFAULT_N",
]

DEFAULT_N = 32


class BasisFamily(enum.Enum):
    """Basis ``trig(nu * tau)`` with ``nu = 2n + offset`` for ``n >= first``."""

    COS_EVEN = ("cos", 0, 0)
    SIN_EVEN = ("sin", 0, 1)
    COS_ODD = ("cos", 1, 0)
    SIN_ODD = ("sin", 1, 0)

    def __init__(self, trig: str, offset: int, first: int):
        self.trig = trig
        self.offset = offset
        self.first = first

    def dimension(self, N: int) -> int:
        return N + 1 - self.first

    def frequencies(self, N: int) -> np.ndarray:
        return 2 * np.arange(self.first, N + 1) + self.offset

    def row_of(self, freq: int, N: int) -> int | None:
        n = (freq - self.offset) // 2
        if n < self.first or n > N:
            return None
        return n - self.first


def basis_for(kappa_left: int, kappa_right: int) -> BasisFamily:
    """Basis family for the boundary bits at ``t = 0`` (left) and ``t = K`` (right).

    A bit of 0 means Neumann, 1 means Dirichlet.  The substitution maps
    ``t = 0`` to ``tau = pi/2`` and ``t = K`` to ``tau = 0``.
    """
    table = {
        (0, 0): BasisFamily.COS_EVEN,
        (1, 1): BasisFamily.SIN_EVEN,
        (1, 0): BasisFamily.COS_ODD,
        (0, 1): BasisFamily.SIN_ODD,
    }
    try:
        return table[(int(kappa_left), int(kappa_right))]
    except KeyError:
        raise ValueError(f"boundary bits must be 0/1, got {(kappa_left, kappa_right)}") from None


@dataclass(frozen=True)
class CoefficientSet:
    """Coefficient roles in the trigonometric operators.

    ``axis_major``/``axis_mid`` build the quadratic form
    ``axis_major^2 sin^2 + axis_mid^2 cos^2``; ``axis_minor`` only enters the
    first-order term.  For the swapped ``s``-equation ``axis_major`` is the
    smallest semi-axis, so only positivity is enforced.
    """

    axis_major: float
    axis_mid: float
    axis_minor: float
    modulus_k: float

    def __post_init__(self):
        if min(self.axis_major, self.axis_mid, self.axis_minor) <= 0.0:
            raise ValueError(f"coefficient axes must be positive: {self}")
        if not (0.0 <= self.modulus_k < 1.0):
            raise ValueError(f"modulus must lie in [0, 1): {self.modulus_k!r}")

    def multipliers(self):
        """Cosine-series coefficients (in ``cos(2 j tau)``) of the three multipliers.

        Returns ``(second_order, first_order, c_series, b_series)`` where
        ``first_order`` is the coefficient of ``sin(2 tau)`` in ``C^2 k^2 cos sin``.
        """
        a2 = self.axis_major**2
        b2 = self.axis_mid**2
        c2 = self.axis_minor**2
        k2 = self.modulus_k**2
        second = (
            0.5 * (a2 + b2) - 0.125 * k2 * (a2 + 3 * b2),
            0.5 * (b2 - a2 - b2 * k2),
            0.125 * k2 * (a2 - b2),
        )
        first = 0.5 * c2 * k2
        c_series = (
            k2 * (a2 * a2 + 2 * a2 * b2 + 5 * b2 * b2) / 16,
            k2 * (15 * b2 * b2 + 2 * a2 * b2 - a2 * a2) / 32,
            k2 * (b2 - a2) * (a2 + 3 * b2) / 16,
            k2 * (a2 - b2) ** 2 / 32,
        )
        b_series = (
            (3 * a2 * a2 + 2 * a2 * b2 + 3 * b2 * b2) / 8,
            (b2 * b2 - a2 * a2) / 2,
            (a2 - b2) ** 2 / 8,
        )
        return second, first, c_series, b_series


def coefficients_for_t_equation(e: Ellipsoid) -> CoefficientSet:
    return CoefficientSet(e.a, e.b, e.c, e.k)


def swap_for_s_equation(e: Ellipsoid) -> CoefficientSet:
    """Coefficients of the ``s``-equation written as a ``t``-type problem.

    Interchanging ``a`` and ``c`` (hence ``k`` and ``k'``) turns the
    ``s``-equation into the ``t``-equation with separation constant
    ``lam - H``.
    """
    return CoefficientSet(e.c, e.b, e.a, e.k_prime)


def _times_cos_series(series, kind: str, nu: int, out: dict, scale: float = 1.0):
    """Accumulate ``scale * (sum_j m_j cos(2 j tau)) * trig(nu tau)`` into ``out``."""
    for j, m in enumerate(series):
        if m == 0.0:
            continue
        if j == 0:
            out[(kind, nu)] += scale * m
        else:
            out[(kind, nu - 2 * j)] += 0.5 * scale * m
            out[(kind, nu + 2 * j)] += 0.5 * scale * m


def _fold(terms: dict) -> dict[int, float]:
    """Rewrite negative frequencies as positive ones; drop ``sin(0)``."""
    folded: dict[int, float] = defaultdict(float)
    for (kind, f), v in terms.items():
        if kind == "cos":
            folded[abs(f)] += v
        elif f > 0:
            folded[f] += v
        elif f < 0:
            folded[-f] -= v
    return folded


def _column(op_terms: dict, basis: BasisFamily, N: int, dim: int) -> np.ndarray:
    col = np.zeros(dim)
    for f, v in _fold(op_terms).items():
        row = basis.row_of(f, N)
        if row is not None:
            col[row] += v
    return col


@dataclass(frozen=True, eq=False)
class GalerkinOperator:
    coeffs: CoefficientSet
    basis: BasisFamily
    N: int
    D: np.ndarray
    C: np.ndarray
    B: np.ndarray

    @property
    def size(self) -> int:
        return self.D.shape[0]

    @property
    def converged_size(self) -> int:
        """Number of leading eigenvalues trusted; the rest is the unconverged tail."""
        return self.N // 2 + 1

    @property
    def frequencies(self) -> np.ndarray:
        return self.basis.frequencies(self.N)


def assemble(coeffs: CoefficientSet, basis: BasisFamily, N: int = DEFAULT_N) -> GalerkinOperator:
    """Matrices ``D_N``, ``C_N``, ``B_N``; column ``j`` holds the image of basis function ``j``."""
    if N < 4:
        raise ValueError("Galerkin truncation needs N >= 4")
    second, first, c_series, b_series = coeffs.multipliers()
    dim = basis.dimension(N)
    D = np.zeros((dim, dim))
    C = np.zeros((dim, dim))
    B = np.zeros((dim, dim))
    kind = basis.trig
    for col, nu in enumerate(basis.frequencies(N)):
        nu = int(nu)
        d_terms: dict = defaultdict(float)
        # -P w'' with w'' = -nu^2 w
        _times_cos_series(second, kind, nu, d_terms, scale=nu * nu)
        # -first * sin(2 tau) * w'
        if kind == "cos":
            # w' = -nu sin(nu tau); sin2 sin(nu) = (cos(nu-2) - cos(nu+2)) / 2
            d_terms[("cos", nu - 2)] += 0.5 * first * nu
            d_terms[("cos", nu + 2)] -= 0.5 * first * nu
        else:
            # w' = nu cos(nu tau); sin2 cos(nu) = (sin(nu+2) - sin(nu-2)) / 2
            d_terms[("sin", nu + 2)] -= 0.5 * first * nu
            d_terms[("sin", nu - 2)] += 0.5 * first * nu
        c_terms: dict = defaultdict(float)
        _times_cos_series(c_series, kind, nu, c_terms)
        b_terms: dict = defaultdict(float)
        _times_cos_series(b_series, kind, nu, b_terms)
        D[:, col] = _column(d_terms, basis, N, dim)
        C[:, col] = _column(c_terms, basis, N, dim)
        B[:, col] = _column(b_terms, basis, N, dim)
    for m in (D, C, B):
        m.flags.writeable = False
    return GalerkinOperator(coeffs, basis, N, D, C, B)


def eigenvalues_h(op: GalerkinOperator, lam: float) -> np.ndarray:
    """Approximate eigenvalues ``h`` of ``D u + lam C u = h B u``, ascending.

    Only the first ``op.converged_size`` entries should be trusted.
    """
    return real_generalized_eigenvalues(op.D + lam * op.C, op.B)


def eigenfunction(op: GalerkinOperator, lam: float, n: int) -> tuple[float, np.ndarray]:
    """``(h_n, coefficients)`` with unit Euclidean norm in the basis of ``op``."""
    if not 0 <= n < op.converged_size:
        raise ValueError(f"index {n} outside the converged range [0, {op.converged_size})")
    hs = eigenvalues_h(op, lam)
    h = float(hs[n])
    u = inverse_iteration_eigenvector(op.D + lam * op.C, op.B, h)
    return h, u


def evaluate_series(op: GalerkinOperator, coeffs: np.ndarray, tau, derivative: int = 0):
    """Evaluate the Fourier series (or its 1st/2nd ``tau``-derivative) at ``tau``."""
    tau = np.asarray(tau, dtype=float)
    nu = op.frequencies.astype(float)
    arg = np.multiply.outer(tau, nu)
    if op.basis.trig == "cos":
        basis = (np.cos(arg), -nu * np.sin(arg), -nu * nu * np.cos(arg))[derivative]
    else:
        basis = (np.sin(arg), nu * np.cos(arg), -nu * nu * np.sin(arg))[derivative]
    return basis @ coeffs


def evaluate_on_t(op: GalerkinOperator, coeffs: np.ndarray, t):
    """``(w, dw/dt, d2w/dt2)`` at ``t in [0, K]`` for the modulus of ``op``.

    Uses ``d tau/dt = -dn`` and ``d2 tau/dt2 = k^2 sn cn``.
    """
    k = op.coeffs.modulus_k
    t = np.asarray(t, dtype=float)
    tau = 0.5 * math.pi - jacobi_am(t, k)
    sn, cn, dn = jacobi_sn_cn_dn(t, k)
    w = evaluate_series(op, coeffs, tau)
    w1 = evaluate_series(op, coeffs, tau, 1)
    w2 = evaluate_series(op, coeffs, tau, 2)
    return w, -dn * w1, dn * dn * w2 + k * k * sn * cn * w1
