"""Shared numerical kernels: root finding, quadrature, ODE stepping, dense eigensolves."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.optimize

__all__ = [
    "RootBracket",
    "QuadratureRule",
    "SolverError",
    "find_root",
    "gauss_legendre",
    "integrate",
    "integrate_ode",
    "ode_trajectory",
    "real_generalized_eigenvalues",
    "inverse_iteration_eigenvector",
]


class SolverError(RuntimeError):
    """A numerical routine could not deliver a result satisfying its contract."""


# --------------------------------------------------------------------------- roots


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not (self.f_lo * self.f_hi < 0.0):
            raise ValueError(
                f"no sign change on [{self.lo}, {self.hi}]: "
                f"f(lo)={self.f_lo!r}, f(hi)={self.f_hi!r}"
            )

    @classmethod
    def from_function(cls, f: Callable[[float], float], lo: float, hi: float) -> "RootBracket":
        return cls(lo, hi, f(lo), f(hi))


def find_root(f: Callable[[float], float], bracket: RootBracket, rtol: float = 1e-12) -> float:
    """Root of ``f`` inside ``bracket`` by Brent's method.

    Brent's method combines inverse quadratic interpolation and secant steps
    with a bisection fallback, so it keeps regula falsi's bracketing guarantee
    without its one-sided stalling.
    """
    xtol = max(rtol, 4.0 * np.finfo(float).eps)
    x = scipy.optimize.brentq(
        f, bracket.lo, bracket.hi, xtol=xtol, rtol=xtol, maxiter=500
    )
    return float(x)


# --------------------------------------------------------------------- quadrature


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.nodes)


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule on ``[-1, 1]`` with ``order`` nodes."""
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return QuadratureRule(x, w)


DEFAULT_RULE_ORDER = 32
DEFAULT_PANELS = 8


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    panels: int = DEFAULT_PANELS,
    rule: QuadratureRule | None = None,
) -> float:
    """Composite Gauss-Legendre quadrature of a vectorised ``f`` over ``[a, b]``."""
    if not a < b:
        raise ValueError("integrate needs a < b")
    if panels < 1:
        raise ValueError("panels must be >= 1")
    rule = rule or gauss_legendre(DEFAULT_RULE_ORDER)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = mid[:, None] + half[:, None] * rule.nodes[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    return float(np.sum(half * (vals @ rule.weights)))


def integrate_checked(f, a: float, b: float, tol: float = 1e-13, **kw) -> float:
    """:func:`integrate` plus a doubled-panel self-check.

    Raises :class:`SolverError` when doubling the panel count moves the
    answer by more than ``tol`` relative to ``max(1, |I|)``.
    """
    panels = kw.pop("panels", DEFAULT_PANELS)
    coarse = integrate(f, a, b, panels=panels, **kw)
    fine = integrate(f, a, b, panels=2 * panels, **kw)
    if abs(fine - coarse) > tol * max(1.0, abs(fine)):
        raise SolverError(
            f"quadrature not converged on [{a}, {b}]: {coarse!r} vs {fine!r}"
        )
    return fine


# ---------------------------------------------------------------------- ODE steps

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


def ode_trajectory(
    rhs: Callable[[float, float], float],
    t0: float,
    t1: float,
    y0: float,
    tol: float = 1e-10,
    h0: float | None = None,
) -> tuple[list[float], list[float]]:
    """Integrate the scalar ODE ``y' = rhs(t, y)`` with Dormand-Prince 5(4).

    Local error control uses ``atol = rtol = tol``.  Returns the accepted
    mesh points and values (first same as last, so each accepted step costs
    six evaluations).
    """
    if not t0 < t1:
        raise ValueError("integrate_ode needs t0 < t1")
    span = t1 - t0
    h = h0 if h0 is not None else min(span, 0.01 * span / max(1.0, abs(rhs(t0, y0))) + 1e-3 * span)
    h_min = 1e-14 * max(1.0, abs(t0), abs(t1))
    t, y = float(t0), float(y0)
    ts, ys = [t], [y]
    a, c, e = _A, _C, _E
    k1 = rhs(t, y)
    while t < t1:
        if h < h_min:
            raise SolverError(
                f"step size underflow at t={t!r} (h={h!r}); input is stiff or singular"
            )
        last = t + h >= t1
        if last:
            h = t1 - t
        k2 = rhs(t + c[1] * h, y + h * (a[1][0] * k1))
        k3 = rhs(t + c[2] * h, y + h * (a[2][0] * k1 + a[2][1] * k2))
        k4 = rhs(t + c[3] * h, y + h * (a[3][0] * k1 + a[3][1] * k2 + a[3][2] * k3))
        k5 = rhs(
            t + c[4] * h,
            y + h * (a[4][0] * k1 + a[4][1] * k2 + a[4][2] * k3 + a[4][3] * k4),
        )
        k6 = rhs(
            t + h,
            y + h * (a[5][0] * k1 + a[5][1] * k2 + a[5][2] * k3 + a[5][3] * k4 + a[5][4] * k5),
        )
        y_new = y + h * (a[6][0] * k1 + a[6][2] * k3 + a[6][3] * k4 + a[6][4] * k5 + a[6][5] * k6)
        k7 = rhs(t + h, y_new)
        err = h * (e[0] * k1 + e[2] * k3 + e[3] * k4 + e[4] * k5 + e[5] * k6 + e[6] * k7)
        scale = tol * (1.0 + max(abs(y), abs(y_new)))
        ratio = abs(err) / scale
        if ratio <= 1.0:
            t = t1 if last else t + h
            y = y_new
            k1 = k7
            ts.append(t)
            ys.append(y)
            factor = 5.0 if ratio == 0.0 else min(5.0, 0.9 * ratio ** -0.2)
        else:
            factor = max(0.2, 0.9 * ratio ** -0.2)
        if not math.isfinite(y):
            raise SolverError(f"non-finite solution at t={t!r}")
        h *= factor
    return ts, ys


def integrate_ode(
    rhs: Callable[[float, float], float],
    t0: float,
    t1: float,
    y0: float,
    tol: float = 1e-10,
) -> float:
    """``y(t1)`` for ``y' = rhs(t, y)``, ``y(t0) = y0`` (adaptive DOPRI5)."""
    _, ys = ode_trajectory(rhs, t0, t1, y0, tol)
    return ys[-1]


# ------------------------------------------------------------------ linear algebra

_PIVOT_RTOL = 1e-13
_IMAG_RTOL = 1e-8


def _lu_of(B: np.ndarray):
    with warnings.catch_warnings():
        # singularity is reported below through the pivot test
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(B, check_finite=True)
    norm = np.linalg.norm(B, np.inf)
    smallest = np.min(np.abs(np.diag(lu)))
    if smallest <= _PIVOT_RTOL * norm:
        raise SolverError(
            f"B is numerically singular: smallest pivot {smallest:.3e} vs ||B|| {norm:.3e}"
        )
    return lu, piv


def real_generalized_eigenvalues(A, B) -> np.ndarray:
    """Real eigenvalues of ``A u = h B u`` in ascending order.

    The pencil is reduced to ``B^{-1} A`` through an LU factorisation of ``B``;
    LAPACK's ``geev`` then balances, reduces to Hessenberg form and runs the
    shifted QR iteration.  Eigenvalues whose imaginary part exceeds
    ``1e-8 * max(1, |Re|)`` are dropped.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValueError(f"need square matrices of equal size, got {A.shape} and {B.shape}")
    M = scipy.linalg.lu_solve(_lu_of(B), A)
    try:
        ev = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"QR iteration did not converge: {exc}") from exc
    keep = np.abs(ev.imag) <= _IMAG_RTOL * np.maximum(1.0, np.abs(ev.real))
    return np.sort(ev.real[keep])


def inverse_iteration_eigenvector(A, B, h: float, max_iter: int = 10) -> np.ndarray:
    """Unit right eigenvector of ``(A, B)`` for the eigenvalue closest to ``h``.

    The sign is fixed so that the largest-magnitude component is positive.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    n = A.shape[0]
    scale = np.linalg.norm(A, np.inf) + abs(h) * np.linalg.norm(B, np.inf)
    # nudge the shift off an exact eigenvalue so the factorisation stays usable
    shift = h + 1e-14 * scale
    lu = scipy.linalg.lu_factor(A - shift * B, check_finite=True)
    u = np.ones(n) / math.sqrt(n)
    for _ in range(max_iter):
        x = scipy.linalg.lu_solve(lu, B @ u)
        x /= np.linalg.norm(x)
        x *= np.sign(x[np.argmax(np.abs(x))])
        if np.linalg.norm(x - u) < 1e-13:
            return x
        u = x
    Bu = B @ u
    h_ref = float(Bu @ (A @ u)) / float(Bu @ Bu)
    if np.linalg.norm(A @ u - h_ref * Bu) <= 1e-8 * scale:
        return u
    raise SolverError(f"inverse iteration did not converge near h={h!r}")
