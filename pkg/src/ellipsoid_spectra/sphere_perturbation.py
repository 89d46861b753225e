"""Sphere limit (Lamé polynomials) and first-order perturbation off the sphere.

The family ``E(eps)`` has semi-axes ``a = (1 + k^2 eps)^(1/2)``, ``b = 1``,
``c = (1 - k'^2 eps)^(1/2)`` and keeps the modulus ``k`` for every ``eps``.
At ``eps = 0`` it is the unit sphere and ``lam_{m,n,kappa}(0) = l (l + 1)``
with ``l = 2m + 2n + |kappa|``.  The slope ``lam'(0)`` follows from the
implicit function theorem applied to ``H_m(lam, eps) = h_n(lam, eps)``:

    lam'(0) = -(H_eps - h_eps) / (H_lam - h_lam)

where each partial is a Rayleigh-type quotient of the sphere-limit Lamé
functions ``w`` (in ``t``, modulus ``k``) and ``v`` (in ``s``, modulus ``k'``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import galerkin
from .elliptic import jacobi_sn_cn_dn, modulus
from .geometry import Ellipsoid, Parity, sphere_mode
from .numerics import integrate
from .spectrum import intersect, lambda_sphere

__all__ = [
    "SphereFamily",
    "LamePolynomialL2",
    "PerturbationPartials",
    "lambda_sphere",
    "states_with_label",
    "perturbation_partials",
    "perturbation_derivative_quadrature",
    "perturbation_derivative_fd",
    "lambda_on_family",
    "lame_l2_residual",
    "closed_form_l2",
]

# exact Lamé polynomials are finite Fourier sums; 16 harmonics is far beyond l <= 6
SPHERE_N = 16
_PANELS = 8


@dataclass(frozen=True)
class SphereFamily:
    k: float
    epsilon: float

    def __post_init__(self):
        if not 0.0 < self.k < 1.0:
            raise ValueError(f"k must lie in (0, 1), got {self.k!r}")
        kp2 = 1.0 - self.k**2
        if not -1.0 / self.k**2 < self.epsilon < 1.0 / kp2:
            raise ValueError(f"epsilon must lie in (-k^-2, k'^-2), got {self.epsilon!r}")

    @property
    def axes(self) -> tuple[float, float, float]:
        k2 = self.k**2
        return (
            math.sqrt(1.0 + k2 * self.epsilon),
            1.0,
            math.sqrt(1.0 - (1.0 - k2) * self.epsilon),
        )

    def analytic_ellipsoid(self) -> Ellipsoid:
        """``E(eps)`` with its axes as given (``a < b < c`` when ``eps < 0``).

        The separated equations only need positive coefficients, so this is
        the analytic continuation of the family through the sphere.
        """
        a, b, c = self.axes
        return Ellipsoid(a, b, c, modulus(self.k))

    def ordered(self) -> tuple[Ellipsoid, "Relabel"]:
        """An ellipsoid with ``a > b > c`` isometric to ``E(eps)``, and the index map.

        For ``eps < 0`` the ``x`` and ``z`` axes are interchanged.  The new
        modulus is ``k'``, the ``s``- and ``t``-equations trade places, so
        ``(m, n, (k1, k2, k3))`` becomes ``(n, m, (k3, k2, k1))``.
        """
        if self.epsilon == 0.0:
            raise ValueError("E(0) is the sphere; use sphere_mode")
        a, b, c = self.axes
        mod = modulus(self.k)
        if self.epsilon > 0.0:
            return Ellipsoid(a, b, c, mod), Relabel(False)
        return Ellipsoid(c, b, a, mod.complement()), Relabel(True)


@dataclass(frozen=True)
class Relabel:
    swap: bool

    def __call__(self, m: int, n: int, parity: Parity) -> tuple[int, int, Parity]:
        if not self.swap:
            return m, n, parity
        return n, m, Parity(parity.k3, parity.k2, parity.k1)


def states_with_label(ell: int) -> list[tuple[int, int, Parity]]:
    """All ``(m, n, kappa)`` with ``2m + 2n + |kappa| = ell``; there are ``2 ell + 1``."""
    out = []
    for parity in Parity.all():
        rest = ell - parity.weight
        if rest < 0 or rest % 2:
            continue
        for m in range(rest // 2 + 1):
            out.append((m, rest // 2 - m, parity))
    return out


@dataclass(frozen=True)
class PerturbationPartials:
    H_lam: float
    H_eps: float
    h_lam: float
    h_eps: float

    @property
    def derivative(self) -> float:
        return -(self.H_eps - self.h_eps) / (self.H_lam - self.h_lam)


def _lame_function(coeffs: galerkin.CoefficientSet, bits, index: int, lam: float, N: int):
    op = galerkin.assemble(coeffs, galerkin.basis_for(*bits), N)
    _, u = galerkin.eigenfunction(op, lam, index)
    return op, u


def _quotients(op, u, k: float) -> tuple[float, float, float]:
    """``(int w^2, int sn^2 w^2, int cn w (cn w')')`` over ``[0, K(k)]``."""
    K = modulus(k).K

    def parts(t):
        w, w1, w2 = galerkin.evaluate_on_t(op, u, t)
        sn, cn, dn = jacobi_sn_cn_dn(t, k)
        return w, w1, w2, sn, cn, dn

    def norm(t):
        return parts(t)[0] ** 2

    def sn2(t):
        w, _, _, sn, _, _ = parts(t)
        return sn * sn * w * w

    def stretch(t):
        w, w1, w2, sn, cn, dn = parts(t)
        return cn * w * (cn * w2 - sn * dn * w1)

    return tuple(integrate(f, 0.0, K, panels=_PANELS) for f in (norm, sn2, stretch))


def perturbation_partials(k: float, m: int, n: int, parity: Parity, N: int = SPHERE_N) -> PerturbationPartials:
    """The four partial derivatives of ``H_m`` and ``h_n`` at ``(Lambda, 0)``."""
    lam = float(lambda_sphere(m, n, parity))
    e = sphere_mode(k)
    op_t, w = _lame_function(galerkin.coefficients_for_t_equation(e), (parity.k1, parity.k2), n, lam, N)
    op_s, v = _lame_function(galerkin.swap_for_s_equation(e), (parity.k3, parity.k2), m, lam, N)
    k2, kp2 = e.k**2, e.k_prime**2
    nw, sw, cw = _quotients(op_t, w, e.k)
    nv, sv, cv = _quotients(op_s, v, e.k_prime)
    return PerturbationPartials(
        H_lam=1.0 - kp2 * sv / nv,  # dn^2 = 1 - k'^2 sn^2
        H_eps=kp2 * cv / nv,
        h_lam=k2 * sw / nw,
        h_eps=k2 * cw / nw,
    )


def perturbation_derivative_quadrature(k: float, m: int, n: int, parity: Parity, N: int = SPHERE_N) -> float:
    """``lam'_{m,n,kappa}(0)`` from Gauss-Legendre quadrature of the sphere-limit quotients."""
    return perturbation_partials(k, m, n, parity, N).derivative


def lambda_on_family(
    k: float, epsilon: float, m: int, n: int, parity: Parity, N: int = galerkin.DEFAULT_N, ordered: bool = True
) -> float:
    """``lam_{m,n,kappa}(eps)``; ``ordered=False`` solves on the unordered axes directly."""
    fam = SphereFamily(k, epsilon)
    if epsilon == 0.0:
        return float(lambda_sphere(m, n, parity))
    if ordered:
        e, relabel = fam.ordered()
        m, n, parity = relabel(m, n, parity)
    else:
        e = fam.analytic_ellipsoid()
    return intersect(e, m, n, parity, N, backend="galerkin").lam


def perturbation_derivative_fd(
    k: float, m: int, n: int, parity: Parity, step: float = 1e-3, N: int = galerkin.DEFAULT_N
) -> float:
    """Central difference ``(lam(+step) - lam(-step)) / (2 step)`` of full intersections."""
    if not 0.0 < step <= 1e-2:
        raise ValueError("step must lie in (0, 1e-2]")
    hi = lambda_on_family(k, step, m, n, parity, N)
    lo = lambda_on_family(k, -step, m, n, parity, N)
    return (hi - lo) / (2.0 * step)


def closed_form_l2(k: float, m: int, n: int) -> float:
    """``2 - 4k^2 -+ (8/7) (1 - k^2 k'^2)^(1/2)`` for ``l = 2``, ``kappa = (0,0,0)``.

    The minus sign belongs to ``(m, n) = (0, 1)``, the plus sign to ``(1, 0)``.
    """
    k2 = k * k
    root = math.sqrt(1.0 - k2 * (1.0 - k2))
    if (m, n) == (0, 1):
        return 2.0 - 4.0 * k2 - 8.0 / 7.0 * root
    if (m, n) == (1, 0):
        return 2.0 - 4.0 * k2 + 8.0 / 7.0 * root
    raise ValueError("closed form exists only for (m, n) in {(0, 1), (1, 0)}")


@dataclass(frozen=True)
class LamePolynomialL2:
    """``w(t) = sn^2(t, k) - shift`` with ``shift = (1 + k^2 +- (1 - k^2 k'^2)^(1/2)) / (3 k^2)``.

    These solve ``w'' + (h - 6 k^2 sn^2) w = 0`` with ``h = 2 / shift``.  The
    plus branch has ``shift > 1``, so ``w`` has no zero in ``(0, K)``: it is
    ``n = 0`` (and ``m = 1``).  The minus branch is ``n = 1``, ``m = 0``.
    """

    k: float
    branch: Literal["plus", "minus"]

    def __post_init__(self):
        if self.branch not in ("plus", "minus"):
            raise ValueError(f"branch must be 'plus' or 'minus', got {self.branch!r}")
        if not 0.0 < self.k < 1.0:
            raise ValueError("k must lie in (0, 1)")

    @property
    def shift(self) -> float:
        k2 = self.k**2
        root = math.sqrt(1.0 - k2 * (1.0 - k2))
        sign = 1.0 if self.branch == "plus" else -1.0
        return (1.0 + k2 + sign * root) / (3.0 * k2)

    @property
    def h(self) -> float:
        return 2.0 / self.shift

    @property
    def indices(self) -> tuple[int, int]:
        """``(m, n)`` of the state this polynomial belongs to."""
        return (1, 0) if self.branch == "plus" else (0, 1)

    def __call__(self, t):
        sn, _, _ = jacobi_sn_cn_dn(t, self.k)
        return sn * sn - self.shift

    def second_derivative(self, t):
        sn, _, _ = jacobi_sn_cn_dn(t, self.k)
        s2 = sn * sn
        return 2.0 - 4.0 * (1.0 + self.k**2) * s2 + 6.0 * self.k**2 * s2 * s2


def lame_l2_residual(poly: LamePolynomialL2, h: float | None = None, samples: int = 1000) -> float:
    """``sup |w'' + (h - 6 k^2 sn^2) w| / sup |w|`` on a uniform grid of ``[0, K]``.

    ``h`` defaults to the sphere-mode Galerkin eigenvalue ``h_n(6)``, so the
    check is independent of the closed-form ``2 / shift``.
    """
    if h is None:
        e = sphere_mode(poly.k)
        op = galerkin.assemble(galerkin.coefficients_for_t_equation(e), galerkin.BasisFamily.COS_EVEN, SPHERE_N)
        h = float(galerkin.eigenvalues_h(op, 6.0)[poly.indices[1]])
    t = np.linspace(0.0, modulus(poly.k).K, samples)
    sn, _, _ = jacobi_sn_cn_dn(t, poly.k)
    w = poly(t)
    res = poly.second_derivative(t) + (h - 6.0 * poly.k**2 * sn * sn) * w
    return float(np.max(np.abs(res)) / np.max(np.abs(w)))
