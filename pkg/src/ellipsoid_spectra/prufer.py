"""Prüfer-angle shooting for the separated equations at fixed ``lam``.

With ``w = r sin(theta)`` and ``w'/q = r cos(theta)`` the angle obeys

    theta' = q(t) (cos^2 theta + (h - lam k^2 sn^2(t, k)) sin^2 theta)

We integrate in the amplitude ``sigma = am(t, k)`` instead of ``t``.  Then
``sn = sin sigma``, ``cn = cos sigma`` and ``dt/dsigma = 1/dn``, so the right
hand side needs no elliptic functions and the angle at ``t = K`` is the angle
at ``sigma = pi/2``.  The angle is never reduced mod pi; its end value counts
the oscillations directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Ellipsoid, Parity
from .numerics import RootBracket, SolverError, find_root, ode_trajectory

__all__ = [
    "PruferProblem",
    "theta_at_end",
    "shoot_h",
    "theta_derivative_positivity",
    "zero_count",
]

PRUFER_TOL = 1e-11
_H_LIMIT = 1e6
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class PruferProblem:
    """``(w'/rho)' + rho (h - lam k^2 sn^2) w = 0`` on ``[0, K(k)]``.

    ``rho = (major^2 cn^2 + mid^2 sn^2)^(1/2)``.  For the ``s``-equation the
    roles are ``major = c``, ``mid = b``, modulus ``k'``, and ``h`` stands for
    ``lam - H``.
    """

    major: float
    mid: float
    k: float
    kappa_left: int
    kappa_right: int
    equation: str = "t"

    @classmethod
    def for_t_equation(cls, e: Ellipsoid, parity: Parity) -> "PruferProblem":
        return cls(e.a, e.b, e.k, parity.k1, parity.k2, "t")

    @classmethod
    def for_s_equation(cls, e: Ellipsoid, parity: Parity) -> "PruferProblem":
        return cls(e.c, e.b, e.k_prime, parity.k3, parity.k2, "s")

    @property
    def theta0(self) -> float:
        return 0.5 * (1 - self.kappa_left) * math.pi

    def target(self, n: int) -> float:
        return 0.5 * (1 + self.kappa_right) * math.pi + n * math.pi

    def rhs(self, lam: float, h: float):
        A2, B2, k2 = self.major**2, self.mid**2, self.k**2
        lk2 = lam * k2
        cos, sin, sqrt = math.cos, math.sin, math.sqrt

        def f(sigma: float, theta: float) -> float:
            ss = sin(sigma) ** 2
            rho = sqrt(A2 - (A2 - B2) * ss)
            dn = sqrt(1.0 - k2 * ss)
            st = sin(theta)
            ct = cos(theta)
            return rho / dn * (ct * ct + (h - lk2 * ss) * st * st)

        return f


def _trajectory(prob: PruferProblem, lam: float, h: float, tol: float = PRUFER_TOL):
    return ode_trajectory(prob.rhs(lam, h), 0.0, _HALF_PI, prob.theta0, tol)


def theta_at_end(prob: PruferProblem, lam: float, h: float, tol: float = PRUFER_TOL) -> float:
    """Prüfer angle at the right end point, started from ``theta0``."""
    return _trajectory(prob, lam, h, tol)[1][-1]


def _grow_bracket(F, h0: float = 0.0) -> RootBracket:
    step = 1.0
    lo, hi = h0 - step, h0 + step
    f_lo, f_hi = F(lo), F(hi)
    while f_lo >= 0.0:
        step *= 2.0
        lo = h0 - step
        if abs(lo) > _H_LIMIT:
            raise SolverError("Prüfer bracket growth exceeded |h| = 1e6 (lower side)")
        f_lo = F(lo)
    step = 1.0
    while f_hi <= 0.0:
        step *= 2.0
        hi = h0 + step
        if abs(hi) > _H_LIMIT:
            raise SolverError("Prüfer bracket growth exceeded |h| = 1e6 (upper side)")
        f_hi = F(hi)
    return RootBracket(lo, hi, f_lo, f_hi)


def bracket_around(prob: PruferProblem, lam: float, n: int, guess: float) -> RootBracket:
    """Bracket seeded at ``guess +- max(1, 0.1 |guess|)``, widened by doubling."""
    target = prob.target(n)

    def F(h):
        return theta_at_end(prob, lam, h) - target

    half = max(1.0, 0.1 * abs(guess))
    lo, hi = guess - half, guess + half
    f_lo, f_hi = F(lo), F(hi)
    while f_lo >= 0.0:
        half *= 2.0
        lo = guess - half
        if abs(lo) > _H_LIMIT:
            raise SolverError("Prüfer bracket growth exceeded |h| = 1e6")
        f_lo = F(lo)
    while f_hi <= 0.0:
        half *= 2.0
        hi = guess + half
        if abs(hi) > _H_LIMIT:
            raise SolverError("Prüfer bracket growth exceeded |h| = 1e6")
        f_hi = F(hi)
    return RootBracket(lo, hi, f_lo, f_hi)


def shoot_h(
    prob: PruferProblem,
    lam: float,
    n: int,
    bracket_hint: RootBracket | None = None,
    rtol: float = 1e-13,
) -> float:
    """The ``n``-th eigenvalue ``h`` at fixed ``lam`` by shooting on the end angle."""
    if n < 0:
        raise ValueError("eigenvalue index must be >= 0")
    target = prob.target(n)

    def F(h):
        return theta_at_end(prob, lam, h) - target

    bracket = bracket_hint if bracket_hint is not None else _grow_bracket(F)
    return find_root(F, bracket, rtol=rtol)


def theta_derivative_positivity(prob: PruferProblem, lam: float, h: float) -> bool:
    """True iff ``theta' > 0`` at every accepted integration point."""
    f = prob.rhs(lam, h)
    sig, th = _trajectory(prob, lam, h)
    return all(f(s, t) > 0.0 for s, t in zip(sig, th))


def zero_count(prob: PruferProblem, lam: float, h: float) -> int:
    """Interior zeros of the eigenfunction: multiples of pi crossed strictly inside."""
    sig, th = _trajectory(prob, lam, h)
    lo, hi = th[0], th[-1]
    eps = 1e-7
    first = math.floor((lo + eps) / math.pi) + 1
    last = math.ceil((hi - eps) / math.pi) - 1
    return max(0, last - first + 1)
