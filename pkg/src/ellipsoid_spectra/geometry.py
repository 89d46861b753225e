"""Ellipsoid parameters, the transcendental ellipsoidal chart and its metric.

A point of the ellipsoid ``x^2/a^2 + y^2/b^2 + z^2/c^2 = 1`` is written as

    x = a dn(s, k') sn(t, k),  y = b cn(s, k') cn(t, k),  z = c sn(s, k') dn(t, k)

with ``k^2 = (a^2 - b^2) / (a^2 - c^2)``.  The separated equations live on
``s in [0, K']`` and ``t in [0, K]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .elliptic import EllipticModulus, complete_elliptic_K, jacobi_sn_cn_dn, modulus

__all__ = [
    "Ellipsoid",
    "Parity",
    "SurfacePoint",
    "make_ellipsoid",
    "sphere_mode",
    "coefficient_p",
    "coefficient_q",
    "chart",
    "metric",
    "weight_D",
    "algebraic_coords",
]


@dataclass(frozen=True)
class Ellipsoid:
    """Semi-axes plus the derived elliptic modulus.

    Build through :func:`make_ellipsoid` (which enforces ``a > b > c > 0``)
    or :func:`sphere_mode` (unit sphere with a free modulus).
    """

    a: float
    b: float
    c: float
    modulus: EllipticModulus

    @property
    def k(self) -> float:
        return self.modulus.k

    @property
    def k_prime(self) -> float:
        return self.modulus.k_prime

    @property
    def K(self) -> float:
        return self.modulus.K

    @property
    def K_prime(self) -> float:
        return self.modulus.K_prime

    @property
    def d_singularity(self) -> float:
        """Fifth singular point ``a^2 / (a^2 - b^2)`` of the algebraic-form ODE."""
        gap = self.a**2 - self.b**2
        return math.inf if gap == 0.0 else self.a**2 / gap

    @property
    def is_sphere(self) -> bool:
        return self.a == self.b == self.c

    def scaled(self, r: float) -> "Ellipsoid":
        """Same shape with every semi-axis multiplied by ``r`` (same modulus)."""
        return Ellipsoid(r * self.a, r * self.b, r * self.c, self.modulus)


def make_ellipsoid(a: float, b: float, c: float) -> Ellipsoid:
    a, b, c = float(a), float(b), float(c)
    if not c > 0.0:
        raise ValueError(f"semi-axes must be positive: c={c!r} violates c > 0")
    if not a > b:
        raise ValueError(f"semi-axes must satisfy a > b, got a={a!r}, b={b!r}")
    if not b > c:
        raise ValueError(f"semi-axes must satisfy b > c, got b={b!r}, c={c!r}")
    a2, b2, c2 = a * a, b * b, c * c
    k2 = (a2 - b2) / (a2 - c2)
    k = math.sqrt(k2)
    kp = math.sqrt((b2 - c2) / (a2 - c2))
    mod = EllipticModulus(k, kp, complete_elliptic_K(k), complete_elliptic_K(kp))
    return Ellipsoid(a, b, c, mod)


def sphere_mode(k: float | None = None, *, k2: float | None = None) -> Ellipsoid:
    """The unit sphere in sphero-conal coordinates with a freely chosen modulus."""
    mod = modulus(k, k2=k2)
    if mod.k == 0.0:
        raise ValueError("sphere mode needs 0 < k < 1")
    return Ellipsoid(1.0, 1.0, 1.0, mod)


@dataclass(frozen=True, order=True)
class Parity:
    """Reflection parity ``(kappa1, kappa2, kappa3)`` in ``x``, ``y``, ``z``."""

    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        for bit in (self.k1, self.k2, self.k3):
            if bit not in (0, 1):
                raise ValueError(f"parity entries must be 0 or 1, got {self.bits}")

    @property
    def bits(self) -> tuple[int, int, int]:
        return (self.k1, self.k2, self.k3)

    @property
    def weight(self) -> int:
        """``|kappa| = kappa1 + kappa2 + kappa3``."""
        return self.k1 + self.k2 + self.k3

    @property
    def code(self) -> int:
        """The triple read as a binary number ``kappa1 kappa2 kappa3``."""
        return 4 * self.k1 + 2 * self.k2 + self.k3

    def __str__(self) -> str:
        return f"{self.k1}{self.k2}{self.k3}"

    @classmethod
    def parse(cls, text: str) -> "Parity":
        text = text.strip().strip("()").replace(",", "").replace(" ", "")
        if len(text) != 3 or any(ch not in "01" for ch in text):
            raise ValueError(f"parity must look like '010', got {text!r}")
        return cls(*(int(ch) for ch in text))

    @classmethod
    def all(cls) -> Iterator["Parity"]:
        for code in range(8):
            yield cls((code >> 2) & 1, (code >> 1) & 1, code & 1)


EVEN = Parity(0, 0, 0)


@dataclass(frozen=True)
class SurfacePoint:
    s: float
    t: float
    x: float
    y: float
    z: float


def coefficient_p(e: Ellipsoid, s):
    """``p(s) = (c^2 cn^2(s, k') + b^2 sn^2(s, k'))^(1/2)``."""
    sn, cn, _ = jacobi_sn_cn_dn(s, e.k_prime)
    return np.sqrt(e.c**2 * cn**2 + e.b**2 * sn**2)


def coefficient_q(e: Ellipsoid, t):
    """``q(t) = (a^2 cn^2(t, k) + b^2 sn^2(t, k))^(1/2)``."""
    sn, cn, _ = jacobi_sn_cn_dn(t, e.k)
    return np.sqrt(e.a**2 * cn**2 + e.b**2 * sn**2)


def chart(e: Ellipsoid, s: float, t: float) -> SurfacePoint:
    sn_s, cn_s, dn_s = jacobi_sn_cn_dn(s, e.k_prime)
    sn_t, cn_t, dn_t = jacobi_sn_cn_dn(t, e.k)
    return SurfacePoint(
        s, t, e.a * dn_s * sn_t, e.b * cn_s * cn_t, e.c * sn_s * dn_t
    )


def _conformal_factor(e: Ellipsoid, s, t):
    _, _, dn_s = jacobi_sn_cn_dn(s, e.k_prime)
    sn_t, _, _ = jacobi_sn_cn_dn(t, e.k)
    # dn^2(s, k') - k^2 sn^2(t, k); clip the rounding noise at the umbilic corner
    return np.maximum(dn_s**2 - e.k**2 * sn_t**2, 0.0)


def metric(e: Ellipsoid, s, t):
    """Diagonal metric ``(g1, g2)`` in the ``(s, t)`` chart."""
    f = _conformal_factor(e, s, t)
    return coefficient_p(e, s) ** 2 * f, coefficient_q(e, t) ** 2 * f


def weight_D(e: Ellipsoid, s, t):
    """Right-definiteness determinant ``p(s) q(t) (dn^2(s,k') - k^2 sn^2(t,k))``."""
    return coefficient_p(e, s) * coefficient_q(e, t) * _conformal_factor(e, s, t)


def algebraic_coords(e: Ellipsoid, s, t):
    """``(mu, nu) = (dn^2(s, k') / k^2, sn^2(t, k))``."""
    _, _, dn_s = jacobi_sn_cn_dn(s, e.k_prime)
    sn_t, _, _ = jacobi_sn_cn_dn(t, e.k)
    return dn_s**2 / e.k**2, sn_t**2
