"""Jacobi elliptic functions and the complete elliptic integral of the first kind.

Everything is computed from the arithmetic-geometric mean (AGM) of ``1`` and
``k' = sqrt(1 - k**2)``.  The amplitude comes out of the descending Landen
scheme directly, so ``sn``, ``cn``, ``dn`` and ``am`` share one code path.
Only real arguments and real moduli ``0 <= k < 1`` are supported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "EllipticModulus",
    "complete_elliptic_K",
    "jacobi_sn_cn_dn",
    "jacobi_am",
    "modulus",
]

# a few ulps: once c is this small the next AGM step would change a_n by ~c^2,
# and rounding can keep c stuck at one ulp of a forever
_AGM_RTOL = 4.0 * 2.0**-52
_MAX_AGM_STEPS = 64


def _check_modulus(k: float) -> float:
    k = float(k)
    if not (0.0 <= k < 1.0):
        raise ValueError(f"elliptic modulus must satisfy 0 <= k < 1, got k={k!r}")
    return k


@lru_cache(maxsize=256)
def _agm_table(k: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """AGM sequences ``a_n`` and ``c_n`` starting from ``(1, k', k)``."""
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    a, b, c = 1.0, kp, k
    a_seq, c_seq = [a], [c]
    for _ in range(_MAX_AGM_STEPS):
        if abs(c) <= _AGM_RTOL * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        a_seq.append(a)
        c_seq.append(c)
    else:  # pragma: no cover - AGM converges quadratically for k < 1
        raise RuntimeError(f"AGM did not converge for k={k!r}")
    return tuple(a_seq), tuple(c_seq)


def complete_elliptic_K(k: float) -> float:
    """Quarter period ``K(k) = pi / (2 * AGM(1, k'))``."""
    k = _check_modulus(k)
    a_seq, _ = _agm_table(k)
    return math.pi / (2.0 * a_seq[-1])


def _amplitude(t, k: float):
    """Backward Landen recurrence; returns the continuous amplitude ``am(t, k)``."""
    a_seq, c_seq = _agm_table(k)
    n = len(a_seq) - 1
    t = np.asarray(t, dtype=float)
    phi = (2.0**n) * a_seq[n] * t
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c_seq[j] / a_seq[j] * np.sin(phi)))
    return phi


def jacobi_sn_cn_dn(t, k: float):
    """Simultaneous ``(sn, cn, dn)`` for real ``t`` (scalar or array)."""
    k = _check_modulus(k)
    phi = _amplitude(t, k)
    sn = np.sin(phi)
    cn = np.cos(phi)
    # dn > 0 for real t; the textbook cn/cos(phi_1 - phi_0) form is 0/0 at odd
    # multiples of K, this factored form is not
    dn = np.sqrt((1.0 - k * sn) * (1.0 + k * sn))
    if np.ndim(sn) == 0:
        return float(sn), float(cn), float(dn)
    return sn, cn, dn


def jacobi_am(t, k: float):
    """Jacobi amplitude on ``0 <= t <= K(k)``.

    The Landen recurrence yields the continuous amplitude for any real ``t``,
    but callers here only ever need the first quarter period, so anything
    outside it is rejected.
    """
    k = _check_modulus(k)
    K = complete_elliptic_K(k)
    arr = np.asarray(t, dtype=float)
    slack = 4.0 * np.finfo(float).eps * K
    if np.any(arr < -slack) or np.any(arr > K + slack):
        raise ValueError(f"jacobi_am is defined here only on [0, K]; K={K!r}")
    arr = np.clip(arr, 0.0, K)
    phi = _amplitude(arr, k)
    # the endpoint values are exact by definition
    phi = np.where(arr == K, 0.5 * math.pi, phi)
    if np.ndim(phi) == 0:
        return float(phi)
    return phi


@dataclass(frozen=True)
class EllipticModulus:
    """A modulus ``k`` together with ``k'``, ``K(k)`` and ``K'(k) = K(k')``."""

    k: float
    k_prime: float
    K: float
    K_prime: float

    @property
    def k2(self) -> float:
        return self.k * self.k

    @property
    def kp2(self) -> float:
        return self.k_prime * self.k_prime

    def complement(self) -> "EllipticModulus":
        return EllipticModulus(self.k_prime, self.k, self.K_prime, self.K)


def modulus(k: float | None = None, *, k2: float | None = None) -> EllipticModulus:
    """Build an :class:`EllipticModulus` from ``k`` or from ``k**2``.

    Passing ``k2`` avoids a square root / square round trip for moduli given
    as rationals (e.g. ``k2=5/8``); ``k'`` is then ``sqrt(1 - k2)`` directly.
    """
    if (k is None) == (k2 is None):
        raise TypeError("give exactly one of k or k2")
    if k2 is not None:
        k2 = float(k2)
        if not (0.0 <= k2 < 1.0):
            raise ValueError(f"k**2 must lie in [0, 1), got {k2!r}")
        k = math.sqrt(k2)
        kp = math.sqrt(1.0 - k2)
    else:
        k = _check_modulus(k)
        kp = math.sqrt((1.0 - k) * (1.0 + k))
    if kp >= 1.0 and k == 0.0:
        return EllipticModulus(0.0, 1.0, 0.5 * math.pi, math.inf)
    return EllipticModulus(k, kp, complete_elliptic_K(k), complete_elliptic_K(kp))
