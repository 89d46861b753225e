"""Eigenvalues of the Laplace-Beltrami operator as eigencurve intersections.

For each parity ``kappa`` and indices ``(m, n)`` the eigenvalue
``lam_{m,n,kappa}`` is the unique root of ``g(lam) = H_m(lam) - h_n(lam)``;
``g`` is strictly increasing because ``h_n' < k^2 < H_m'``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

from . import galerkin
from .eigencurves import EigencurveId, galerkin_value, prufer_value
from .geometry import Ellipsoid, Parity
from .numerics import RootBracket, SolverError, find_root

__all__ = [
    "SpectrumEntry",
    "BoundCheck",
    "BoundsReport",
    "lambda_sphere",
    "intersect",
    "enumerate_spectrum",
    "validate_bounds",
    "degeneracies",
]

ROOT_RTOL = 1e-12
BACKEND_AGREEMENT = 1e-6
DEGENERACY_TOL = 1e-9
THREADS_ENV = "ELLIPSOID_SPECTRA_THREADS"

Backend = Literal["galerkin", "prufer", "both"]


def lambda_sphere(m: int, n: int, parity: Parity) -> int:
    """Sphere eigenvalue ``l (l + 1)`` with ``l = 2m + 2n + |kappa|``."""
    if m < 0 or n < 0:
        raise ValueError("indices must be >= 0")
    ell = 2 * m + 2 * n + parity.weight
    return ell * (ell + 1)


def _hat(parity: Parity) -> Parity:
    return Parity(parity.k1, 1, parity.k3)


@dataclass(frozen=True)
class SpectrumEntry:
    m: int
    n: int
    parity: Parity
    lam: float
    h: float
    residual_galerkin: float
    residual_prufer: float | None = None

    @property
    def sphere_label(self) -> int:
        return 2 * self.m + 2 * self.n + self.parity.weight

    def sort_key(self):
        return (self.parity.weight, self.parity.code, self.m, self.n)


def _g_galerkin(e, m, n, parity, N):
    Hc = EigencurveId("H", m, parity)
    hc = EigencurveId("h", n, parity)

    def g(lam):
        return galerkin_value(e, Hc, lam, N) - galerkin_value(e, hc, lam, N)

    return g


def _g_prufer(e, m, n, parity, N):
    Hc = EigencurveId("H", m, parity)
    hc = EigencurveId("h", n, parity)

    def g(lam):
        # Galerkin values only seed the shooting brackets
        H, _ = prufer_value(e, Hc, lam, guess=galerkin_value(e, Hc, lam, N))
        h, _ = prufer_value(e, hc, lam, guess=galerkin_value(e, hc, lam, N))
        return H - h

    return g


def _upper_seed(e: Ellipsoid, m: int, n: int, parity: Parity) -> float:
    # a priori upper bound lam < c^-2 Lambda_{m,n,kappa_hat}
    return lambda_sphere(m, n, _hat(parity)) / e.c**2 + 1.0


def _solve_root(g, e, m, n, parity, rtol) -> float:
    g0 = g(0.0)
    if g0 >= 0.0 or abs(g0) <= 1e-12:
        if (m, n, parity.bits) == (0, 0, (0, 0, 0)) and abs(g0) <= 1e-9:
            return 0.0
        raise SolverError(
            f"H_{m} - h_{n} should be negative at lam=0 for parity {parity}, got {g0!r}"
        )
    hi = _upper_seed(e, m, n, parity)
    g_hi = g(hi)
    doublings = 0
    while g_hi <= 0.0:
        hi *= 2.0
        doublings += 1
        if doublings > 20:
            raise SolverError(f"could not bracket lam_{m},{n},{parity}")
        g_hi = g(hi)
    return find_root(g, RootBracket(0.0, hi, g0, g_hi), rtol=rtol)


def intersect(
    e: Ellipsoid,
    m: int,
    n: int,
    parity: Parity,
    N: int = galerkin.DEFAULT_N,
    backend: Backend = "both",
    rtol: float = ROOT_RTOL,
) -> SpectrumEntry:
    """Intersection of ``H_{m,kappa}`` and ``h_{n,kappa}``.

    ``backend="galerkin"`` roots the Galerkin curves; ``"prufer"`` roots the
    shooting curves; ``"both"`` roots the Galerkin curves and then checks
    them against shooting at the root, failing on disagreement above 1e-6.
    """
    if m < 0 or n < 0:
        raise ValueError("indices must be >= 0")
    if backend not in ("galerkin", "prufer", "both"):
        raise ValueError(f"unknown backend {backend!r}")
    g_gal = _g_galerkin(e, m, n, parity, N)
    if backend == "prufer":
        lam = _solve_root(_g_prufer(e, m, n, parity, N), e, m, n, parity, rtol)
    else:
        lam = _solve_root(g_gal, e, m, n, parity, rtol)
    h = galerkin_value(e, EigencurveId("h", n, parity), lam, N)
    residual = abs(g_gal(lam))
    pr_res = None
    if backend in ("both", "prufer"):
        Hc, hc = EigencurveId("H", m, parity), EigencurveId("h", n, parity)
        H_p, _ = prufer_value(e, Hc, lam, guess=h)
        h_p, _ = prufer_value(e, hc, lam, guess=h)
        pr_res = max(abs(H_p - h), abs(h_p - h))
        if backend == "prufer":
            h = h_p
        if pr_res > BACKEND_AGREEMENT:
            raise SolverError(
                f"backends disagree by {pr_res:.3e} at lam_{m},{n},{parity} = {lam!r}"
            )
    return SpectrumEntry(m, n, parity, lam, h, residual, pr_res)


def lower_bound(e: Ellipsoid, m: int, n: int, parity: Parity) -> float:
    """Best a priori lower bound for ``lam_{m,n,kappa}``; 0 when none applies."""
    if parity.k2 == 1:
        return lambda_sphere(m, n, parity) / e.a**2
    if m >= 1 and n >= 1:
        return lambda_sphere(m - 1, n - 1, _hat(parity)) / e.a**2
    return 0.0


def _beyond(e, m, n, parity, lam_max, N) -> bool:
    """True when ``lam_{m,n,kappa} > lam_max`` (sign of g at lam_max)."""
    if lower_bound(e, m, n, parity) > lam_max:
        return True
    return _g_galerkin(e, m, n, parity, N)(lam_max) < 0.0


def _candidates(e, parity, lam_max, N):
    """(m, n) with ``lam <= lam_max``; lam is increasing in both m and n."""
    out = []
    trusted = N // 2 + 1
    m = 0
    while not _beyond(e, m, 0, parity, lam_max, N):
        n = 0
        while not _beyond(e, m, n, parity, lam_max, N):
            out.append((m, n))
            n += 1
            if n >= trusted:
                raise SolverError(f"lam_max needs n >= {trusted}; raise N above {N}")
        m += 1
        if m >= trusted:
            raise SolverError(f"lam_max needs m >= {trusted}; raise N above {N}")
    return out


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _order(entries: list[SpectrumEntry]) -> list[SpectrumEntry]:
    entries = sorted(entries, key=lambda x: (x.lam, x.sort_key()))
    out: list[SpectrumEntry] = []
    group: list[SpectrumEntry] = []
    for entry in entries:
        if group and entry.lam - group[0].lam > DEGENERACY_TOL:
            out.extend(sorted(group, key=SpectrumEntry.sort_key))
            group = []
        group.append(entry)
    out.extend(sorted(group, key=SpectrumEntry.sort_key))
    return out


def enumerate_spectrum(
    e: Ellipsoid,
    lam_max: float,
    N: int = galerkin.DEFAULT_N,
    backend: Backend = "both",
    parities: list[Parity] | None = None,
) -> list[SpectrumEntry]:
    """All eigenvalues ``<= lam_max`` over the selected parities (default all 8).

    Sorted ascending in ``lam``; values within 1e-9 of each other are ordered
    by ``(|kappa|, kappa as binary, m, n)``.
    """
    if lam_max < 0:
        raise ValueError("lam_max must be >= 0")
    parities = list(Parity.all()) if parities is None else list(parities)

    def per_parity(parity):
        return [
            intersect(e, m, n, parity, N, backend)
            for m, n in _candidates(e, parity, lam_max, N)
        ]

    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(per_parity, parities))
    else:
        chunks = [per_parity(p) for p in parities]
    entries = [x for chunk in chunks for x in chunk if x.lam <= lam_max]
    return _order(entries)


def degeneracies(entries: list[SpectrumEntry], tol: float = DEGENERACY_TOL) -> list[list[SpectrumEntry]]:
    """Groups (size >= 2) of entries whose eigenvalues agree within ``tol``."""
    groups, current = [], []
    for entry in sorted(entries, key=lambda x: x.lam):
        if current and entry.lam - current[0].lam > tol:
            if len(current) > 1:
                groups.append(current)
            current = []
        current.append(entry)
    if len(current) > 1:
        groups.append(current)
    return groups


@dataclass(frozen=True)
class BoundCheck:
    name: str
    side: Literal["lower", "upper"]
    bound: float
    lam: float

    @property
    def margin(self) -> float:
        """Positive when the strict inequality holds."""
        return self.lam - self.bound if self.side == "lower" else self.bound - self.lam

    @property
    def holds(self) -> bool:
        return self.margin > 0.0


@dataclass(frozen=True)
class BoundsReport:
    entry: SpectrumEntry
    checks: list[BoundCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)


def validate_bounds(entry: SpectrumEntry, e: Ellipsoid) -> BoundsReport:
    """Check the a priori eigenvalue enclosures against a computed entry."""
    m, n, kap, lam = entry.m, entry.n, entry.parity, entry.lam
    checks = []
    if kap.k2 == 1:
        big = lambda_sphere(m, n, kap)
        checks.append(BoundCheck("axis_enclosure", "lower", big / e.a**2, lam))
        checks.append(BoundCheck("axis_enclosure", "upper", big / e.c**2, lam))
    else:
        checks.append(BoundCheck("hat_upper", "upper", lambda_sphere(m, n, _hat(kap)) / e.c**2, lam))
        if m >= 1 and n >= 1:
            checks.append(
                BoundCheck("hat_lower", "lower", lambda_sphere(m - 1, n - 1, _hat(kap)) / e.a**2, lam)
            )
    return BoundsReport(entry, checks)
