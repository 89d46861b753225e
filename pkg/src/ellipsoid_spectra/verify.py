"""Acceptance checks, runnable from the CLI and from the test suite.

Each check returns a :class:`Check` with the measured worst-case quantity,
its tolerance and a pass flag.  ``run("quick")`` runs the intersection
quartet and the elliptic identities; ``run("full")`` runs all ten.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .eigencurves import (
    EigencurveId,
    H_at_zero,
    clear_caches,
    galerkin_value,
    h_at_zero,
    prufer_value,
    slope,
)
from .elliptic import jacobi_sn_cn_dn, modulus
from .geometry import EVEN, Parity, make_ellipsoid, sphere_mode
from .spectrum import enumerate_spectrum, intersect, validate_bounds
from .sphere_perturbation import (
    closed_form_l2,
    perturbation_derivative_fd,
    perturbation_derivative_quadrature,
)

__all__ = ["Check", "CHECKS", "run", "format_line"]

# six-digit reference values (truncated, not rounded)
QUARTET = {(0, 0): 0.0, (0, 1): 1.074471, (1, 0): 2.134154, (1, 1): 5.029767}
H0_AT_5 = 0.558216
GRID_LAMBDAS = (0.0, 1.0, 5.0, 10.0, 25.0)
BC_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0


def format_line(c: Check) -> str:
    flag = "PASS" if c.passed else "FAIL"
    return (
        f"[{flag}] {c.criterion:2d} {c.name}: measured {c.measured:.3e} "
        f"tol {c.tolerance:.1e} ({c.seconds:.1f} s) {c.detail}".rstrip()
    )


def _reference():
    return make_ellipsoid(3.0, 2.0, 1.0)


def check_quartet() -> Check:
    clear_caches()
    e = _reference()
    start = time.perf_counter()
    lams = {mn: intersect(e, *mn, EVEN, N=32).lam for mn in QUARTET}
    elapsed = time.perf_counter() - start
    worst = max(abs(lams[mn] - ref) for mn, ref in QUARTET.items() if mn != (0, 0))
    ok = abs(lams[(0, 0)]) < 1e-9 and worst < 5e-6 and elapsed < 10.0
    detail = f"|lam_00| = {abs(lams[(0, 0)]):.1e}, wall {elapsed:.2f} s (limit 10 s)"
    return Check(1, "intersection quartet on (3,2,1)", ok, worst, 5e-6, detail)


def check_h0_both_backends() -> Check:
    e = _reference()
    curve = EigencurveId("h", 0, Parity(0, 1, 0))
    g = galerkin_value(e, curve, 5.0)
    p, _ = prufer_value(e, curve, 5.0)  # unseeded: independent of Galerkin
    worst = max(abs(g - H0_AT_5), abs(p - H0_AT_5))
    return Check(2, "h_0 at lam=5, kappa=(0,1)", worst < 5e-6, worst, 5e-6, f"galerkin {g:.9f} prufer {p:.9f}")


def check_sphere_limit() -> Check:
    worst, bad = 0.0, []
    for k2 in (0.3, 0.5, 0.7):
        entries = enumerate_spectrum(sphere_mode(k2=k2), 42.5, backend="galerkin")
        counts: dict[int, int] = {}
        for x in entries:
            ell = x.sphere_label
            counts[ell] = counts.get(ell, 0) + 1
            worst = max(worst, abs(x.lam - ell * (ell + 1)))
        if counts != {ell: 2 * ell + 1 for ell in range(7)}:
            bad.append(f"k2={k2} multiplicities {counts}")
    return Check(3, "sphere limit l <= 6", worst < 1e-8 and not bad, worst, 1e-8, "; ".join(bad))


def check_cross_oracle() -> Check:
    e = _reference()
    worst, count = 0.0, 0
    for family in ("h", "H"):
        for left, right in BC_PAIRS:
            parity = Parity(left, right, 0) if family == "h" else Parity(0, right, left)
            for n in range(4):
                curve = EigencurveId(family, n, parity)
                for lam in GRID_LAMBDAS:
                    g = galerkin_value(e, curve, lam)
                    p, _ = prufer_value(e, curve, lam, guess=g)
                    worst = max(worst, abs(g - p))
                    count += 1
    ok = worst < 1e-7 and count == 160
    return Check(4, "galerkin vs shooting grid", ok, worst, 1e-7, f"{count} comparisons")


def check_slopes() -> Check:
    e = _reference()
    k2 = e.k**2
    # worst margin to the nearest interval end; positive means strictly inside
    margin = math.inf
    for parity in Parity.all():
        for idx in range(3):
            for lam in (0.0, 2.0, 5.0, 10.0):
                dh = slope(e, EigencurveId("h", idx, parity), lam)
                dH = slope(e, EigencurveId("H", idx, parity), lam)
                margin = min(margin, dh, k2 - dh, dH - k2, 1.0 - dH)
    return Check(5, "slope bounds 0<h'<k^2<H'<1", margin > 0.0, margin, 0.0, "min margin (must be > 0)")


def check_lambda_zero() -> Check:
    e = _reference()
    worst = 0.0
    for idx in range(4):
        for family, exact in (("h", h_at_zero(e, idx)), ("H", H_at_zero(e, idx))):
            curve = EigencurveId(family, idx, EVEN)
            g = galerkin_value(e, curve, 0.0)
            p, _ = prufer_value(e, curve, 0.0)
            worst = max(worst, abs(g - exact), abs(p - exact))
    return Check(6, "lam=0 closed forms", worst < 1e-8, worst, 1e-8)


def check_inequalities() -> Check:
    e = _reference()
    entries = enumerate_spectrum(e, 60.0, backend="galerkin")
    margin = math.inf
    failures = 0
    for x in entries:
        report = validate_bounds(x, e)
        for c in report.checks:
            margin = min(margin, c.margin)
        failures += not report.ok
    return Check(
        7, "eigenvalue inequalities lam <= 60", failures == 0 and len(entries) > 0, margin, 0.0,
        f"{len(entries)} entries, {failures} violations",
    )


def check_perturbation() -> Check:
    k = math.sqrt(5.0 / 8.0)
    worst = 0.0
    parts = []
    for (m, n), ref in (((0, 1), -1.5), ((1, 0), 0.5)):
        closed = closed_form_l2(k, m, n)
        quad = perturbation_derivative_quadrature(k, m, n, EVEN)
        fd = perturbation_derivative_fd(k, m, n, EVEN, step=1e-3)
        worst = max(worst, abs(closed - ref), abs(quad - ref), abs(fd - ref))
        parts.append(f"({m},{n}) quad {quad:.6f} fd {fd:.6f}")
    return Check(8, "first-order perturbation at k^2=5/8", worst < 1e-4, worst, 1e-4, "; ".join(parts))


def check_convergence() -> Check:
    e = _reference()
    worst = 0.0
    for family in ("h", "H"):
        for left, right in BC_PAIRS:
            parity = Parity(left, right, 0) if family == "h" else Parity(0, right, left)
            for n in range(5):
                curve = EigencurveId(family, n, parity)
                for lam in GRID_LAMBDAS:
                    worst = max(worst, abs(galerkin_value(e, curve, lam, 32) - galerkin_value(e, curve, lam, 64)))
    digits_ok = True
    for (m, n), ref in QUARTET.items():
        lam7 = intersect(e, m, n, EVEN, N=7, backend="galerkin").lam
        digits_ok &= math.floor(lam7 * 1e6 + 1e-9) == round(ref * 1e6)
    ok = worst < 1e-9 and digits_ok
    detail = "N=7 quartet keeps 6 digits" if digits_ok else "N=7 quartet changes the sixth digit"
    return Check(9, "Galerkin N=32 vs N=64", ok, worst, 1e-9, detail)


def check_elliptic(samples: int = 10_000, seed: int = 20240605) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k, t in zip(rng.uniform(0.0, 0.999, samples), rng.uniform(-20.0, 20.0, samples)):
        k = float(k)
        K = modulus(k).K
        sn, cn, dn = jacobi_sn_cn_dn(np.array([t, t + 4 * K, t + 2 * K, -t]), k)
        worst = max(
            worst,
            abs(sn[0] ** 2 + cn[0] ** 2 - 1),
            abs(dn[0] ** 2 + k * k * sn[0] ** 2 - 1),
            abs(sn[1] - sn[0]),
            abs(cn[1] - cn[0]),
            abs(dn[2] - dn[0]),
            abs(sn[3] + sn[0]),
            abs(cn[3] - cn[0]),
            abs(dn[3] - dn[0]),
        )
    t = rng.uniform(-20.0, 20.0, samples)
    sn, cn, dn = jacobi_sn_cn_dn(t, 0.0)
    worst = max(worst, np.max(np.abs(sn - np.sin(t))), np.max(np.abs(cn - np.cos(t))), np.max(np.abs(dn - 1)))
    return Check(10, "Jacobi identities, periods, parity, k=0", worst < 1e-12, float(worst), 1e-12)


CHECKS: dict[int, Callable[[], Check]] = {
    1: check_quartet,
    2: check_h0_both_backends,
    3: check_sphere_limit,
    4: check_cross_oracle,
    5: check_slopes,
    6: check_lambda_zero,
    7: check_inequalities,
    8: check_perturbation,
    9: check_convergence,
    10: check_elliptic,
}
LEVELS = {"quick": (1, 10), "full": tuple(CHECKS)}


def run_one(criterion: int) -> Check:
    start = time.perf_counter()
    c = CHECKS[criterion]()
    return Check(c.criterion, c.name, c.passed, c.measured, c.tolerance, c.detail, time.perf_counter() - start)


def run(level: str = "full") -> list[Check]:
    if level not in LEVELS:
        raise ValueError(f"unknown verification level {level!r}")
    return [run_one(i) for i in LEVELS[level]]
