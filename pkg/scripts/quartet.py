"""Lowest four parity-000 eigenvalues on (3,2,1): both backends and several truncations."""

import time

from ellipsoid_spectra.eigencurves import clear_caches
from ellipsoid_spectra.geometry import EVEN, make_ellipsoid
from ellipsoid_spectra.spectrum import intersect


def main():
    e = make_ellipsoid(3.0, 2.0, 1.0)
    print(f"{'m':>2} {'n':>2} {'galerkin N=32':>16} {'prufer':>16} {'N=7':>12} {'N=64':>16}")
    clear_caches()
    start = time.perf_counter()
    for m in range(2):
        for n in range(2):
            g = intersect(e, m, n, EVEN, N=32, backend="both")
            p = intersect(e, m, n, EVEN, N=32, backend="prufer")
            lo = intersect(e, m, n, EVEN, N=7, backend="galerkin")
            hi = intersect(e, m, n, EVEN, N=64, backend="galerkin")
            print(f"{m:>2} {n:>2} {g.lam:16.10f} {p.lam:16.10f} {lo.lam:12.6f} {hi.lam:16.10f}")
    print(f"wall time {time.perf_counter() - start:.2f} s")


if __name__ == "__main__":
    main()
