"""Full spectrum of (3,2,1) below a cutoff, all parities, with the a priori bound margins."""

import argparse

from ellipsoid_spectra.geometry import make_ellipsoid
from ellipsoid_spectra.spectrum import degeneracies, enumerate_spectrum, validate_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambda-max", type=float, default=10.0)
    ap.add_argument("--axes", type=float, nargs=3, default=(3.0, 2.0, 1.0))
    args = ap.parse_args()
    e = make_ellipsoid(*args.axes)
    entries = enumerate_spectrum(e, args.lambda_max)
    print(f"{'lambda':>14} {'m':>2} {'n':>2} kappa  l  {'min bound margin':>16}")
    for x in entries:
        margin = min(c.margin for c in validate_bounds(x, e).checks)
        print(f"{x.lam:14.9f} {x.m:>2} {x.n:>2}   {x.parity} {x.sphere_label:>2}  {margin:16.6f}")
    print(f"{len(entries)} eigenvalues, {len(degeneracies(entries))} degenerate groups")


if __name__ == "__main__":
    main()
