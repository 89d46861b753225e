"""Eigencurves H_0, H_1, h_0, h_1 on (3,2,1), parity 000, sampled on [0, 6].

Writes CSV (lambda, H0, H1, h0, h1) followed by the intersection points, ready
for any plotting tool.
"""

import argparse
import csv
import sys

import numpy as np

from ellipsoid_spectra.eigencurves import EigencurveId, galerkin_value
from ellipsoid_spectra.geometry import EVEN, make_ellipsoid
from ellipsoid_spectra.spectrum import intersect


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=121)
    ap.add_argument("--lambda-max", type=float, default=6.0)
    args = ap.parse_args()

    e = make_ellipsoid(3.0, 2.0, 1.0)
    curves = [EigencurveId("H", 0, EVEN), EigencurveId("H", 1, EVEN), EigencurveId("h", 0, EVEN), EigencurveId("h", 1, EVEN)]
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["lambda", "H0", "H1", "h0", "h1"])
    for lam in np.linspace(0.0, args.lambda_max, args.samples):
        out.writerow([f"{lam:.6f}"] + [f"{galerkin_value(e, c, float(lam)):.12f}" for c in curves])
    print()
    out.writerow(["m", "n", "lambda", "h"])
    for m in range(2):
        for n in range(2):
            x = intersect(e, m, n, EVEN)
            out.writerow([m, n, f"{x.lam:.9f}", f"{x.h:.9f}"])


if __name__ == "__main__":
    main()
