"""First-order eigenvalue change off the unit sphere for every state with l = 2 and l = 3."""

import math

from ellipsoid_spectra.sphere_perturbation import (
    closed_form_l2,
    perturbation_derivative_fd,
    perturbation_derivative_quadrature,
    states_with_label,
)


def main():
    for k2 in (0.5, 0.625):
        k = math.sqrt(k2)
        print(f"k^2 = {k2}")
        print(f"  {'l':>2} {'m':>2} {'n':>2} kappa {'quadrature':>12} {'finite diff':>12} {'closed form':>12}")
        for ell in (2, 3):
            for m, n, parity in states_with_label(ell):
                q = perturbation_derivative_quadrature(k, m, n, parity)
                fd = perturbation_derivative_fd(k, m, n, parity)
                closed = ""
                if parity.weight == 0 and (m, n) in ((0, 1), (1, 0)):
                    closed = f"{closed_form_l2(k, m, n):12.8f}"
                print(f"  {ell:>2} {m:>2} {n:>2}   {parity} {q:12.8f} {fd:12.8f} {closed:>12}")


if __name__ == "__main__":
    main()
