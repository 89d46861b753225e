"""Laplace-Beltrami spectrum of a triaxial ellipsoid.

Separation in ellipsoidal coordinates gives two Sturm-Liouville problems
coupled through ``lam`` and a separation constant ``h``.  Eigenvalues are
the intersections of their eigencurves ``H_m(lam)`` and ``h_n(lam)``.
"""

from .geometry import EVEN, Ellipsoid, Parity, make_ellipsoid, sphere_mode
from .numerics import SolverError
from .spectrum import SpectrumEntry, enumerate_spectrum, intersect, validate_bounds

__all__ = [
    "EVEN",
    "Ellipsoid",
    "Parity",
    "SolverError",
    "SpectrumEntry",
    "enumerate_spectrum",
    "intersect",
    "make_ellipsoid",
    "sphere_mode",
    "validate_bounds",
]
