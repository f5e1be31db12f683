"""Distances and partitions of unity on an angular domain.

The wedge carries two distance functions: to the vertex (the radius) and
to the boundary rays.  Both have closed forms, and a telescoping family of
smooth radial bumps splits any function into dyadic annular pieces.
"""

import math

import numpy as np

from wedgemellin import (ResolutionOfUnity, WedgeParams, partition_values,
                         polar_to_cart, psi_wedge, rho_boundary, rho_circ)

wedge = WedgeParams(1.5 * math.pi)   # re-entrant corner
print(f"opening angle kappa = {wedge.kappa:.6f}, corner exponent pi/kappa = {wedge.exponent:.6f}")

print("\npoint (r, phi)        |x|      dist to boundary   regularized")
for r, phi in ((0.5, 0.3), (1.0, wedge.kappa / 2), (2.0, wedge.kappa - 0.2)):
    x = polar_to_cart(r, phi)
    print(f"({r:4.2f}, {phi:5.3f})   {rho_circ(x):8.5f}   {rho_boundary(r, phi, wedge):12.6f}"
          f"       {psi_wedge(r, phi, wedge):12.6f}")

res = ResolutionOfUnity()            # dyadic bumps, scale base e
print("\nradial partition of unity (values sum to 1 exactly):")
for r in (0.37, 1.0, 5.2, 40.0):
    pieces = partition_values(res, (r, 0.0))
    terms = " + ".join(f"zeta_{nu}={v:.6f}" for nu, v in pieces)
    print(f"  |x| = {r:6.2f}:  {terms}  ->  {sum(v for _, v in pieces):.12f}")

rr = np.exp(np.linspace(-6, 6, 100_000))
total = sum(res.zeta(nu, rr) for nu in res.index_range(rr.min(), rr.max()))
print(f"\nmax |sum - 1| over 1e5 radii: {np.max(np.abs(total - 1.0)):.2e}")
