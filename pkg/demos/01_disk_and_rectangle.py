"""kappa for the disk, a rectangle and a regular hexagon, next to sqrt(lambda_2).

The disk sits exactly on the bound kappa = j11 = sqrt(lambda_2); the others
fall strictly below it.
"""
import math

import numpy as np

from kappaspec.domains import Ball, ConvexPolygon, Rectangle
from kappaspec.nullvariety import kappa
from kappaspec.spectral import dirichlet_eigs

t = np.pi * np.arange(6) / 3
hexagon = ConvexPolygon(np.column_stack([np.cos(t), np.sin(t)]))

shapes = [("unit disk", Ball(2, 1.0)), ("rectangle 2 x 1", Rectangle((1.0, 0.5))), ("hexagon", hexagon)]
print(f"{'domain':18s} {'kappa':>12s} {'sqrt(lambda2)':>14s}")
for name, dom in shapes:
    k = float(kappa(dom).kappa)
    lam2 = dirichlet_eigs(dom, 2).dirichlet[1]
    print(f"{name:18s} {k:12.8f} {math.sqrt(lam2):14.8f}")

res = kappa(Rectangle((1.0, 0.5)))
print(f"\nrectangle: nearest zero found along direction {res.argmin_direction:.3g} (the long side)")
