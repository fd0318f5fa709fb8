"""Seeded random convex balanced domains."""
from __future__ import annotations

import numpy as np

from ..domains import ConvexPolygon, RadialProfile, StarShaped, max_convex_epsilon

MAX_ASPECT = 50.0
STAR_NODES = 512


def aspect(poly):
    return poly.r_max / poly.r_min


def random_polygon(rng, strips=(3, 4), widths=(0.6, 1.0)):
    """Intersection of 3-4 random symmetric strips, rejecting degenerate ones."""
    while True:
        k = int(rng.integers(strips[0], strips[1] + 1))
        ang = np.sort(rng.uniform(0, np.pi, k))
        w = rng.uniform(widths[0], widths[1], k)
        try:
            poly = ConvexPolygon.from_strips(ang, w)
        except (ValueError, np.linalg.LinAlgError):
            continue
        if aspect(poly) <= MAX_ASPECT:
            return poly


def random_star(rng, modes=4, decay=1.0, fraction=(0.3, 0.9)):
    """1 + eps F with eps a random fraction of the largest convex eps."""
    prof = RadialProfile.random(rng, modes, decay)
    eps = rng.uniform(*fraction) * max_convex_epsilon(prof)
    return StarShaped(prof, float(eps), 1.0, STAR_NODES)


def corpus(seed=0, count=100):
    """``count`` polygons then ``count`` star domains, labelled."""
    rng = np.random.default_rng(seed)
    polys = [(f"polygon-{i:03d}", random_polygon(rng)) for i in range(count)]
    stars = [(f"star-{i:03d}", random_star(rng)) for i in range(count)]
    return polys + stars
