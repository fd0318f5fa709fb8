"""Real zeros of the directional transform, kappa and the first null curve."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .domains import (
    Ball,
    ConvexPolygon,
    DomainError,
    IntervalUnion,
    Rectangle,
    Spiky,
    StarShaped,
    check_convex_balanced,
    descriptors,
    unit_vector,
)
from .fourier import ft_directional, ft_polygon_edges
from .specialfun import bessel_zero

DIP_TOL = 1e-8
CONVEX_SCAN = 32
GENERAL_SCAN = 2048
GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class Exceeds:
    """Certified outcome "no zero found up to ``bound``"."""

    bound: float

    def __str__(self):
        return f"exceeds({self.bound:.10g})"

    def __float__(self):
        return math.inf


@dataclass(frozen=True)
class NullVarietyResult:
    kappa: float | Exceeds
    argmin_direction: float
    per_direction_roots: np.ndarray = field(repr=False)
    search_bound: float

    @property
    def finite(self):
        return not isinstance(self.kappa, Exceeds)

    @property
    def curve_max(self):
        vals = self.per_direction_roots[:, 1]
        return float(np.max(vals)) if vals.size else math.nan


def _is_convex_planar(spec):
    if isinstance(spec, (Ball, Rectangle)):
        return getattr(spec, "dim", 2) == 2
    if isinstance(spec, ConvexPolygon):
        return True
    if isinstance(spec, StarShaped):
        return check_convex_balanced(spec).convex is True
    return False


def _default_bound(spec, e, j=1):
    if isinstance(spec, IntervalUnion):
        # the sinc factor vanishes at pi / half_width
        return math.pi * j / spec.half_width
    if _is_convex_planar(spec):
        w = descriptors(spec).support(e)
        return math.pi * (j + 1) / w * (1 + 1e-9)
    d = descriptors(spec)
    return 2 * math.pi * j / d.inradius


def _scan_events(f, grid, vals, vol, limit):
    """Roots along a scanned ray, in order, up to ``limit`` of them.

    Sign changes are polished with Brent's method. Interior local minima of
    |f| without a sign change are minimised; if they dip below DIP_TOL*vol
    they count as double roots.
    """
    events = []
    n = len(grid)
    for i in range(n - 1):
        a, b = grid[i], grid[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            if not events or events[-1] != a:
                events.append(a)
        elif fa * fb < 0:
            events.append(optimize.brentq(f, a, b, xtol=1e-15, rtol=1e-15, maxiter=200))
        elif 0 < i and abs(fa) <= abs(vals[i - 1]) and abs(fa) <= abs(fb) and vals[i - 1] * fa > 0:
            if abs(fa) < 0.05 * vol:
                s = 1.0 if fa > 0 else -1.0
                res = optimize.minimize_scalar(lambda x: s * f(x), bounds=(grid[i - 1], b),
                                               method="bounded", options={"xatol": 1e-13})
                if abs(res.fun) <= DIP_TOL * vol:
                    events.extend([res.x, res.x])
        if len(events) >= limit:
            break
    if len(events) < limit and vals[-1] == 0.0:
        events.append(grid[-1])
    return events[:limit]


def directional_roots(spec, e, count=1, bound=None, scan_points=None, nodes=None):
    """First ``count`` positive zeros of rho -> chi_hat(rho e), multiplicity counted."""
    if bound is None:
        bound = _default_bound(spec, e, count)
    if bound <= 0:
        raise ValueError("bound must be positive")
    convex = _is_convex_planar(spec)
    if scan_points is None:
        scan_points = CONVEX_SCAN * count if convex else GENERAL_SCAN
    f = (lambda x: ft_directional(spec, e, x, nodes)) if nodes else (lambda x: ft_directional(spec, e, x))
    vol = float(spec.volume)
    start = 0.0
    if convex:
        # nu_e is even and non-increasing on [0, w], which forces
        # chi_hat_e > 0 on (0, pi/w): pair s with pi - s in the cosine integral
        start = min(math.pi / descriptors(spec).support(e) * (1 - 1e-9), 0.5 * bound)
    grid = np.linspace(start, bound, scan_points + 1)
    if start == 0.0:
        grid = grid[1:]
    if convex:
        # the bracket end can itself be a double root (tent-shaped chord
        # functions), so step once past it to see the minimum as interior
        grid = np.append(grid, bound + (grid[-1] - grid[-2]))
    vals = np.asarray(f(grid))
    return [float(r) for r in _scan_events(f, grid, vals, vol, count)]


def first_root(spec, e, bound=None, scan_points=None, nodes=None):
    """kappa_1(e), or Exceeds(bound) when no zero lies in (0, bound]."""
    if bound is None:
        bound = _default_bound(spec, e)
    roots = directional_roots(spec, e, 1, bound, scan_points, nodes)
    return roots[0] if roots else Exceeds(bound)


def _as_angle(e):
    if np.ndim(e) == 0:
        return float(e)
    ev = unit_vector(e)
    return math.atan2(ev[1], ev[0])


def _golden_min(f, a, b, tol):
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _closed_form_result(spec):
    if isinstance(spec, Ball):
        k = bessel_zero(spec.dim / 2, 1) / spec.radius
        return NullVarietyResult(k, 0.0, np.empty((0, 2)), k)
    h = np.asarray(spec.half_sides)
    i = int(np.argmax(h))
    k = math.pi / h[i]
    return NullVarietyResult(k, float(i), np.empty((0, 2)), k)


def _grid_certificate(spec, bound, angular_resolution, points):
    """Evaluate chi_hat on a (direction x rho) grid of (0, bound]."""
    angles = np.pi * np.arange(angular_resolution) / angular_resolution
    rho = bound * np.arange(1, points + 1) / points
    table = np.empty((angular_resolution, points))
    for i, phi in enumerate(angles):
        table[i] = ft_directional(spec, phi, rho)
    return angles, rho, table


def kappa(spec, angular_resolution=720, bound=None, scan_points=None, nodes=None,
          refine=True, angle_tol=1e-6):
    """kappa(Omega) = min over directions of the first directional zero.

    Convex planar domains use the bracket (0, 2 pi / w(e)] per direction.
    Other planar domains are scanned on a (direction x rho) grid up to
    ``bound``; if the grid is positive everywhere the result is Exceeds(bound).
    """
    if isinstance(spec, IntervalUnion):
        b = bound or _default_bound(spec, 1.0)
        r = first_root(spec, 1.0, b, scan_points or GENERAL_SCAN)
        return NullVarietyResult(r, 0.0, np.array([[0.0, float(r)]]), b)
    if isinstance(spec, (Ball, Rectangle)) and getattr(spec, "dim", 2) != 2:
        return _closed_form_result(spec)
    if not isinstance(spec, (Ball, Rectangle, ConvexPolygon, StarShaped, Spiky)):
        raise DomainError(f"kappa is not available for {type(spec).__name__}")

    if not _is_convex_planar(spec):
        if bound is None:
            bound = _default_bound(spec, 0.0)
        points = scan_points or 512
        angles, rho, table = _grid_certificate(spec, bound, angular_resolution, points)
        vol = float(spec.volume)
        roots = []
        for i, phi in enumerate(angles):
            f = lambda x, p=phi: ft_directional(spec, p, x)
            ev = _scan_events(f, rho, table[i], vol, 1)
            roots.append(ev[0] if ev else math.inf)
        roots = np.array(roots)
        curve = np.column_stack([angles, roots])
        if not np.any(np.isfinite(roots)):
            return NullVarietyResult(Exceeds(bound), float(angles[np.argmin(table.min(axis=1))]), curve, bound)
        i = int(np.argmin(roots))
        return NullVarietyResult(float(roots[i]), float(angles[i]), curve, bound)

    def k1(phi):
        r = first_root(spec, phi, None, scan_points, nodes)
        if isinstance(r, Exceeds):
            raise ArithmeticError(f"no zero below the guaranteed bracket at angle {phi}")
        return r

    angles = np.pi * np.arange(angular_resolution) / angular_resolution
    roots = np.array([k1(phi) for phi in angles])
    curve = np.column_stack([angles, roots])
    i = int(np.argmin(roots))
    best_phi, best = float(angles[i]), float(roots[i])
    if refine and angular_resolution > 1:
        step = np.pi / angular_resolution
        phi, val = _golden_min(k1, best_phi - step, best_phi + step, angle_tol)
        if val < best:
            best_phi, best = float(phi % np.pi), float(val)
    search = max(2 * math.pi / descriptors(spec).support(unit_vector(a)) for a in angles[:: max(1, len(angles) // 16)])
    return NullVarietyResult(best, best_phi, curve, search)


def null_curve(spec, angular_resolution=720, nodes=None):
    """Samples (angle, kappa_1(angle)) over [0, pi) for a convex planar domain."""
    if not _is_convex_planar(spec):
        raise DomainError("the null curve is only sampled for convex planar domains")
    return kappa(spec, angular_resolution, nodes=nodes, refine=False).per_direction_roots


# ---------------------------------------------------------------------------
# right triangle T_{1,a}


def triangle_kappa(a):
    """Closed form 2 pi sqrt(1 + a^-2) for the right triangle with legs 1, a."""
    if a <= 0:
        raise ValueError("leg length must be positive")
    return 2 * math.pi * math.sqrt(1 + a**-2)


def triangle_vertices(a):
    return np.array([[0.0, 0.0], [1.0, 0.0], [0.0, float(a)]])


def triangle_kappa_search(a, radius=12.0, radial_step=0.02, angular_points=1440):
    """Smallest |xi| with chi_hat_T(xi) = 0 (real and imaginary parts).

    The complex transform is evaluated on a polar grid of the disk of the
    given radius; every local minimum of |chi_hat| is polished by a 2D
    Newton-type solve on (Re, Im) and the nearest true zero is returned.
    """
    v = triangle_vertices(a)
    area = 0.5 * a
    rs = np.arange(radial_step, radius + radial_step, radial_step)
    th = 2 * np.pi * np.arange(angular_points) / angular_points
    pts = np.stack([np.multiply.outer(rs, np.cos(th)), np.multiply.outer(rs, np.sin(th))], axis=-1)
    mag = np.abs(ft_polygon_edges(v, pts.reshape(-1, 2))).reshape(len(rs), len(th))
    core = mag[1:-1]
    neigh = [np.roll(mag, s, axis=1)[1 + dr: len(rs) - 1 + dr] for dr in (-1, 0, 1) for s in (-1, 0, 1)
             if (dr, s) != (0, 0)]
    is_min = np.all([core <= n for n in neigh], axis=0) & (core < 0.1 * area)
    cand = pts[1:-1][is_min]

    def eqs(x):
        z = ft_polygon_edges(v, x)
        return [z.real, z.imag]

    best = math.inf
    for x0 in cand[np.argsort(np.linalg.norm(cand, axis=1))]:
        if np.linalg.norm(x0) - 2 * radial_step > best:
            break
        sol = optimize.root(eqs, x0, method="hybr", options={"xtol": 1e-14})
        z = ft_polygon_edges(v, sol.x)
        if abs(z) < 1e-11 * area:
            best = min(best, float(np.linalg.norm(sol.x)))
    if not math.isfinite(best):
        raise ArithmeticError("no zero of the triangle transform in the search disk")
    return best
