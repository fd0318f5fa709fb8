"""Fourier transform of indicator functions, chi_hat(xi) = int_Omega exp(-i xi.x) dx.

For balanced domains this is the real cosine transform. Closed forms are used
for balls, boxes, interval unions and the axis of the revolution body; planar
star-shaped domains use polar quadrature with the radial integral done
exactly; polygons use the exact piecewise-linear chord function.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy import integrate
from scipy.special import roots_legendre

from .domains import (
    Ball,
    ConvexPolygon,
    DomainError,
    IntervalUnion,
    Rectangle,
    RevolutionBody,
    Spiky,
    StarShaped,
    TWO_PI,
    planar,
    ring_functions,
    unit_vector,
)
from .specialfun import bessel_j


def _sinc(x):
    return np.sinc(np.asarray(x) / math.pi)


def radial_cos_integral(radius, c):
    """int_0^R cos(c r) r dr = R^2 (sinc(cR) - sinc(cR/2)^2 / 2).

    Written as 2 s (x c - s) / x^2 with s, c the sine and cosine of x/2,
    which has no cancellation for moderate x; a short Taylor series covers
    |x| < 0.05.
    """
    radius = np.asarray(radius, dtype=float)
    x = np.asarray(c) * radius
    half = 0.5 * x
    s, co = np.sin(half), np.cos(half)
    small = np.abs(x) < 0.05
    xs = np.where(small, 1.0, x)
    x2 = x * x
    series = 0.5 - x2 / 8 + x2 * x2 / 144 - x2**3 / 5760
    core = np.where(small, series, 2 * s * (xs * co - s) / (xs * xs))
    return radius**2 * core


def _s1(x):
    """(sin x - x cos x) / x^2, odd, ~ x/3 near 0."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 0.5
    xs = np.where(small, x, 0.0)
    series = np.zeros_like(xs)
    x2 = xs * xs
    term = xs / 3.0
    for k in range(1, 10):
        series = series + term
        # ratio of consecutive terms 2k x^{2k-1}/(2k+1)!
        term = -term * x2 * (2 * k + 2) / (2 * k * (2 * k + 2) * (2 * k + 3))
    xl = np.where(small, 1.0, x)
    direct = (np.sin(xl) - xl * np.cos(xl)) / (xl * xl)
    return np.where(small, series, direct)


# ---------------------------------------------------------------------------
# closed forms


def ft_ball(dim, radius, rho):
    """(2 pi)^{d/2} R^d J_{d/2}(rho R) / (rho R)^{d/2}."""
    rho = np.asarray(rho, dtype=float)
    x = rho * radius
    nu = dim / 2.0
    vol = math.pi**nu / math.gamma(nu + 1) * radius**dim
    tiny = x < 1e-8
    xs = np.where(tiny, 1.0, x)
    val = (TWO_PI) ** nu * radius**dim * bessel_j(nu, xs) / xs**nu
    out = np.where(tiny, vol, val)
    return float(out) if out.ndim == 0 else out


def ft_rectangle(half_sides, xi):
    """prod_j a_j sinc(xi_j a_j / 2) with a_j = 2 h_j the full side."""
    h = np.asarray(half_sides, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != h.size:
        raise DomainError("wavevector dimension does not match the box")
    val = np.prod(2 * h * _sinc(xi * h), axis=-1)
    return float(val) if np.ndim(val) == 0 else val


def ft_interval_union(centers, half_width, xi):
    """sum_j 4 h cos(w_j xi) sinc(h xi)."""
    xi = np.asarray(xi, dtype=float)
    w = np.asarray(centers, dtype=float)
    val = 4 * half_width * _sinc(half_width * xi) * np.cos(np.multiply.outer(xi, w)).sum(axis=-1)
    return float(val) if np.ndim(val) == 0 else val


def ft_revolution_axis(alpha, xi1):
    """Transform of T_alpha along its axis: 4 pi alpha^-2 (xi - sin xi) / xi^3.

    The cross-section at height x is a disk of radius (1 - |x|)/alpha, so the
    value is 2 pi alpha^-2 int_0^1 (1 - x)^2 cos(x xi) dx, and that integral
    is 2 (xi - sin xi)/xi^3. At xi = 0 this gives the volume 2 pi/(3 alpha^2).
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    x = np.abs(np.asarray(xi1, dtype=float))
    small = x < 1e-2
    xs = np.where(small, 1.0, x)
    direct = (xs - np.sin(xs)) / xs**3
    x2 = x * x
    # (x - sin x)/x^3 = 1/6 - x^2/120 + x^4/5040 - x^6/362880 + ...
    series = 1 / 6 - x2 / 120 + x2**2 / 5040 - x2**3 / 362880 + x2**4 / 39916800
    val = 2 * TWO_PI / alpha**2 * np.where(small, series, direct)
    return float(val) if val.ndim == 0 else val


# ---------------------------------------------------------------------------
# polygons


def polygon_chord_segments(poly, e):
    """Breakpoints t_k and chord values at both ends of each linear piece."""
    t = np.unique(np.round(poly.vertices @ e, 14))
    lo, hi = t[:-1], t[1:]
    q1 = lo + 0.25 * (hi - lo)
    q3 = lo + 0.75 * (hi - lo)
    c1 = np.atleast_1d(poly.chord(e, q1))
    c3 = np.atleast_1d(poly.chord(e, q3))
    slope = (c3 - c1) / (q3 - q1)
    nu_lo = c1 - slope * (q1 - lo)
    nu_hi = c3 + slope * (hi - q3)
    return lo, hi, nu_lo, nu_hi


def ft_polygon_chord(poly, e, rho):
    """int cos(rho t) nu_e(t) dt with nu_e exactly piecewise linear."""
    lo, hi, nu_lo, nu_hi = polygon_chord_segments(poly, e)
    rho = np.asarray(rho, dtype=float)
    r = np.atleast_1d(rho)[:, None]
    m = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    mean = 0.5 * (nu_lo + nu_hi)
    tilt = 0.5 * (nu_hi - nu_lo)
    x = r * h
    val = h * (2 * mean * np.cos(r * m) * _sinc(x) - 2 * tilt * np.sin(r * m) * _s1(x))
    out = val.sum(axis=1)
    return float(out[0]) if rho.ndim == 0 else out


def ft_polygon_edges(vertices, xi):
    """Complex transform of any simple CCW polygon by the divergence theorem.

    chi_hat(xi) = (i/|xi|^2) sum_k (xi . N_k) exp(-i xi.m_k) sinc(xi.d_k / 2),
    with d_k the edge vector, m_k its midpoint and N_k = (d_y, -d_x).
    """
    v = np.asarray(vertices, dtype=float)
    b = np.roll(v, -1, axis=0)
    d = b - v
    mid = 0.5 * (v + b)
    normal = np.column_stack([d[:, 1], -d[:, 0]])
    xi = np.asarray(xi, dtype=float)
    flat = np.atleast_2d(xi)
    k2 = np.einsum("ij,ij->i", flat, flat)
    terms = (flat @ normal.T) * np.exp(-1j * (flat @ mid.T)) * _sinc(0.5 * (flat @ d.T))
    area = 0.5 * float(np.dot(v[:, 0], b[:, 1]) - np.dot(v[:, 1], b[:, 0]))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 1j * terms.sum(axis=1) / k2
    out = np.where(k2 < 1e-16, area + 0j, out)
    return complex(out[0]) if xi.ndim == 1 else out


# ---------------------------------------------------------------------------
# star-shaped and spiky domains


def ft_star(dom, phi, rho, nodes=None):
    """Polar trapezoid in theta, exact radial integral.

    R(theta + pi) = R(theta) and the radial integral is even in c, so the
    half-circle of nodes already carries the whole sum.
    """
    th, rr = dom.grid(nodes)
    used = th.size // 2 if th.size % 2 == 0 else th.size
    th, rr = th[:used], rr[:used]
    rho = np.asarray(rho, dtype=float)
    c = np.multiply.outer(np.atleast_1d(rho), np.cos(th - phi))
    vals = radial_cos_integral(rr, c)
    out = vals.sum(axis=1) * (TWO_PI / used)
    return float(out[0]) if rho.ndim == 0 else out


_GL_SPIKE = roots_legendre(6)


def _spiky_nodes(dom):
    """Angular Gauss nodes (theta, weight, R) over the part outside the core disk."""
    x, w = _GL_SPIKE
    core = dom.levels()[0][0]
    th, wt, rad = [], [], []
    for a, b, r in dom.pieces():
        if r <= core:
            continue
        half = 0.5 * (b - a)
        th.append(0.5 * (a + b) + half * x)
        wt.append(half * w)
        rad.append(np.full(x.size, r))
    return np.concatenate(th), np.concatenate(wt), np.concatenate(rad), core


def ft_spiky(dom, phi, rho):
    """Core disk in closed form plus each spike layer by Gauss quadrature."""
    th, wt, rad, core = _spiky_nodes(dom)
    rho = np.asarray(rho, dtype=float)
    r = np.atleast_1d(rho)
    c = np.multiply.outer(r, np.cos(th - phi))
    layer = (radial_cos_integral(rad, c) - radial_cos_integral(core, c)) @ wt
    out = ft_ball(2, core, r) + layer
    return float(out[0]) if rho.ndim == 0 else out


# ---------------------------------------------------------------------------
# dispatch


def ft_directional(spec, e, rho, nodes=None):
    """chi_hat(rho e) for a balanced domain, rho >= 0 scalar or array.

    ``e`` is a unit vector, or an angle for planar domains, or +-1 in 1D.
    """
    if isinstance(spec, IntervalUnion):
        if np.ndim(e) and np.size(e) == 1:
            e = float(np.ravel(e)[0])
        if abs(abs(float(e)) - 1.0) > 1e-12:
            raise DomainError("1D direction must be +1 or -1")
        return ft_interval_union(spec.centers, spec.half_width, rho)
    if isinstance(spec, RevolutionBody):
        ev = unit_vector(e, 3)
        if abs(abs(ev[0]) - 1.0) > 1e-12:
            raise DomainError("the revolution body transform is only available along its axis")
        return ft_revolution_axis(spec.alpha, rho)
    if isinstance(spec, Ball):
        if spec.dim != 2:
            unit_vector(e, spec.dim)
        else:
            unit_vector(e)
        return ft_ball(spec.dim, spec.radius, rho)
    if isinstance(spec, Rectangle):
        ev = unit_vector(e, spec.dim)
        rho_arr = np.asarray(rho, dtype=float)
        return ft_rectangle(spec.half_sides, np.multiply.outer(rho_arr, ev))
    ev = unit_vector(e)
    phi = math.atan2(ev[1], ev[0])
    if isinstance(spec, ConvexPolygon):
        return ft_polygon_chord(spec, ev, rho)
    if isinstance(spec, StarShaped):
        return ft_star(spec, phi, rho, nodes)
    if isinstance(spec, Spiky):
        return ft_spiky(spec, phi, rho)
    raise DomainError(f"no transform for {type(spec).__name__}")


def ft_value(spec, xi, nodes=None):
    """chi_hat at a planar (or d-dim) wavevector."""
    xi = np.asarray(xi, dtype=float)
    k = float(np.linalg.norm(xi))
    if k == 0:
        return float(spec.volume)
    return float(ft_directional(spec, xi / k, k, nodes))


class AveragedBessel(NamedTuple):
    value: float
    by_alpha: float


def averaged_bessel(spec, rtol=1e-8):
    """int_Omega J0(|x|) dx, as int eta J0 dr and as vol * int alpha J1 dr.

    Both routes are computed independently; a disagreement above
    ``rtol * vol`` raises ArithmeticError.
    """
    dom = planar(spec)
    vol = float(dom.volume)
    inner = float(dom.r_min)
    crit = [r for r in dom.critical_radii() if r > inner]
    outer = max([inner] + crit)
    pts = sorted(set([inner] + crit))

    def j0(r):
        return bessel_j(0, r)

    # eta = 2 pi r on [0, inner], so that part is 2 pi inner J1(inner)
    head = TWO_PI * inner * bessel_j(1, inner)
    body = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        body += integrate.quad(lambda r: ring_functions(dom, r).eta * j0(r), a, b,
                               epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    route_eta = head + body

    tail = 0.0
    edges = [0.0] + pts
    for a, b in zip(edges[:-1], edges[1:]):
        tail += integrate.quad(lambda r: ring_functions(dom, r).alpha * bessel_j(1, r), a, b,
                               epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    route_alpha = vol * (tail + j0(outer))
    if abs(route_eta - route_alpha) > rtol * vol:
        raise ArithmeticError(
            f"averaged Bessel routes disagree: {route_eta!r} vs {route_alpha!r}"
        )
    return AveragedBessel(route_eta, route_alpha)
