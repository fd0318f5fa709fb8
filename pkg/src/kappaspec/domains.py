"""Balanced domains and their planar geometry.

Every domain is an immutable dataclass. Planar domains are all star-shaped
with respect to the origin, so they expose a radial boundary ``radius(theta)``
together with exact (or root-polished) versions of

* ``angular_measure(r)``: measure of ``{theta : R(theta) > r}``,
* ``area_within(r)``: area of the domain inside the disk of radius ``r``,

from which the ring functions eta, alpha and zeta follow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import roots_legendre

TWO_PI = 2.0 * math.pi
STAR_NODES = 4096


class DomainError(ValueError):
    """Raised for invalid or unsupported domain specifications."""


def unit_vector(direction, dim=2):
    """Angle (planar) or vector -> unit vector; non-unit vectors are rejected."""
    if np.ndim(direction) == 0:
        if dim != 2:
            raise DomainError("an angle only specifies a planar direction")
        phi = float(direction)
        return np.array([math.cos(phi), math.sin(phi)])
    e = np.asarray(direction, dtype=float)
    if e.shape != (dim,):
        raise DomainError(f"direction must have {dim} components")
    if abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise DomainError("direction must be a unit vector")
    return e


def _gl_panels(a, b, panel=0.1, order=12):
    """Composite Gauss-Legendre nodes/weights on [a, b]."""
    if b <= a:
        return np.empty(0), np.empty(0)
    x, w = roots_legendre(order)
    n = max(1, int(math.ceil((b - a) / panel)))
    edges = np.linspace(a, b, n + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


# ---------------------------------------------------------------------------
# radial profiles


@dataclass(frozen=True)
class RadialProfile:
    """F(theta) = sum_m p_m cos(2 m theta) + q_m sin(2 m theta), m >= 1.

    Only even harmonics appear, so F is pi-periodic and has zero mean.
    """

    cos_coeffs: tuple = ()
    sin_coeffs: tuple = ()

    def __post_init__(self):
        p = [float(c) for c in self.cos_coeffs]
        q = [float(c) for c in self.sin_coeffs]
        m = max(len(p), len(q))
        p += [0.0] * (m - len(p))
        q += [0.0] * (m - len(q))
        object.__setattr__(self, "cos_coeffs", tuple(p))
        object.__setattr__(self, "sin_coeffs", tuple(q))

    @property
    def modes(self):
        return len(self.cos_coeffs)

    def _arrays(self):
        m = np.arange(1, self.modes + 1)
        return m, np.array(self.cos_coeffs), np.array(self.sin_coeffs)

    def __call__(self, theta):
        return self.derivative(theta, 0)

    def derivative(self, theta, order=1):
        theta = np.asarray(theta, dtype=float)
        if self.modes == 0:
            return np.zeros_like(theta) + 0.0
        m, p, q = self._arrays()
        k = 2.0 * m
        arg = np.multiply.outer(theta, k)
        # d^n/dθ^n cos(kθ) = k^n cos(kθ + nπ/2)
        shift = order * math.pi / 2
        val = (k**order * p) * np.cos(arg + shift) + (k**order * q) * np.sin(arg + shift)
        return val.sum(axis=-1)

    def two_mode(self):
        """Integral of F(theta) exp(2 i theta) over [0, 2 pi]."""
        if self.modes == 0:
            return 0j
        return math.pi * complex(self.cos_coeffs[0], self.sin_coeffs[0])

    def rotated(self, phi):
        """Profile of theta -> F(theta + phi)."""
        m, p, q = self._arrays()
        c, s = np.cos(2 * m * phi), np.sin(2 * m * phi)
        return RadialProfile(tuple(p * c + q * s), tuple(q * c - p * s))

    def scaled(self, factor):
        return RadialProfile(
            tuple(factor * c for c in self.cos_coeffs),
            tuple(factor * c for c in self.sin_coeffs),
        )

    def l2_norm_sq(self):
        """Integral of F^2 over [0, 2 pi]."""
        return math.pi * sum(a * a + b * b for a, b in zip(self.cos_coeffs, self.sin_coeffs))

    @classmethod
    def random(cls, rng, modes=8, decay=0.0):
        m = np.arange(1, modes + 1)
        damp = m ** (-decay)
        return cls(
            tuple(rng.uniform(-1, 1, modes) * damp),
            tuple(rng.uniform(-1, 1, modes) * damp),
        )


@dataclass(frozen=True)
class ZetaProfile:
    """Piecewise constant angular-density profile of a spiky domain.

    Equal to 1 on [0, 1 - delta], 1/2 on (1 - delta, 1], ``a`` on
    (1, 1 + delta_tilde] and 0 beyond.
    """

    delta_tilde: float
    delta: float
    a: float

    def __post_init__(self):
        if not 0 < self.delta < self.delta_tilde < 1:
            raise DomainError("need 0 < delta < delta_tilde < 1")
        if not 0 <= self.a <= 0.5:
            raise DomainError("zeta profile must be non-increasing (a <= 1/2)")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.where(r <= 1 - self.delta, 1.0, 0.0)
        out = np.where((r > 1 - self.delta) & (r <= 1), 0.5, out)
        out = np.where((r > 1) & (r <= 1 + self.delta_tilde), self.a, out)
        return out + 0.0


# ---------------------------------------------------------------------------
# domain variants


@dataclass(frozen=True)
class Ball:
    dim: int = 2
    radius: float = 1.0

    def __post_init__(self):
        if self.dim < 1 or self.radius <= 0:
            raise DomainError("ball needs dim >= 1 and positive radius")

    @property
    def volume(self):
        d = self.dim
        return math.pi ** (d / 2) / math.gamma(d / 2 + 1) * self.radius**d

    @property
    def r_min(self):
        return self.radius

    r_max = r_min

    def radius_at(self, theta):
        return np.full_like(np.asarray(theta, dtype=float), self.radius) + 0.0

    def support(self, e):
        return self.radius

    def angular_measure(self, r):
        return np.where(np.asarray(r) < self.radius, TWO_PI, 0.0) + 0.0

    def area_within(self, r):
        return math.pi * np.minimum(np.asarray(r, dtype=float), self.radius) ** 2

    def critical_radii(self):
        return [self.radius]

    def chord(self, e, t):
        t = np.asarray(t, dtype=float)
        return 2.0 * np.sqrt(np.clip(self.radius**2 - t * t, 0.0, None))


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned box with the given half side lengths (any dimension)."""

    half_sides: tuple

    def __post_init__(self):
        h = tuple(float(v) for v in self.half_sides)
        if not h or min(h) <= 0:
            raise DomainError("rectangle half sides must be positive")
        object.__setattr__(self, "half_sides", h)

    @property
    def dim(self):
        return len(self.half_sides)

    @property
    def volume(self):
        return float(np.prod([2 * h for h in self.half_sides]))

    def support(self, e):
        return float(np.dot(np.abs(e), self.half_sides))

    def as_polygon(self):
        if self.dim != 2:
            raise DomainError("only planar rectangles convert to polygons")
        a, b = self.half_sides
        return ConvexPolygon(((a, -b), (a, b), (-a, b), (-a, -b)))


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Centrally symmetric convex polygon, vertices counter-clockwise."""

    vertices: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 4:
            raise DomainError("polygon needs at least four planar vertices")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        n = len(v)
        scale = 1.0 + np.abs(v).max()
        edges = np.roll(v, -1, axis=0) - v
        cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if self.area <= 1e-14 * scale**2:
            raise DomainError("degenerate polygon (zero area)")
        if np.any(cross <= 0):
            raise DomainError("vertices must be counter-clockwise and strictly convex")
        if n % 2 or np.abs(v[n // 2:] + v[: n // 2]).max() > 1e-12 * scale:
            raise DomainError("polygon must be centrally symmetric about the origin")

    def __eq__(self, other):
        return isinstance(other, ConvexPolygon) and np.array_equal(self.vertices, other.vertices)

    def __hash__(self):
        return hash(self.vertices.tobytes())

    @classmethod
    def from_half(cls, half_vertices):
        h = np.asarray(half_vertices, dtype=float)
        return cls(np.vstack([h, -h]))

    @classmethod
    def regular(cls, sides, circumradius=1.0, phase=0.0):
        if sides % 2:
            raise DomainError("a balanced regular polygon needs an even number of sides")
        ang = phase + TWO_PI * np.arange(sides) / sides
        return cls(circumradius * np.column_stack([np.cos(ang), np.sin(ang)]))

    @classmethod
    def from_strips(cls, angles, widths):
        """Intersection of the strips |x . u_i| <= w_i, u_i = (cos a_i, sin a_i)."""
        u = np.column_stack([np.cos(angles), np.sin(angles)])
        w = np.asarray(widths, dtype=float)
        normals = np.vstack([u, -u])
        offsets = np.concatenate([w, w])
        pts = []
        for i in range(len(normals)):
            for j in range(i + 1, len(normals)):
                a = np.array([normals[i], normals[j]])
                det = np.linalg.det(a)
                if abs(det) < 1e-12:
                    continue
                x = np.linalg.solve(a, [offsets[i], offsets[j]])
                if np.all(normals @ x <= offsets + 1e-10 * (1 + w.max())):
                    pts.append(x)
        pts = np.array(pts)
        ang = np.arctan2(pts[:, 1], pts[:, 0])
        order = np.argsort(ang)
        pts, ang = pts[order], ang[order]
        keep = [0]
        for i in range(1, len(pts)):
            if np.linalg.norm(pts[i] - pts[keep[-1]]) > 1e-9 * (1 + w.max()):
                keep.append(i)
        if np.linalg.norm(pts[keep[-1]] - pts[keep[0]]) <= 1e-9 * (1 + w.max()):
            keep.pop()
        pts = pts[keep]
        # drop collinear points
        n = len(pts)
        good = []
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            cr = (b - a)[0] * (c - b)[1] - (b - a)[1] * (c - b)[0]
            if cr > 1e-12 * (1 + w.max()) ** 2:
                good.append(i)
        pts = pts[good]
        half = len(pts) // 2
        # enforce exact antipodal symmetry
        sym = 0.5 * (pts[:half] - pts[half:])
        return cls(np.vstack([sym, -sym]))

    # -- geometry ---------------------------------------------------------

    def _edges(self):
        if "edges" not in self._cache:
            v = self.vertices
            b = np.roll(v, -1, axis=0)
            d = b - v
            length = np.hypot(d[:, 0], d[:, 1])
            normal = np.column_stack([d[:, 1], -d[:, 0]]) / length[:, None]
            dist = np.einsum("ij,ij->i", normal, v)
            psi = np.arctan2(normal[:, 1], normal[:, 0])
            ang_a = np.arctan2(v[:, 1], v[:, 0])
            span = np.mod(np.arctan2(b[:, 1], b[:, 0]) - ang_a, TWO_PI)
            self._cache["edges"] = (v, b, normal, dist, psi, ang_a, span)
        return self._cache["edges"]

    @property
    def area(self):
        v = np.asarray(self.vertices)
        x, y = v[:, 0], v[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

    volume = area

    @property
    def r_min(self):
        return float(self._edges()[3].min())

    @property
    def r_max(self):
        return float(np.linalg.norm(self.vertices, axis=1).max())

    def support(self, e):
        return float(np.max(self.vertices @ np.asarray(e)))

    def radius_at(self, theta):
        _, _, normal, dist, psi, _, _ = self._edges()
        theta = np.asarray(theta, dtype=float)
        c = np.cos(np.subtract.outer(theta, psi)) / dist
        return 1.0 / c.max(axis=-1)

    def angular_measure(self, r):
        _, _, _, dist, psi, ang_a, span = self._edges()
        r = np.atleast_1d(np.asarray(r, dtype=float))
        with np.errstate(divide="ignore", invalid="ignore"):
            beta = np.where(r[:, None] > dist, np.arccos(np.clip(dist / r[:, None], -1, 1)), 0.0)
        # edge k covers angles ang_a + [0, span]; inside-disk part is |theta - psi| <= beta
        offset = np.mod(psi - ang_a + math.pi, TWO_PI) - math.pi
        lo = np.clip(offset - beta, 0.0, span)
        hi = np.clip(offset + beta, 0.0, span)
        excluded = np.clip(hi - lo, 0.0, None).sum(axis=1)
        out = TWO_PI - excluded
        out = np.where(r >= np.linalg.norm(self.vertices, axis=1).max(), 0.0, out)
        return out if out.size > 1 else float(out[0])

    def area_within(self, r):
        _, _, _, dist, psi, ang_a, span = self._edges()
        r = np.atleast_1d(np.asarray(r, dtype=float))
        offset = np.mod(psi - ang_a + math.pi, TWO_PI) - math.pi
        # local angle s = theta - psi ranges over [-offset, span - offset]
        s0 = -offset
        s1 = span - offset
        with np.errstate(divide="ignore", invalid="ignore"):
            beta = np.where(r[:, None] > dist, np.arccos(np.clip(dist / r[:, None], -1, 1)), 0.0)
        lo = np.clip(-beta, s0, s1)
        hi = np.clip(beta, s0, s1)
        inside_len = np.clip(hi - lo, 0.0, None)
        tri = 0.5 * dist**2 * (np.tan(hi) - np.tan(lo))
        tri = np.where(inside_len > 0, tri, 0.0)
        outside = (span - inside_len) * 0.5 * r[:, None] ** 2
        total = (tri + outside).sum(axis=1)
        total = np.minimum(total, self.area)
        return total if total.size > 1 else float(total[0])

    def critical_radii(self):
        _, _, _, dist, _, _, _ = self._edges()
        return sorted(set(np.round(np.concatenate([dist, np.linalg.norm(self.vertices, axis=1)]), 15)))

    def chord(self, e, t):
        e = np.asarray(e, dtype=float)
        perp = np.array([-e[1], e[0]])
        v, b, *_ = self._edges()
        t = np.atleast_1d(np.asarray(t, dtype=float))
        sa = (v @ e)[None, :] - t[:, None]
        sb = (b @ e)[None, :] - t[:, None]
        cross = (sa * sb <= 0) & (sa != sb)
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = np.where(cross, sa / (sa - sb), np.nan)
        pa, pb = v @ perp, b @ perp
        s = pa[None, :] + lam * (pb - pa)[None, :]
        hi = np.where(cross, s, -np.inf).max(axis=1)
        lo = np.where(cross, s, np.inf).min(axis=1)
        out = np.where(np.any(cross, axis=1), hi - lo, 0.0)
        return out if out.size > 1 else float(out[0])


@dataclass(frozen=True)
class StarShaped:
    """Domain 0 <= r <= scale * (1 + epsilon * F(theta))."""

    profile: RadialProfile
    epsilon: float = 0.0
    scale: float = 1.0
    nodes: int = STAR_NODES
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.epsilon < 0 or self.scale <= 0:
            raise DomainError("epsilon must be >= 0 and scale > 0")
        th = np.linspace(0, TWO_PI, 8192, endpoint=False)
        if np.min(1.0 + self.epsilon * self.profile(th)) <= 0:
            raise DomainError("1 + epsilon*F must stay positive")

    def radius_at(self, theta):
        return self.scale * (1.0 + self.epsilon * self.profile(theta))

    def radius_derivative(self, theta, order=1):
        return self.scale * self.epsilon * self.profile.derivative(theta, order)

    def grid(self, nodes=None):
        nodes = nodes or self.nodes
        key = ("grid", nodes)
        if key not in self._cache:
            th = np.linspace(0, TWO_PI, nodes, endpoint=False)
            self._cache[key] = (th, self.radius_at(th))
        return self._cache[key]

    @property
    def volume(self):
        return 0.5 * self.scale**2 * (TWO_PI + self.epsilon**2 * self.profile.l2_norm_sq())

    def _extreme(self, sign):
        th, rr = self.grid()
        i = int(np.argmax(sign * rr))
        x = th[i]
        for _ in range(30):
            d1 = self.radius_derivative(x, 1)
            d2 = self.radius_derivative(x, 2)
            if d2 == 0:
                break
            step = d1 / d2
            x = x - step
            if abs(step) < 1e-15:
                break
        return float(max(sign * self.radius_at(x), sign * rr[i]) * sign)

    @property
    def r_max(self):
        return self._extreme(1.0)

    @property
    def r_min(self):
        return self._extreme(-1.0)

    def support(self, e):
        e = np.asarray(e, dtype=float)
        phi = math.atan2(e[1], e[0])
        th, rr = self.grid()
        h = rr * np.cos(th - phi)
        i = int(np.argmax(h))
        x = th[i]
        # maximise g(θ) = R(θ) cos(θ - φ) with Newton on g'
        for _ in range(30):
            r0 = self.radius_at(x)
            r1 = self.radius_derivative(x, 1)
            r2 = self.radius_derivative(x, 2)
            c, s = math.cos(x - phi), math.sin(x - phi)
            g1 = r1 * c - r0 * s
            g2 = r2 * c - 2 * r1 * s - r0 * c
            if g2 >= 0:
                break
            step = g1 / g2
            x -= step
            if abs(step) < 1e-15:
                break
        return float(max(self.radius_at(x) * math.cos(x - phi), h[i]))

    def _crossings(self, r):
        """Sorted angles where R(theta) = r, polished by Newton."""
        th, rr = self.grid()
        g = rr - r
        nxt = np.roll(g, -1)
        idx = np.nonzero(np.sign(g) != np.sign(nxt))[0]
        roots = []
        h = th[1] - th[0]
        for i in idx:
            a, b = th[i], th[i] + h
            ga = g[i]
            x = a + h * ga / (ga - nxt[i]) if ga != nxt[i] else a
            for _ in range(50):
                fx = self.radius_at(x) - r
                dfx = self.radius_derivative(x, 1)
                step = fx / dfx if dfx != 0 else 0.0
                cand = x - step
                if not a - 1e-12 <= cand <= b + 1e-12:
                    break
                x = cand
                if abs(step) < 1e-15:
                    break
            roots.append(x % TWO_PI)
        return np.sort(np.array(roots))

    def _pieces(self, r):
        """Angular pieces [a, b] with a flag telling whether R > r on them."""
        cuts = self._crossings(r)
        if cuts.size == 0:
            return [(0.0, TWO_PI, bool(self.radius_at(0.0) > r))]
        pieces = []
        ext = np.append(cuts, cuts[0] + TWO_PI)
        for a, b in zip(ext[:-1], ext[1:]):
            pieces.append((a, b, bool(self.radius_at(0.5 * (a + b)) > r)))
        return pieces

    def angular_measure(self, r):
        rs = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.array([sum(b - a for a, b, above in self._pieces(x) if above) for x in rs])
        return out if out.size > 1 else float(out[0])

    def area_within(self, r):
        rs = np.atleast_1d(np.asarray(r, dtype=float))
        out = []
        for x in rs:
            total = 0.0
            for a, b, above in self._pieces(x):
                if above:
                    total += 0.5 * x * x * (b - a)
                else:
                    nodes, weights = _gl_panels(a, b)
                    total += 0.5 * float(np.dot(weights, self.radius_at(nodes) ** 2))
            out.append(min(total, self.volume))
        out = np.array(out)
        return out if out.size > 1 else float(out[0])

    def critical_radii(self):
        th, rr = self.grid()
        d = self.radius_derivative(th, 1)
        idx = np.nonzero(np.sign(d) != np.sign(np.roll(d, -1)))[0]
        vals = {self.r_min, self.r_max}
        for i in idx:
            x = th[i]
            for _ in range(30):
                d1 = self.radius_derivative(x, 1)
                d2 = self.radius_derivative(x, 2)
                if d2 == 0:
                    break
                x -= d1 / d2
            vals.add(float(self.radius_at(x)))
        return sorted(vals)

    def chord(self, e, t):
        e = np.asarray(e, dtype=float)
        phi = math.atan2(e[1], e[0])
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        th, rr = self.grid()
        proj = rr * np.cos(th - phi)
        out = []
        for tv in ts:
            g = proj - tv
            nxt = np.roll(g, -1)
            idx = np.nonzero(np.sign(g) != np.sign(nxt))[0]
            pts = []
            h = th[1] - th[0]
            for i in idx:
                x = th[i] + h * g[i] / (g[i] - nxt[i]) if g[i] != nxt[i] else th[i]
                for _ in range(50):
                    r0 = self.radius_at(x)
                    r1 = self.radius_derivative(x, 1)
                    c, s = math.cos(x - phi), math.sin(x - phi)
                    f = r0 * c - tv
                    df = r1 * c - r0 * s
                    if df == 0:
                        break
                    step = f / df
                    x -= step
                    if abs(step) < 1e-15:
                        break
                r0 = self.radius_at(x)
                pts.append(r0 * np.array([math.cos(x), math.sin(x)]))
            if len(pts) < 2:
                out.append(0.0)
            else:
                pts = np.array(pts)
                perp = np.array([-e[1], e[0]])
                s = pts @ perp
                out.append(float(s.max() - s.min()))
        out = np.array(out)
        return out if out.size > 1 else float(out[0])

    def curvature_numerator(self, nodes=None):
        """R^2 + 2 R'^2 - R R'' on a uniform angular grid (sign of curvature)."""
        th, rr = self.grid(nodes)
        r1 = self.radius_derivative(th, 1)
        r2 = self.radius_derivative(th, 2)
        return rr**2 + 2 * r1**2 - rr * r2


@dataclass(frozen=True)
class Spiky:
    """n-fold rotationally symmetric star domain with angular density zeta.

    In the sector |phi| <= pi/n the domain is {|phi| < pi * zeta(r) / n}.
    """

    n: int
    zeta: ZetaProfile
    scale: float = 1.0

    def __post_init__(self):
        if self.n < 3:
            raise DomainError("spiky domain needs n >= 3")
        if self.n % 2:
            raise DomainError("spiky domain is balanced only for even n")

    def levels(self):
        """(outer radius, angular half-width in a sector) of the three layers."""
        z = self.zeta
        n = self.n
        s = self.scale
        return [
            (s * (1 - z.delta), math.pi / n),
            (s * 1.0, 0.5 * math.pi / n),
            (s * (1 + z.delta_tilde), z.a * math.pi / n),
        ]

    def radius_at(self, theta):
        theta = np.asarray(theta, dtype=float)
        sector = TWO_PI / self.n
        phi = np.mod(theta + 0.5 * sector, sector) - 0.5 * sector
        out = np.zeros_like(theta)
        for radius, half in self.levels():
            out = np.where(np.abs(phi) < half, radius, out)
        return out

    def pieces(self):
        """Angular pieces (start, stop, R) covering [0, 2 pi) exactly."""
        n = self.n
        sector = TWO_PI / n
        (r0, h0), (r1, h1), (r2, h2) = self.levels()
        local = [(-h0, -h1, r0), (-h1, -h2, r1), (-h2, h2, r2), (h2, h1, r1), (h1, h0, r0)]
        out = []
        for j in range(n):
            c = j * sector
            out.extend((c + a, c + b, r) for a, b, r in local if b > a)
        return out

    @property
    def volume(self):
        return sum(0.5 * (b - a) * r * r for a, b, r in self.pieces())

    @property
    def r_max(self):
        return self.scale * (1 + self.zeta.delta_tilde) if self.zeta.a > 0 else self.scale

    @property
    def r_min(self):
        return self.scale * (1 - self.zeta.delta)

    def support(self, e):
        e = np.asarray(e, dtype=float)
        best = 0.0
        for a, b, r in self.pieces():
            ang = np.linspace(a, b, 9)
            best = max(best, float(np.max(r * (np.cos(ang) * e[0] + np.sin(ang) * e[1]))))
        return best

    def angular_measure(self, r):
        rs = np.atleast_1d(np.asarray(r, dtype=float))
        pcs = self.pieces()
        out = np.array([sum(b - a for a, b, rad in pcs if rad > x) for x in rs])
        return out if out.size > 1 else float(out[0])

    def area_within(self, r):
        rs = np.atleast_1d(np.asarray(r, dtype=float))
        pcs = self.pieces()
        out = np.array([sum(0.5 * (b - a) * min(rad, x) ** 2 for a, b, rad in pcs) for x in rs])
        return out if out.size > 1 else float(out[0])

    def critical_radii(self):
        return sorted({r for r, _ in self.levels()})


@dataclass(frozen=True)
class IntervalUnion:
    """1D set {x : ||x| - w_j| <= half_width for some j}."""

    centers: tuple
    half_width: float = 0.5

    def __post_init__(self):
        w = tuple(float(c) for c in self.centers)
        object.__setattr__(self, "centers", w)
        if not w:
            raise DomainError("interval union needs at least one center")
        h = self.half_width
        if w[0] < 2 * h or any(b < a + 2 * h for a, b in zip(w, w[1:])):
            raise DomainError("need w_1 >= 1 and w_{j+1} >= w_j + 1 (disjoint intervals)")

    dim = 1

    @property
    def volume(self):
        return 4.0 * self.half_width * len(self.centers)

    @property
    def diameter(self):
        return 2.0 * (max(self.centers) + self.half_width)


@dataclass(frozen=True)
class RevolutionBody:
    """Body of revolution of the square |x1| + |x2| < 1 about the x1-axis,
    with the transverse coordinates compressed by ``alpha``."""

    alpha: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise DomainError("alpha must be positive")

    dim = 3

    @property
    def volume(self):
        return 2.0 * math.pi / (3.0 * self.alpha**2)

    @property
    def diameter(self):
        return 2.0 * max(1.0, 1.0 / self.alpha)


PLANAR_STAR = (Ball, ConvexPolygon, StarShaped, Spiky)


def planar(spec):
    """Planar star-shaped view of a spec (rectangles become polygons)."""
    if isinstance(spec, Rectangle):
        return spec.as_polygon()
    if isinstance(spec, Ball) and spec.dim != 2:
        raise DomainError("only planar balls have ring functions")
    if not isinstance(spec, PLANAR_STAR):
        raise DomainError(f"{type(spec).__name__} is not a planar star-shaped domain")
    return spec


def scaled(spec, s):
    """Image of ``spec`` under the homothety x -> s x."""
    if s <= 0:
        raise DomainError("homothety factor must be positive")
    if isinstance(spec, Ball):
        return Ball(spec.dim, spec.radius * s)
    if isinstance(spec, Rectangle):
        return Rectangle(tuple(h * s for h in spec.half_sides))
    if isinstance(spec, ConvexPolygon):
        return ConvexPolygon(spec.vertices * s)
    if isinstance(spec, StarShaped):
        return StarShaped(spec.profile, spec.epsilon, spec.scale * s, spec.nodes)
    if isinstance(spec, Spiky):
        return Spiky(spec.n, spec.zeta, spec.scale * s)
    if isinstance(spec, IntervalUnion):
        return IntervalUnion(tuple(c * s for c in spec.centers), spec.half_width * s)
    raise DomainError(f"homothety not supported for {type(spec).__name__}")


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class GeometricDescriptors:
    dim: int
    volume: float
    diameter: float
    inradius: float
    support: Callable = field(repr=False)
    radial: Callable | None = field(default=None, repr=False)


def descriptors(spec):
    """Volume, diameter, inradius and support / radial boundary functions."""
    if isinstance(spec, IntervalUnion):
        return GeometricDescriptors(1, spec.volume, spec.diameter, spec.half_width,
                                    lambda e: max(spec.centers) + spec.half_width)
    if isinstance(spec, RevolutionBody):
        return GeometricDescriptors(3, spec.volume, spec.diameter, min(1.0, 1.0 / spec.alpha) / math.sqrt(2),
                                    lambda e: None)
    if isinstance(spec, Ball) and spec.dim != 2:
        return GeometricDescriptors(spec.dim, spec.volume, 2 * spec.radius, spec.radius,
                                    lambda e: spec.radius)
    if isinstance(spec, Rectangle) and spec.dim != 2:
        h = np.array(spec.half_sides)
        return GeometricDescriptors(spec.dim, spec.volume, 2 * float(np.linalg.norm(h)), float(h.min()),
                                    lambda e: spec.support(np.asarray(e)))
    dom = planar(spec)

    def support(e):
        return dom.support(unit_vector(e))

    diam, inr = 2 * dom.r_max, dom.r_min
    return GeometricDescriptors(2, float(dom.volume), float(diam), float(inr), support, dom.radius_at)


class RingValues(NamedTuple):
    eta: float
    alpha: float
    zeta: float


def ring_functions(spec, r):
    """eta(r) (arc length inside), alpha(r) (area fraction), zeta = eta/(2 pi r)."""
    dom = planar(spec)
    r = float(r)
    if r < 0:
        raise DomainError("radius must be non-negative")
    measure = float(dom.angular_measure(r))
    eta = r * measure
    alpha = float(dom.area_within(r)) / float(dom.volume)
    zeta = measure / TWO_PI if r > 0 else 1.0
    return RingValues(eta, min(alpha, 1.0), zeta)


def chord_width(spec, e, t):
    """Length of the chord {x . e = t} of a planar convex domain."""
    if isinstance(spec, (Spiky, IntervalUnion, RevolutionBody)):
        raise DomainError("chord function is only provided for planar convex domains")
    dom = planar(spec)
    if isinstance(dom, StarShaped) and check_convex_balanced(dom).convex is not True:
        raise DomainError("chord function is only provided for convex domains")
    return dom.chord(unit_vector(e), t)


class ConvexBalanced(NamedTuple):
    convex: bool | None
    balanced: bool
    indeterminate: bool = False


def check_convex_balanced(spec, tol=1e-10):
    """Convexity / central-symmetry predicates.

    Star-shaped profiles are always balanced (even harmonics only); their
    convexity is decided from the sign of R^2 + 2R'^2 - R R'' on the grid.
    Values within ``tol`` of zero give ``convex=None`` (indeterminate).
    """
    if isinstance(spec, (Ball, Rectangle, RevolutionBody)):
        return ConvexBalanced(True, True)
    if isinstance(spec, ConvexPolygon):
        v = spec.vertices
        n = len(v)
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        bal = n % 2 == 0 and np.abs(v[n // 2:] + v[: n // 2]).max() <= 1e-12 * (1 + np.abs(v).max())
        return ConvexBalanced(bool(np.all(cross > 0)), bool(bal))
    if isinstance(spec, StarShaped):
        key = ("convex", tol)
        if key not in spec._cache:
            lo = float((spec.curvature_numerator(STAR_NODES) / spec.scale**2).min())
            if abs(lo) <= tol:
                spec._cache[key] = ConvexBalanced(None, True, True)
            else:
                spec._cache[key] = ConvexBalanced(lo > 0, True)
        return spec._cache[key]
    if isinstance(spec, Spiky):
        return ConvexBalanced(False, spec.n % 2 == 0)
    if isinstance(spec, IntervalUnion):
        return ConvexBalanced(False, True)
    raise DomainError(f"unknown domain type {type(spec).__name__}")


def max_convex_epsilon(profile, tol=1e-9):
    """Largest epsilon for which 1 + epsilon*F bounds a convex domain."""
    lo, hi = 0.0, 1.0
    th = np.linspace(0, TWO_PI, STAR_NODES, endpoint=False)
    f0, f1, f2 = profile(th), profile.derivative(th, 1), profile.derivative(th, 2)

    def ok(eps):
        r = 1 + eps * f0
        return np.all(r > 0) and np.min(r**2 + 2 * (eps * f1) ** 2 - r * eps * f2) > 0

    while ok(hi):
        hi *= 2
        if hi > 1e6:
            return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if ok(mid) else (lo, mid)
    return lo


# ---------------------------------------------------------------------------
# structured-text (JSON-shaped) schema


def spec_to_dict(spec):
    if isinstance(spec, Ball):
        return {"type": "ball", "dim": spec.dim, "radius": spec.radius}
    if isinstance(spec, Rectangle):
        return {"type": "rectangle", "half_sides": list(spec.half_sides)}
    if isinstance(spec, ConvexPolygon):
        return {"type": "polygon", "vertices": spec.vertices.tolist()}
    if isinstance(spec, StarShaped):
        return {"type": "star", "epsilon": spec.epsilon, "scale": spec.scale, "nodes": spec.nodes,
                "cos": list(spec.profile.cos_coeffs), "sin": list(spec.profile.sin_coeffs)}
    if isinstance(spec, Spiky):
        z = spec.zeta
        return {"type": "spiky", "n": spec.n, "delta_tilde": z.delta_tilde, "delta": z.delta,
                "a": z.a, "scale": spec.scale}
    if isinstance(spec, IntervalUnion):
        return {"type": "interval_union", "centers": list(spec.centers), "half_width": spec.half_width}
    if isinstance(spec, RevolutionBody):
        return {"type": "revolution", "alpha": spec.alpha}
    raise DomainError(f"unknown domain type {type(spec).__name__}")


def spec_from_dict(data):
    """Build a domain from its JSON-shaped description (see README)."""
    if not isinstance(data, dict) or "type" not in data:
        raise DomainError("domain description needs a 'type' field")
    kind = data["type"]
    try:
        if kind == "ball":
            return Ball(int(data.get("dim", 2)), float(data.get("radius", 1.0)))
        if kind == "rectangle":
            return Rectangle(tuple(data["half_sides"]))
        if kind == "polygon":
            return ConvexPolygon(np.asarray(data["vertices"], dtype=float))
        if kind == "star":
            prof = RadialProfile(tuple(data.get("cos", ())), tuple(data.get("sin", ())))
            return StarShaped(prof, float(data.get("epsilon", 0.0)), float(data.get("scale", 1.0)),
                              int(data.get("nodes", STAR_NODES)))
        if kind == "spiky":
            dt = float(data["delta_tilde"])
            delta = float(data["delta"])
            a = data.get("a")
            if a is None:
                a = delta * (2 - delta) / (2 * dt * (2 + dt))
            return Spiky(int(data["n"]), ZetaProfile(dt, delta, float(a)), float(data.get("scale", 1.0)))
        if kind == "interval_union":
            return IntervalUnion(tuple(data["centers"]), float(data.get("half_width", 0.5)))
        if kind == "revolution":
            return RevolutionBody(float(data["alpha"]))
    except DomainError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed '{kind}' description: {exc}") from exc
    raise DomainError(f"unknown domain type {kind!r}")
