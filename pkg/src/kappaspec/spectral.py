"""Dirichlet and Neumann Laplacian eigenvalues of planar balanced domains.

Disks and rectangles use closed forms. Convex polygons and star-shaped
domains use the method of particular solutions: a Fourier-Bessel basis
centred at the origin (plus corner-adapted fractional Bessel functions at
polygon vertices), with eigenvalues located at minima of the subspace angle
between the basis and the functions vanishing on the boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize
from scipy.special import jv, jvp, roots_legendre

from .domains import (
    Ball,
    ConvexPolygon,
    DomainError,
    Rectangle,
    StarShaped,
    TWO_PI,
    check_convex_balanced,
)
from .specialfun import bessel_deriv_zero, bessel_zero

MAX_COUNT = 10
DEGENERATE_RTOL = 1e-6


@dataclass(frozen=True)
class SpectrumResult:
    dirichlet: np.ndarray
    neumann: np.ndarray
    accuracy: np.ndarray
    method: str
    clusters: list = field(default_factory=list)


class ConvergenceError(ArithmeticError):
    """The collocation solver could not resolve the requested eigenvalues."""


def _clusters(values):
    groups = []
    for i, v in enumerate(values):
        if groups and abs(v - values[groups[-1][-1]]) <= DEGENERATE_RTOL * max(abs(v), 1e-300):
            groups[-1].append(i)
        else:
            groups.append([i])
    return [g for g in groups if len(g) > 1]


# ---------------------------------------------------------------------------
# closed forms


def disk_dirichlet(radius, count):
    vals = []
    for m in range(count + 1):
        for k in range(1, count + 2):
            z = bessel_zero(m, k) / radius
            vals.extend([z * z] * (1 if m == 0 else 2))
    return np.sort(vals)[:count]


def disk_neumann(radius, count):
    vals = [0.0]
    for m in range(count + 1):
        for k in range(1, count + 2):
            z = bessel_deriv_zero(m, k) / radius
            vals.extend([z * z] * (1 if m == 0 else 2))
    return np.sort(vals)[:count]


def rectangle_eigs(half_sides, count, neumann=False):
    a = 2.0 * np.asarray(half_sides, dtype=float)
    lo = 0 if neumann else 1
    top = lo + count + 1
    grids = np.meshgrid(*[np.arange(lo, top)] * len(a), indexing="ij")
    lam = np.pi**2 * sum((g / s) ** 2 for g, s in zip(grids, a))
    return np.sort(lam.ravel())[:count]


# ---------------------------------------------------------------------------
# collocation geometry


@dataclass
class _Geometry:
    bx: np.ndarray        # boundary points (N, 2)
    bn: np.ndarray        # outward unit normals (N, 2)
    bw: np.ndarray        # sqrt of quadrature weights
    ix: np.ndarray        # interior points (K, 2)
    corners: list         # (vertex, edge-in angle, interior angle) for polygons
    area: float


def _star_geometry(dom, points, interior, rng):
    th = TWO_PI * (np.arange(points) + 0.5) / points
    r = dom.radius_at(th)
    dr = dom.radius_derivative(th, 1)
    c, s = np.cos(th), np.sin(th)
    bx = np.column_stack([r * c, r * s])
    tang = np.column_stack([dr * c - r * s, dr * s + r * c])
    speed = np.hypot(tang[:, 0], tang[:, 1])
    bn = np.column_stack([tang[:, 1], -tang[:, 0]]) / speed[:, None]
    bw = np.sqrt(speed * TWO_PI / points)
    ti = rng.uniform(0, TWO_PI, interior)
    ri = dom.radius_at(ti) * np.sqrt(rng.uniform(0.05, 0.85, interior))
    ix = np.column_stack([ri * np.cos(ti), ri * np.sin(ti)])
    return _Geometry(bx, bn, bw, ix, [], float(dom.volume))


def _polygon_geometry(poly, points, interior, rng):
    v = poly.vertices
    n = len(v)
    b = np.roll(v, -1, axis=0)
    lengths = np.linalg.norm(b - v, axis=1)
    per_edge = np.maximum(8, np.round(points * lengths / lengths.sum()).astype(int))
    pts, nrm, wts = [], [], []
    for k in range(n):
        x, w = roots_legendre(int(per_edge[k]))
        t = 0.5 * (x + 1)
        pts.append(v[k] + np.outer(t, b[k] - v[k]))
        d = (b[k] - v[k]) / lengths[k]
        nrm.append(np.tile([d[1], -d[0]], (len(t), 1)))
        wts.append(0.5 * w * lengths[k])
    bx = np.vstack(pts)
    bn = np.vstack(nrm)
    bw = np.sqrt(np.concatenate(wts))
    corners = []
    for k in range(n):
        prev = v[k - 1]
        out_dir = b[k] - v[k]
        in_dir = prev - v[k]
        start = math.atan2(out_dir[1], out_dir[0])
        angle = (math.atan2(in_dir[1], in_dir[0]) - start) % TWO_PI
        corners.append((v[k].copy(), start, angle))
    ti = rng.uniform(0, TWO_PI, interior)
    ri = poly.radius_at(ti) * np.sqrt(rng.uniform(0.05, 0.85, interior))
    ix = np.column_stack([ri * np.cos(ti), ri * np.sin(ti)])
    return _Geometry(bx, bn, bw, ix, corners, float(poly.area))


# ---------------------------------------------------------------------------
# basis


def _integer_bessel_table(top, x):
    """J_0..J_top at the points x, shape (len(x), top + 1).

    J_top and J_{top-1} come from scipy; lower orders follow from the
    backward three-term recurrence, which is stable in that direction.
    """
    out = np.empty((x.size, top + 1))
    out[:, top] = jv(top, x)
    out[:, top - 1] = jv(top - 1, x)
    xs = np.where(x > 0, x, 1.0)
    for m in range(top - 1, 0, -1):
        out[:, m - 1] = (2.0 * m / xs) * out[:, m] - out[:, m + 1]
    zero = x == 0
    if np.any(zero):
        out[zero] = 0.0
        out[zero, 0] = 1.0
    return out


class _FractionalBessel:
    """J_nu and J_nu' for a fixed set of orders on [0, xmax].

    Below x = 2 the ascending series is summed directly; above, values come
    from cubic Hermite interpolation of a table built once with scipy
    (spacing 4e-3, interpolation error below 1e-12).
    """

    SPLIT = 2.0
    STEP = 4e-3

    def __init__(self, orders, xmax):
        self.orders = np.asarray(orders, dtype=float)
        self.xmax = max(float(xmax), self.SPLIT + 1.0)
        grid = np.arange(self.SPLIT, self.xmax + 2 * self.STEP, self.STEP)
        nu = self.orders[None, :]
        x = grid[:, None]
        self.grid = grid
        self.j = jv(nu, x)
        self.d1 = jv(nu - 1, x) - nu / x * self.j
        # Bessel's equation gives the higher derivatives from J and J'
        self.d2 = -self.d1 / x - (1 - nu**2 / x**2) * self.j
        self.d3 = -self.d2 / x + self.d1 / x**2 - (1 - nu**2 / x**2) * self.d1 - 2 * nu**2 / x**3 * self.j
        k = np.arange(25)[:, None]
        self.coef = (-1.0) ** k / (_factorial(k) * _gamma(k + nu + 1))

    def _series(self, x):
        half = 0.5 * x[:, None, None]
        k = np.arange(25)[None, :, None]
        nu = self.orders[None, None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = self.coef[None] * half ** (2 * k + nu)
            val = terms.sum(axis=1)
            dterms = terms * (2 * k + nu) / np.where(x[:, None, None] > 0, x[:, None, None], 1.0)
            der = dterms.sum(axis=1)
        return val, der

    def _hermite(self, x, f, df):
        pos = (x - self.SPLIT) / self.STEP
        i = np.clip(pos.astype(int), 0, len(self.grid) - 2)
        t = (pos - i)[:, None]
        h00 = (1 + 2 * t) * (1 - t) ** 2
        h10 = t * (1 - t) ** 2
        h01 = t * t * (3 - 2 * t)
        h11 = t * t * (t - 1)
        return h00 * f[i] + h10 * self.STEP * df[i] + h01 * f[i + 1] + h11 * self.STEP * df[i + 1]

    def __call__(self, x, deriv=False):
        x = np.asarray(x, dtype=float)
        if np.any(x > self.xmax):
            raise ValueError("argument beyond the tabulated range")
        val = np.empty((x.size, self.orders.size))
        der = np.empty_like(val) if deriv else None
        low = x < self.SPLIT
        if np.any(low):
            v, d = self._series(x[low])
            val[low] = v
            if deriv:
                der[low] = d
        high = ~low
        if np.any(high):
            val[high] = self._hermite(x[high], self.j, self.d1)
            if deriv:
                der[high] = self._hermite(x[high], self.d1, self.d2)
        return val, der


def _factorial(k):
    from scipy.special import factorial

    return factorial(k)


def _gamma(x):
    from scipy.special import gamma

    return gamma(x)


class _Basis:
    """Particular solutions of the Helmholtz equation in one parity class.

    ``parity`` 0 keeps functions even under x -> -x, 1 keeps odd ones.
    """

    def __init__(self, geom, parity, order, corner_terms, neumann, k_max=None):
        self.g = geom
        self.parity = parity
        self.order = order
        self.corner_terms = corner_terms
        self.neumann = neumann
        self.k_max = k_max
        self._tables = {}

    def _table(self, angle):
        key = round(angle, 12)
        if key not in self._tables:
            nu = math.pi / angle
            ls = np.arange(0 if self.neumann else 1, self.corner_terms + (0 if self.neumann else 1))
            reach = 2 * float(np.abs(self.g.bx).max()) * 1.5
            self._tables[key] = _FractionalBessel(nu * ls, self.k_max * reach)
        return self._tables[key]

    def _fb(self, x, k, with_grad):
        r = np.hypot(x[:, 0], x[:, 1])
        th = np.arctan2(x[:, 1], x[:, 0])
        ms = np.arange(self.parity, self.order + 1, 2)
        kr = k * r
        table = _integer_bessel_table(self.order + 1, kr)
        J = table[:, ms]
        cols = []
        grads = []
        for trig, dtrig in ((np.cos, lambda a: -np.sin(a)), (np.sin, np.cos)):
            use = ms if trig is np.cos else ms[ms > 0]
            idx = np.searchsorted(ms, use)
            ang = th[:, None] * use[None, :]
            cols.append(J[:, idx] * trig(ang))
            if with_grad:
                lower = np.where(use > 0, use - 1, 1)
                sign = np.where(use > 0, 1.0, -1.0)
                dJ = 0.5 * k * (sign * table[:, lower] - table[:, use + 1])
                rs = np.where(r > 0, r, 1.0)[:, None]
                ur = dJ * trig(ang)
                ut = J[:, idx] * use[None, :] * dtrig(ang) / rs
                c, s = np.cos(th)[:, None], np.sin(th)[:, None]
                grads.append((ur * c - ut * s, ur * s + ut * c))
        val = np.hstack(cols)
        if not with_grad:
            return val, None
        gx = np.hstack([gx for gx, _ in grads])
        gy = np.hstack([gy for _, gy in grads])
        return val, (gx, gy)

    def _corner_one(self, x, k, vertex, start, angle, with_grad):
        d = x - vertex
        rho = np.hypot(d[:, 0], d[:, 1])
        phi = (np.arctan2(d[:, 1], d[:, 0]) - start) % TWO_PI
        phi = np.where(phi > angle + 0.5 * (TWO_PI - angle), phi - TWO_PI, phi)
        table = self._table(angle)
        orders = table.orders
        J, dJ = table(k * rho, with_grad)
        ang = phi[:, None] * orders[None, :]
        trig = np.cos(ang) if self.neumann else np.sin(ang)
        val = J * trig
        if not with_grad:
            return val, None
        dJ = k * dJ
        dtrig = -np.sin(ang) if self.neumann else np.cos(ang)
        rs = np.where(rho > 0, rho, 1.0)[:, None]
        ur = dJ * trig
        ut = J * orders[None, :] * dtrig / rs
        a = (phi + start)[:, None]
        c, s = np.cos(a), np.sin(a)
        return val, (ur * c - ut * s, ur * s + ut * c)

    def evaluate(self, x, k, with_grad=False):
        val, grad = self._fb(x, k, with_grad)
        vals, gxs, gys = [val], [], []
        if with_grad:
            gxs.append(grad[0])
            gys.append(grad[1])
        if self.corner_terms:
            sign = 1.0 if self.parity == 0 else -1.0
            half = len(self.g.corners) // 2
            for vertex, start, angle in self.g.corners[:half]:
                # pair each corner with its antipode to stay in the parity class
                v1, g1 = self._corner_one(x, k, vertex, start, angle, with_grad)
                v2, g2 = self._corner_one(-x, k, vertex, start, angle, with_grad)
                vals.append(v1 + sign * v2)
                if with_grad:
                    gxs.append(g1[0] - sign * g2[0])
                    gys.append(g1[1] - sign * g2[1])
        val = np.hstack(vals)
        if not with_grad:
            return val, None
        return val, (np.hstack(gxs), np.hstack(gys))

    def singular_values(self, k, count=2):
        g = self.g
        if self.neumann:
            vb, (gx, gy) = self.evaluate(g.bx, k, True)
            rows_b = (gx * g.bn[:, :1] + gy * g.bn[:, 1:]) / k
        else:
            rows_b, _ = self.evaluate(g.bx, k)
        rows_b = rows_b * g.bw[:, None]
        rows_i, _ = self.evaluate(g.ix, k)
        rows_i = rows_i * math.sqrt(g.area / len(g.ix))
        a = np.vstack([rows_b, rows_i])
        norms = np.linalg.norm(a, axis=0)
        keep = norms > 1e-300
        a = a[:, keep] / norms[keep]
        u, s, _ = np.linalg.svd(a, full_matrices=False)
        q = u[:, s > 1e-12 * s[0]]
        sb = np.linalg.svd(q[: len(rows_b)], compute_uv=False)
        return np.sort(sb)[:count]


# ---------------------------------------------------------------------------
# eigenvalue search


def _window_search(basis, a, b, n, thresh):
    """Eigenvalue wavenumbers in [a, b], listed twice when degenerate."""
    ks = np.linspace(a, b, n)
    sig = np.array([basis.singular_values(k, 1)[0] for k in ks])
    out = []
    for i in range(n):
        left = sig[i - 1] if i > 0 else np.inf
        right = sig[i + 1] if i < n - 1 else np.inf
        if not (sig[i] <= left and sig[i] <= right):
            continue
        lo, hi = ks[max(i - 1, 0)], ks[min(i + 1, n - 1)]
        # sigma^2 is smooth (locally quadratic) at a minimum, sigma itself is V-shaped
        res = optimize.minimize_scalar(lambda k: basis.singular_values(k, 1)[0] ** 2,
                                       bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-9 * max(1.0, b)})
        kk = float(res.x)
        sv = basis.singular_values(kk, 2)
        if sv[0] < thresh and not any(abs(kk - o) < 1e-9 * kk for o in out):
            out.append(kk)
            # a second small singular value marks a degenerate pair
            if sv[1] < thresh:
                out.append(kk)
    return out


def _sweep(bases, k_lo, k_cap, step, count, thresh):
    """March k upward in both parity classes until ``count`` roots are bracketed.

    Returns (k, parity) pairs, degenerate roots repeated. Two roots closer
    than about a step can alias into one sampled minimum; a small second
    singular value flags that case and widens the search window.
    """
    ks = []
    sig = {p: [] for p in bases}
    found = []
    k = k_lo
    while True:
        ks.append(k)
        for p, basis in bases.items():
            sig[p].append(basis.singular_values(k, 2))
        i = len(ks) - 2
        if i >= 1:
            for p, basis in bases.items():
                s1 = [v[0] for v in sig[p]]
                if s1[i] <= s1[i - 1] and s1[i] <= s1[i + 1] and s1[i] < 0.15:
                    crowded = min(v[1] for v in sig[p][i - 1:i + 2]) < 0.15
                    lo, hi, n = (ks[max(i - 2, 0)], k + step, 21) if crowded else (ks[i - 1], ks[i + 1], 7)
                    _merge(found, p, _window_search(basis, lo, hi, n, thresh))
        roots = sorted(f[0] for f in found)
        if len(roots) >= count and k > roots[count - 1] + 2 * step:
            return sorted(found)
        if k > k_cap:
            raise ConvergenceError(
                f"found only {len(roots)} of {count} eigenvalues below k = {k_cap:.4g}"
            )
        k += step


def _merge(found, parity, roots):
    # overlapping windows converge to the same root up to the optimiser tolerance
    for kk in sorted(set(roots)):
        mult = roots.count(kk)
        have = sum(1 for f in found if f[1] == parity and abs(f[0] - kk) < 1e-7 * kk)
        found.extend([(kk, parity)] * max(0, mult - have))


def _scale_of(spec):
    if isinstance(spec, StarShaped):
        return spec.r_max
    return float(np.linalg.norm(spec.vertices, axis=1).max())


def _geometry(spec, points, interior, seed):
    rng = np.random.default_rng(seed)
    if isinstance(spec, StarShaped):
        return _star_geometry(spec, points, interior, rng)
    return _polygon_geometry(spec, points, interior, rng)


def _solve(spec, count, neumann, order, points, interior, corner_terms, step, thresh, seed):
    """Sweep with the base basis, then re-polish every root with a richer one.

    Ten times the relative change between the two resolutions is reported
    as the accuracy estimate.
    """
    corner_terms = 0 if isinstance(spec, StarShaped) else corner_terms
    geom = _geometry(spec, points, interior, seed)
    rich = _geometry(spec, 2 * points, 2 * interior, seed + 1)
    area = geom.area
    wanted = count - 1 if neumann else count
    if wanted == 0:
        return np.zeros(1), np.full(1, 1e-12)
    # a generous multiple of Weyl's law N(lambda) ~ area lambda / (4 pi) caps the sweep
    k_cap = math.sqrt(4 * math.pi * (wanted + 4) / area * 3.0 + 40.0 / area)
    k_lo = 0.5 / _scale_of(spec) if neumann else 0.9 * bessel_zero(0, 1) * math.sqrt(math.pi / area)
    extra = corner_terms + 4 if corner_terms else 0
    bases = {p: _Basis(geom, p, order, corner_terms, neumann, k_cap + 1) for p in (0, 1)}
    richer = {p: _Basis(rich, p, order + 8, extra, neumann, k_cap + 1) for p in (0, 1)}
    roots = _sweep(bases, k_lo, k_cap, step, wanted, thresh)[:wanted]
    # keep a degenerate partner together with its root
    coarse, fine = [], []
    done = set()
    for kk, p in roots:
        if (kk, p) in done:
            continue
        done.add((kk, p))
        mult = sum(1 for r in roots if r == (kk, p))
        half = 0.25 * step
        again = _window_search(richer[p], kk - half, kk + half, 5, thresh)
        again = (again + [kk] * mult)[:mult]
        coarse.extend([kk] * mult)
        fine.extend(again)
    idx = np.argsort(fine)
    lo = np.array(coarse)[idx] ** 2
    hi = np.array(fine)[idx] ** 2
    if neumann:
        lo = np.concatenate([[0.0], lo])
        hi = np.concatenate([[0.0], hi])
    lo, hi = lo[:count], hi[:count]
    acc = 10 * np.abs(hi - lo) / np.maximum(np.abs(hi), 1e-300)
    return hi, np.maximum(acc, 1e-12)


def _check_supported(spec, count):
    if not 1 <= count <= MAX_COUNT:
        raise ValueError(f"count must be between 1 and {MAX_COUNT}")
    if isinstance(spec, Ball):
        if spec.dim != 2:
            raise DomainError("eigenvalues are only computed in the plane")
        return "disk"
    if isinstance(spec, Rectangle):
        if spec.dim != 2:
            raise DomainError("eigenvalues are only computed in the plane")
        return "rectangle"
    if isinstance(spec, ConvexPolygon):
        return "polygon"
    if isinstance(spec, StarShaped):
        if check_convex_balanced(spec).convex is False:
            raise DomainError("collocation is only supported for convex star-shaped domains")
        return "star"
    raise DomainError(f"eigenvalues are not supported for {type(spec).__name__}")


def dirichlet_eigs(spec, count=5, *, collocation=False, order=24, points=256, interior=64,
                   corner_terms=8, step=None, thresh=2e-3, seed=0):
    """First ``count`` Dirichlet eigenvalues, ascending with multiplicity.

    ``collocation=True`` forces the particular-solution solver even where a
    closed form exists (used to validate the solver).
    """
    kind = _check_supported(spec, count)
    if kind == "disk" and not collocation:
        vals = disk_dirichlet(spec.radius, count)
        return SpectrumResult(vals, np.empty(0), np.full(count, 1e-15), "closed-form", _clusters(vals))
    if kind == "rectangle" and not collocation:
        vals = rectangle_eigs(spec.half_sides, count)
        return SpectrumResult(vals, np.empty(0), np.full(count, 1e-15), "closed-form", _clusters(vals))
    dom = _as_collocation_domain(spec)
    step = step or 0.06 / _scale_of(dom)
    vals, acc = _solve(dom, count, False, order, points, interior, corner_terms, step, thresh, seed)
    return SpectrumResult(vals, np.empty(0), acc, "collocation", _clusters(vals))


def neumann_eigs(spec, count=5, *, collocation=False, order=24, points=256, interior=64,
                 corner_terms=8, step=None, thresh=2e-3, seed=0):
    """First ``count`` Neumann eigenvalues (mu_1 = 0 by convention).

    The collocation route minimises the normal derivative on the boundary;
    it is less accurate than the Dirichlet solver.
    """
    kind = _check_supported(spec, count)
    if kind == "disk" and not collocation:
        vals = disk_neumann(spec.radius, count)
        return SpectrumResult(np.empty(0), vals, np.full(count, 1e-15), "closed-form", _clusters(vals))
    if kind == "rectangle" and not collocation:
        vals = rectangle_eigs(spec.half_sides, count, neumann=True)
        return SpectrumResult(np.empty(0), vals, np.full(count, 1e-15), "closed-form", _clusters(vals))
    dom = _as_collocation_domain(spec)
    step = step or 0.06 / _scale_of(dom)
    vals, acc = _solve(dom, count, True, order, points, interior, corner_terms, step, thresh, seed)
    return SpectrumResult(np.empty(0), vals, acc, "collocation", _clusters(vals))


def _as_collocation_domain(spec):
    if isinstance(spec, Ball):
        return StarShaped(_zero_profile(), 0.0, spec.radius)
    if isinstance(spec, Rectangle):
        return spec.as_polygon()
    return spec


def _zero_profile():
    from .domains import RadialProfile

    return RadialProfile((0.0,), (0.0,))


# ---------------------------------------------------------------------------
# comparisons between kappa and the two spectra


def inequality_checks(spec, n_max=5, collocation=False, angular_resolution=180, tol=1e-9):
    """kappa against sqrt(mu_2), 2 sqrt(mu_2), sqrt(mu_3); mu_{n+1} < lambda_n;
    and mu_{n+2} <= lambda_n whenever kappa <= 2 sqrt(lambda_n)."""
    from .harness.report import Check, VerificationReport
    from .nullvariety import kappa

    res = kappa(spec, angular_resolution)
    k_val = float(res.kappa)
    curve_max = res.curve_max if len(res.per_direction_roots) else k_val
    lam = dirichlet_eigs(spec, n_max, collocation=collocation)
    mu = neumann_eigs(spec, min(n_max + 2, MAX_COUNT), collocation=collocation)
    d, m = lam.dirichlet, mu.neumann
    slack = tol + (max(lam.accuracy.max(), mu.accuracy.max()) if collocation else 0.0)
    rep = VerificationReport("eigenvalue inequalities")
    rep.add(Check("kappa >= sqrt(mu_2)", k_val, math.sqrt(m[1]), ">=", "Neumann lower bound", tol=slack * k_val))
    rep.add(Check("kappa >= 2 sqrt(mu_2)", k_val, 2 * math.sqrt(m[1]), ">=", "doubled Neumann bound",
                  tol=slack * k_val))
    rep.add(Check("max_e kappa_1(e) >= sqrt(mu_3)", curve_max, math.sqrt(m[2]), ">=", "null curve vs mu_3",
                  tol=slack * k_val))
    for n in range(1, n_max + 1):
        if n < len(m):
            rep.add(Check(f"mu_{n + 1} < lambda_{n}", m[n], d[n - 1], "<", "Neumann below Dirichlet"))
        if n + 1 < len(m) and k_val <= 2 * math.sqrt(d[n - 1]) * (1 + slack):
            rep.add(Check(f"mu_{n + 2} <= lambda_{n}", m[n + 1], d[n - 1], "<=",
                          "conditional shift when kappa <= 2 sqrt(lambda_n)", tol=slack * d[n - 1]))
    return rep
