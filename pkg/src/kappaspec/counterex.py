"""Two constructions with large kappa: a spiky planar domain with
kappa > j11 and unions of unit intervals with kappa * vol large."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .domains import DomainError, IntervalUnion, Spiky, ZetaProfile
from .fourier import ft_directional, ft_interval_union
from .specialfun import bessel_j, bessel_zero

J11 = bessel_zero(1, 1)

__all__ = [
    "ZetaProfile", "build_zeta", "zeta_moment", "zeta_mass", "radial_limit", "zeta_positivity",
    "select_delta", "spiky_domain", "verify_spiky", "NazarovInstance", "nazarov_search",
    "certify", "interval_union_kappa", "product_transform",
]


# ---------------------------------------------------------------------------
# spiky domain


def plateau_height(delta_tilde, delta):
    """a with int r xi_delta dr = 0, i.e. delta(2-delta) / (2 dt (2+dt))."""
    return delta * (2 - delta) / (2 * delta_tilde * (2 + delta_tilde))


def build_zeta(delta_tilde, delta):
    if not 0 < delta < delta_tilde < 1:
        raise DomainError("need 0 < delta < delta_tilde < 1")
    # delta < delta_tilde keeps a below 1/2, so zeta is non-increasing
    prof = ZetaProfile(delta_tilde, delta, plateau_height(delta_tilde, delta))
    if abs(zeta_moment(prof)) > 1e-12:
        raise ArithmeticError("moment condition failed")
    return prof


def zeta_moment(prof):
    """int r xi_delta dr: the -1/2 dip below r = 1 against the plateau above."""
    d, dt, a = prof.delta, prof.delta_tilde, prof.a
    return -0.25 * (1 - (1 - d) ** 2) + 0.5 * a * ((1 + dt) ** 2 - 1)


def zeta_mass(prof):
    """int r zeta dr; equals 1/2 (the unit disk value) when the moment vanishes."""
    d, dt, a = prof.delta, prof.delta_tilde, prof.a
    return 0.5 * (1 - d) ** 2 + 0.25 * (1 - (1 - d) ** 2) + 0.5 * a * ((1 + dt) ** 2 - 1)


def _layers(prof):
    # zeta as a sum of disks: weights on radii (1 - delta, 1, 1 + delta_tilde)
    return ((1 - prof.delta, 0.5), (1.0, 0.5 - prof.a), (1 + prof.delta_tilde, prof.a))


def radial_limit(prof, gamma):
    """l(gamma) = int r zeta(r) J0(gamma r) dr."""
    g = np.asarray(gamma, dtype=float)
    out = np.zeros_like(g)
    small = g < 1e-8
    gs = np.where(small, 1.0, g)
    for R, wgt in _layers(prof):
        out = out + wgt * np.where(small, 0.5 * R * R, R * bessel_j(1, gs * R) / gs)
    return float(out) if out.ndim == 0 else out


def radial_limit_derivative(prof, gamma):
    """l'(gamma) = -int r^2 zeta(r) J1(gamma r) dr."""
    g = np.asarray(gamma, dtype=float)
    gs = np.where(g < 1e-8, 1.0, g)
    out = np.zeros_like(g)
    for R, wgt in _layers(prof):
        out = out - wgt * np.where(g < 1e-8, 0.0, R * R * bessel_j(2, gs * R) / gs)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ZetaPositivity:
    minimum: float
    endpoint: float
    decreasing: bool

    @property
    def passed(self):
        return self.minimum > 0


def zeta_positivity(prof, gamma_max=J11, grid_size=512):
    g = np.linspace(0.0, gamma_max, grid_size + 1)
    vals = radial_limit(prof, g)
    slope = radial_limit_derivative(prof, g[1:])
    return ZetaPositivity(float(vals.min()), float(vals[-1]), bool(np.all(slope < 0)))


def select_delta(delta_tilde, gamma_max=J11, max_halvings=40):
    """Start at delta_tilde/4 and halve until l > 0 on [0, gamma_max]."""
    delta = delta_tilde / 4
    for _ in range(max_halvings):
        prof = build_zeta(delta_tilde, delta)
        if zeta_positivity(prof, gamma_max).passed:
            return prof
        delta *= 0.5
    raise ArithmeticError(f"no admissible delta found for delta_tilde = {delta_tilde}")


def spiky_domain(n, prof):
    if n < 8:
        raise DomainError("spiky construction uses n >= 8")
    if n % 2:
        raise DomainError("odd n gives a domain that is not centrally symmetric")
    return Spiky(int(n), prof)


@dataclass
class SpikyReport:
    n: int
    minimum: float
    argmin: tuple
    gap: float
    inner_radius: float
    outer_radius: float
    directions: int
    points: int
    gamma_max: float

    @property
    def passed(self):
        return self.minimum > 0

    def violation(self):
        if self.passed:
            return None
        return {"direction": self.argmin[0], "gamma": self.argmin[1], "value": self.minimum}


def verify_spiky(n, prof, gamma_max=J11, directions=720, points=512):
    """Evaluate chi_hat on a (direction x gamma) grid of [0, pi) x (0, gamma_max].

    ``gap`` is the largest deviation from the rotation-averaged limit
    2 pi l(gamma); positivity of the whole grid is the certificate.
    """
    dom = spiky_domain(n, prof)
    angles = np.pi * np.arange(directions) / directions
    gam = gamma_max * np.arange(1, points + 1) / points
    limit = 2 * np.pi * radial_limit(prof, gam)
    best, where, gap = math.inf, (math.nan, math.nan), 0.0
    for phi in angles:
        vals = ft_directional(dom, phi, gam)
        i = int(np.argmin(vals))
        if vals[i] < best:
            best, where = float(vals[i]), (float(phi), float(gam[i]))
        gap = max(gap, float(np.max(np.abs(vals - limit))))
    return SpikyReport(n, best, where, gap, dom.r_min, dom.r_max, directions, points, gamma_max)


# ---------------------------------------------------------------------------
# unions of unit intervals


@dataclass
class NazarovInstance:
    """Frequencies w_j (distinct positive integers <= n) with
    f(x) = sum cos(w_j x) > 0 on [-C/n, C/n]."""

    n: int
    frequencies: np.ndarray = field(repr=False)
    C: float
    seed: int
    grid_points: int
    grid_min: float
    dip_bound: float

    @property
    def count(self):
        return len(self.frequencies)

    @property
    def interval(self):
        return self.C / self.n

    @property
    def certified(self):
        return self.grid_min > self.dip_bound

    def f(self, x):
        return trig_sum(self.frequencies, x)

    def as_dict(self):
        return {"n": self.n, "C": self.C, "seed": self.seed, "grid_points": self.grid_points,
                "grid_min": self.grid_min, "dip_bound": self.dip_bound,
                "frequencies": [int(w) for w in self.frequencies]}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=1)

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["n"]), np.asarray(data["frequencies"], dtype=np.int64), float(data["C"]),
                   int(data["seed"]), int(data["grid_points"]), float(data["grid_min"]),
                   float(data["dip_bound"]))


def trig_sum(freqs, x, block=2048):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    w = np.asarray(freqs, dtype=float)
    out = np.empty(x.size)
    for s in range(0, x.size, block):
        out[s:s + block] = np.cos(np.multiply.outer(x[s:s + block], w)).sum(axis=1)
    return out


def expected_sum(n, x):
    """G(x) = 1 + 2 sum_k (1 - k/n)^2 cos(k x)."""
    k = np.arange(1, n + 1)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return 1 + 2 * np.cos(np.multiply.outer(x, k)) @ ((1 - k / n) ** 2)


def certify(freqs, C, n, grid_points=10_001):
    """(grid minimum, dip bound) of f on [0, C/n]; f is even so this covers [-C/n, C/n].

    Between neighbouring nodes f can fall below the smaller endpoint value
    by at most (step/2) * sum w_j, since |f'| <= sum w_j.
    """
    x = np.linspace(0.0, C / n, grid_points)
    step = x[1] - x[0]
    vals = trig_sum(freqs, x)
    return float(vals.min()), 0.5 * step * float(np.sum(freqs))


def nazarov_search(C, seed=0, n_start=32, n_max=1 << 17, draws=4, grid_points=10_001):
    """Random search for a certified instance, doubling n after ``draws`` failures."""
    if C <= 0:
        raise ValueError("C must be positive")
    rng = np.random.default_rng(seed)
    n = n_start
    tried = []
    while n <= n_max:
        if C / n < 2 * math.pi:
            k = np.arange(1, n + 1)
            p = (1 - k / n) ** 2
            for _ in range(draws):
                freqs = k[rng.random(n) < p]
                if freqs.size < n / 10:
                    tried.append((n, "too few frequencies"))
                    continue
                # cheap screening before the full certificate
                coarse = trig_sum(freqs, np.linspace(0, C / n, 257)).min()
                if coarse <= 0:
                    tried.append((n, coarse))
                    continue
                lo, dip = certify(freqs, C, n, grid_points)
                if lo > dip:
                    return NazarovInstance(n, freqs, float(C), seed, grid_points, lo, dip)
                tried.append((n, lo - dip))
        n *= 2
    raise ArithmeticError(f"no certified instance for C = {C} up to n = {n_max}: last attempts {tried[-4:]}")


def instance_domain(inst):
    return IntervalUnion(tuple(float(w) for w in inst.frequencies), 0.5)


@dataclass(frozen=True)
class IntervalUnionBound:
    kappa_lower_bound: float
    volume: float
    product: float


def interval_union_kappa(inst):
    """kappa(I_n) >= C/n: 4 sin(x/2)/x > 0 on (0, 2 pi) and f > 0 on [0, C/n]."""
    if not inst.certified:
        raise ArithmeticError("instance is not certified")
    if inst.interval >= 2 * math.pi:
        raise ArithmeticError("C/n must stay below the first zero 2 pi of sin(x/2)")
    vol = 2.0 * inst.count
    return IntervalUnionBound(inst.interval, vol, inst.interval * vol)


def product_transform(inst_or_domain, xi):
    """Transform of I x I at a planar wavevector: product of the 1D factors."""
    dom = inst_or_domain if isinstance(inst_or_domain, IntervalUnion) else instance_domain(inst_or_domain)
    xi = np.asarray(xi, dtype=float)
    return ft_interval_union(dom.centers, dom.half_width, xi[..., 0]) * \
        ft_interval_union(dom.centers, dom.half_width, xi[..., 1])
