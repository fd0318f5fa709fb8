"""First-order shifts of kappa and sqrt(lambda_2) under deformations
r = 1 + eps F(theta) of the unit disk."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .domains import RadialProfile, StarShaped
from .specialfun import bessel_j, bessel_zero

J11 = bessel_zero(1, 1)
A_CONST = -bessel_j(0, J11)  # ~ 0.4028
QUAD_NODES = 4096
ALPHA_GRID = 2048


@dataclass(frozen=True)
class PerturbationReport:
    d_sqrt_lambda2: float
    d_kappa: float
    lhs_p1: float
    rhs_p1: float
    rotation_angle: float


def _check_profile(F):
    if not isinstance(F, RadialProfile):
        raise TypeError("expected a RadialProfile (zero mean, pi-periodic by construction)")


def eigen_matrix(F, nodes=QUAD_NODES):
    """The 2x2 Hadamard matrix for the pair J1(j11 r){cos, sin}(theta).

    With L2-normalized eigenfunctions the normal derivatives on r = 1 are
    -j11 sqrt(2/pi) {cos, sin}, and m_ij = -int du_i du_j F dtheta over
    the full circle.
    """
    _check_profile(F)
    th = 2 * np.pi * np.arange(nodes) / nodes
    w = 2 * np.pi / nodes
    f = F(th)
    du = -J11 * math.sqrt(2 / math.pi) * np.stack([np.cos(th), np.sin(th)])
    return -w * np.einsum("it,jt,t->ij", du, du, f)


def lambda2_derivative(F, with_matrix=False):
    """d sqrt(lambda_2)/d eps at eps = 0+, i.e. -(j11/2pi)|int F e^{2i theta}|.

    With ``with_matrix`` the value from the smaller eigenvalue of the
    Hadamard matrix is returned alongside.
    """
    _check_profile(F)
    closed = -J11 / (2 * math.pi) * abs(F.two_mode()) + 0.0
    if not with_matrix:
        return closed
    lam = np.linalg.eigvalsh(eigen_matrix(F))
    return closed, float(lam[0]) / (2 * J11)


def _cos_moments(modes, nodes=QUAD_NODES):
    """Trapezoid values of int cos/sin(2 m theta) cos(j11 cos theta) over the circle."""
    th = 2 * np.pi * np.arange(nodes) / nodes
    g = np.cos(J11 * np.cos(th))
    m = np.arange(1, modes + 1)
    arg = 2 * np.multiply.outer(m, th)
    w = 2 * np.pi / nodes
    return w * (np.cos(arg) @ g), w * (np.sin(arg) @ g)


def shift_integral(F, alpha, nodes=QUAD_NODES):
    """I(alpha) = int_0^{2pi} F(theta + alpha) cos(j11 cos theta) dtheta."""
    _check_profile(F)
    alpha = np.asarray(alpha, dtype=float)
    if F.modes == 0:
        return np.zeros_like(alpha) + 0.0
    c, s = _cos_moments(F.modes, nodes)
    m = np.arange(1, F.modes + 1)
    p, q = np.array(F.cos_coeffs), np.array(F.sin_coeffs)
    ca = np.cos(2 * np.multiply.outer(alpha, m))
    sa = np.sin(2 * np.multiply.outer(alpha, m))
    out = ca @ (p * c + q * s) + sa @ (q * c - p * s)
    return float(out) if out.ndim == 0 else out


def _min_over_alpha(F, grid=ALPHA_GRID):
    alphas = np.pi * np.arange(grid) / grid
    vals = shift_integral(F, alphas)
    i = int(np.argmin(vals))
    h = np.pi / grid
    res = optimize.minimize_scalar(lambda a: shift_integral(F, a), bounds=(alphas[i] - h, alphas[i] + h),
                                   method="bounded", options={"xatol": 1e-12})
    if res.fun < vals[i]:
        return float(res.x) % np.pi, float(res.fun)
    return float(alphas[i]), float(vals[i])


def kappa_derivative(F):
    """d kappa/d eps at eps = 0+: min over alpha of -(j11/(2 pi J0(j11))) I(alpha)."""
    _check_profile(F)
    if F.modes == 0:
        return 0.0
    # J0(j11) < 0, so minimizing the bracket means minimizing I(alpha)
    _, low = _min_over_alpha(F)
    return -J11 / (2 * math.pi * bessel_j(0, J11)) * low


def kappa_derivative_modes(F, grid=ALPHA_GRID):
    """Same quantity through I(alpha) = 2 pi sum (-1)^m J_2m(j11) F_m(alpha)."""
    _check_profile(F)
    if F.modes == 0:
        return 0.0
    m = np.arange(1, F.modes + 1)
    k = 2 * np.pi * (-1.0) ** m * np.array([bessel_j(2 * int(i), J11) for i in m])
    p, q = np.array(F.cos_coeffs), np.array(F.sin_coeffs)

    def I(a):
        a = np.asarray(a, dtype=float)
        return np.cos(2 * np.multiply.outer(a, m)) @ (k * p) + np.sin(2 * np.multiply.outer(a, m)) @ (k * q)

    alphas = np.pi * np.arange(grid) / grid
    vals = I(alphas)
    i = int(np.argmin(vals))
    h = np.pi / grid
    res = optimize.minimize_scalar(lambda a: float(I(a)), bounds=(alphas[i] - h, alphas[i] + h),
                                   method="bounded", options={"xatol": 1e-12})
    low = min(float(res.fun), float(vals[i]))
    return -J11 / (2 * math.pi * bessel_j(0, J11)) * low


def rotate_canonical(F):
    """phi with int_0^pi F(theta+phi) sin 2theta = 0 and the cosine moment >= 0."""
    _check_profile(F)
    if F.modes == 0:
        return 0.0, F
    p1, q1 = F.cos_coeffs[0], F.sin_coeffs[0]
    phi = (0.5 * math.atan2(q1, p1)) % math.pi
    return phi, F.rotated(phi)


def half_two_mode(F):
    """int_0^pi F(theta) e^{2 i theta} dtheta."""
    return 0.5 * F.two_mode()


def inequality_p1(F, tol=1e-9):
    """(lhs, rhs) of min_a int_0^pi F(t+a) cos(j11 cos t) dt <= -A |int_0^pi F e^{2it} dt|."""
    _check_profile(F)
    lhs = 0.5 * _min_over_alpha(F)[1] if F.modes else 0.0
    rhs = -A_CONST * abs(half_two_mode(F))
    if lhs > rhs + tol:
        raise ArithmeticError(f"inequality violated: {lhs!r} > {rhs!r}")
    return lhs, rhs


def perturbation_report(F):
    lhs, rhs = inequality_p1(F)
    return PerturbationReport(lambda2_derivative(F), kappa_derivative(F), lhs, rhs, rotate_canonical(F)[0])


@dataclass(frozen=True)
class FiniteDifference:
    eps: float
    kappa_quotient: float
    sqrt_lambda2_quotient: float
    d_kappa: float
    d_sqrt_lambda2: float


def finite_difference_check(F, eps=1e-3, nodes=512, angular_resolution=90, eigen=True):
    """One-sided quotients (q(eps) - q(0))/eps for kappa and sqrt(lambda_2)."""
    from .nullvariety import kappa
    from .spectral import dirichlet_eigs

    _check_profile(F)
    if eps <= 0:
        raise ValueError("eps must be positive (the derivative is one-sided)")
    th = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    if F.modes and np.min(1 + eps * F(th)) <= 0:
        raise ValueError("1 + eps F must stay positive")
    dk, dl = kappa_derivative(F), lambda2_derivative(F)
    if F.modes == 0 or not np.any(np.array(F.cos_coeffs + F.sin_coeffs)):
        return FiniteDifference(eps, 0.0, 0.0, dk, dl)
    dom = StarShaped(F, eps, 1.0, nodes)
    kq = (float(kappa(dom, angular_resolution).kappa) - J11) / eps
    lq = math.nan
    if eigen:
        lam2 = dirichlet_eigs(dom, 3, collocation=True).dirichlet[1]
        lq = (math.sqrt(lam2) - J11) / eps
    return FiniteDifference(eps, kq, lq, dk, dl)
