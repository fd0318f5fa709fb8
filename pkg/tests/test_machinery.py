import math
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate, special

from kappaspec import machinery as m
from kappaspec.domains import ConvexPolygon, DomainError, RadialProfile, Rectangle, StarShaped, Ball

J11, J03 = m.J11, m.J03


def test_tables_within_published_digits():
    t0 = time.perf_counter()
    errs = m.constants().table_errors()
    assert time.perf_counter() - t0 < 1.0
    assert len(errs) == 14
    assert max(errs.values()) <= 1e-8


def test_final_estimate():
    k = m.constants()
    assert m.key_integral(k.y_min) == pytest.approx(-0.0072444612, abs=1e-8)
    assert k.L < 0 < k.M
    assert k.final_estimate < 0


def test_constants_against_scipy():
    # L and M rebuilt from scipy Bessel/Struve values
    tau2 = (2 * special.jn_zeros(0, 1)[0]) ** 2
    s, j11, tp = tau2 / 8, special.jn_zeros(1, 1)[0], 2 * math.pi

    def T(x):
        return 0.5 * math.pi * x * (special.j1(x) * special.struve(0, x) - special.j0(x) * special.struve(1, x))

    delta = tp - j11
    common = T(tp) - T(j11)
    L = special.j0(s) - (common - j11 * special.j0(j11) + tp * special.j0(tp)) / delta
    M = tau2 / 64 * special.jv(2, s) + common / delta - j11 * (special.j0(j11) - special.j0(tp)) / delta + special.j0(tp)
    assert m.constants().L == pytest.approx(L, abs=1e-13)
    assert m.constants().M == pytest.approx(M, abs=1e-13)


@pytest.mark.parametrize("y11", np.linspace(0.5384485717, 1.0, 5))
def test_key_integral_three_routes(y11):
    closed = m.key_integral(y11)
    assert m.approx_integral_quadrature(y11) == pytest.approx(closed, abs=1e-9)
    assert m.key_integral_pieces(y11) == pytest.approx(closed, abs=1e-12)
    pts = [m.S_MINUS, J11, m.TWO_PI]
    oracle = integrate.quad(lambda r: m.alpha_approx(r, y11) * special.j1(r), 0, J03, points=pts,
                            epsabs=1e-14, limit=200)[0]
    assert oracle == pytest.approx(closed, abs=1e-11)


def test_key_integral_mismatch_raises():
    with pytest.raises(ArithmeticError):
        m.key_integral(0.7, tol=1e-30)
    with pytest.raises(DomainError):
        m.key_integral(1.5)


def test_alpha_approx_shape():
    y = 0.6
    assert m.alpha_approx(1.0, y) == pytest.approx(1 / m.TAU2)
    assert m.alpha_approx(3.0, y) == y
    # the linear piece runs from y at j11 to 1 at 2 pi
    assert m.alpha_approx(J11, y) == pytest.approx(y)
    assert m.alpha_approx(m.TWO_PI - 1e-12, y) == pytest.approx(1.0)
    assert m.alpha_approx(8.0, y) == 1.0
    with pytest.raises(DomainError):
        m.alpha_approx(9.0, y)


def test_y_min_is_chord_bound_at_left_end():
    assert m.y_min_bound(m.S_MINUS) == pytest.approx(m.constants().y_min, abs=1e-14)
    with pytest.raises(DomainError):
        m.y_min_bound(1.0)


@given(st.floats(2.8915929821, 3.8317059702))
def test_chord_bound_decreasing_a(r):
    # a(r_minus) decreases, so the bound on alpha(j11) increases with r_minus
    assert m.a_coef_derivative(r) < 0
    assert m.y_min_bound(r) >= m.constants().y_min - 1e-14


@given(st.floats(2.9, 3.8))
def test_a_derivative_matches_finite_difference(r):
    h = 1e-6
    fd = (m.a_coef(r + h) - m.a_coef(r - h)) / (2 * h)
    assert m.a_coef_derivative(r) == pytest.approx(fd, abs=1e-8)


def test_square_law_meets_line_at_j11():
    assert m.r2_dominates_line() >= -1e-14


@given(st.integers(0, 10**6))
def test_class_a_comparison(seed):
    f = m.ClassAFunction.random(np.random.default_rng(seed))
    y11 = float(f(J11))
    assert f.integral() <= m.key_integral(y11, check=False) + 1e-12
    if f.r_minus <= J11:
        assert y11 >= m.y_min_bound(f.r_minus) - 1e-12
    assert m.key_integral(y11, check=False) <= m.constants().final_estimate + 1e-12


def test_class_a_validation():
    with pytest.raises(DomainError):
        m.ClassAFunction(2.0, 5.0)
    with pytest.raises(DomainError):
        # convex kink
        m.ClassAFunction(3.0, 6.0, ((4.0, 0.39), (5.0, 0.5)))


def test_cosine_moments_signs():
    for k in range(3):
        res = m.cosine_moment_checks(lambda t: np.sqrt(40.0 - t), k, 40.0)
        assert res.precondition_ok
        assert all(res.passed)
    with pytest.raises(DomainError):
        m.cosine_moment_checks(lambda t: 1 - t, 0, 5.0)


def test_cuboid_rows():
    rows = m.cuboid_inequality(30)
    assert len(rows) == 30
    assert all(lhs >= rhs for _, lhs, rhs in rows)
    # d = 2: j_{1,1} against 2 sqrt(pi)
    assert rows[1][1] == pytest.approx(J11) and rows[1][2] == pytest.approx(2 * math.sqrt(math.pi))


@pytest.mark.parametrize(
    "spec,branch",
    [
        (Ball(2, 1.0), "class-A"),
        (Rectangle((1.0, 1.0)), "class-A"),
        (ConvexPolygon.regular(6), "class-A"),
        (StarShaped(RadialProfile((1.0,), ()), 0.15), "class-A"),
        (Rectangle((5.0, 0.5)), "diameter"),
    ],
)
def test_pipeline(spec, branch):
    rep = m.proof_pipeline(spec, angular_resolution=90)
    assert rep.branch == branch
    assert rep.passed, [c.as_dict() for c in rep.checks if not c.passed]
    assert rep.kappa <= 1.0
    assert rep.scale**2 * float(spec.volume) == pytest.approx(math.pi * m.TAU2)


def test_pipeline_disk_kappa():
    assert m.proof_pipeline(Ball(2, 1.0), 30).kappa == pytest.approx(J11 / m.TAU, abs=1e-9)
