import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kappaspec.domains import (
    Ball,
    ConvexPolygon,
    DomainError,
    IntervalUnion,
    RadialProfile,
    Rectangle,
    RevolutionBody,
    Spiky,
    StarShaped,
    ZetaProfile,
    descriptors,
    scaled,
)
from kappaspec.harness.corpus import random_polygon, random_star
from kappaspec.nullvariety import (
    Exceeds,
    directional_roots,
    first_root,
    kappa,
    null_curve,
    triangle_kappa,
    triangle_kappa_search,
)

J11 = 3.83170597020751231561


def test_disk_generic_search():
    assert float(kappa(Ball(2, 1.0)).kappa) == pytest.approx(J11, abs=1e-7)
    # the same disk as a star domain with a zero perturbation
    disk = StarShaped(RadialProfile((1.0,), ()), 0.0)
    assert float(kappa(disk, 90).kappa) == pytest.approx(J11, abs=1e-9)


def test_rectangle_two_by_one():
    res = kappa(Rectangle((1.0, 0.5)))
    assert float(res.kappa) == pytest.approx(math.pi, abs=1e-8)
    assert min(res.argmin_direction, math.pi - res.argmin_direction) < 1e-6


def test_regular_hexagon():
    # oracle: brentq on the independent edge-sum transform over 61 directions, then bounded minimisation
    assert float(kappa(ConvexPolygon.regular(6), 180).kappa) == pytest.approx(4 * math.pi / 3, abs=1e-9)


def test_square_diagonal_double_root():
    # along the diagonal the chord function is a tent and the first zero is a double root at 2 pi / w
    sq = Rectangle((0.5, 0.5))
    w = descriptors(sq).support(math.pi / 4)
    r = first_root(sq.as_polygon(), math.pi / 4)
    assert r == pytest.approx(2 * math.pi / w, rel=1e-7)


def test_rectangle_axis_roots():
    roots = directional_roots(Rectangle((1.0, 0.5)), 0.0, 3)
    assert roots == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-10)


def test_closed_forms_in_higher_dimension():
    assert float(kappa(Ball(3, 2.0)).kappa) == pytest.approx(4.49340945790906417531 / 2)
    assert float(kappa(Rectangle((1.0, 2.0, 0.5))).kappa) == pytest.approx(math.pi / 2)


def test_interval_union():
    u = IntervalUnion((1.0,))
    # 4 sin(x/2) cos(x) / x: first zero of cos at pi/2
    assert float(kappa(u).kappa) == pytest.approx(math.pi / 2, abs=1e-12)


def test_spiky_exceeds_j11():
    dom = Spiky(256, ZetaProfile(0.2, 0.05, 0.05 * 1.95 / (2 * 0.2 * 2.2)))
    res = kappa(dom, 12, bound=J11, scan_points=64)
    assert isinstance(res.kappa, Exceeds)
    assert str(res.kappa).startswith("exceeds(3.8317")


def test_unsupported():
    with pytest.raises(DomainError):
        kappa(RevolutionBody(1.0))
    with pytest.raises(DomainError):
        null_curve(Spiky(8, ZetaProfile(0.2, 0.05, 0.11)))


@pytest.mark.parametrize("a", [1.0, 2.0, 4.0])
def test_triangle_formula(a):
    assert triangle_kappa_search(a) == pytest.approx(triangle_kappa(a), abs=1e-6)


def test_null_curve_has_half_turn_samples():
    curve = null_curve(ConvexPolygon.regular(6), 60)
    assert curve.shape == (60, 2)
    # six-fold symmetry: period pi/3 in the direction
    assert curve[:20, 1] == pytest.approx(curve[20:40, 1], abs=1e-10)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_polygon_bounds(seed):
    poly = random_polygon(np.random.default_rng(seed))
    d = descriptors(poly)
    k = float(kappa(poly, 90).kappa)
    # no zero below pi / w(e) in any direction, and at most 4 pi / D
    assert 2 * math.pi / d.diameter - 1e-9 <= k <= 4 * math.pi / d.diameter + 1e-9


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.floats(0, math.pi))
def test_root_bracket(seed, phi):
    rng = np.random.default_rng(seed)
    dom = random_polygon(rng) if seed % 2 else random_star(rng)
    w = descriptors(dom).support(phi)
    roots = directional_roots(dom, phi, 4)
    assert len(roots) == 4
    assert roots[0] >= math.pi / w - 1e-9
    for j, r in enumerate(roots, start=1):
        assert r <= math.pi * (j + 1) / w + 1e-8


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.floats(0.3, 3.0))
def test_homothety(seed, s):
    poly = random_polygon(np.random.default_rng(seed))
    k = float(kappa(poly, 60).kappa)
    assert float(kappa(scaled(poly, s), 60).kappa) == pytest.approx(k / s, rel=1e-9)
