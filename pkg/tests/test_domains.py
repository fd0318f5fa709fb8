import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

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
    check_convex_balanced,
    chord_width,
    descriptors,
    max_convex_epsilon,
    ring_functions,
    scaled,
    spec_from_dict,
    spec_to_dict,
    unit_vector,
)
from kappaspec.harness.corpus import random_polygon, random_star

strip_sets = st.lists(
    st.tuples(st.floats(0, math.pi, exclude_max=True), st.floats(0.3, 2.0)), min_size=2, max_size=5
)


def _polygon(strips):
    angles = np.array([a for a, _ in strips])
    # strips closer than ~1 degree make near-parallel edges; skip those draws
    d = np.abs(np.subtract.outer(angles, angles)) % math.pi
    d = np.minimum(d, math.pi - d) + np.eye(len(angles)) * 10
    if d.min() < 0.02:
        return None
    return ConvexPolygon.from_strips(angles, [w for _, w in strips])


def test_square_descriptors():
    d = descriptors(Rectangle((0.5, 0.5)))
    assert d.volume == pytest.approx(1.0)
    assert d.diameter == pytest.approx(math.sqrt(2))
    assert d.inradius == pytest.approx(0.5)
    assert d.support(math.pi / 4) == pytest.approx(math.sqrt(0.5))


def test_ball_volumes():
    assert Ball(3, 2.0).volume == pytest.approx(4 / 3 * math.pi * 8)
    assert Ball(1, 1.0).volume == pytest.approx(2.0)


def test_square_ring_functions():
    r = 0.6
    ring = ring_functions(Rectangle((0.5, 0.5)), r)
    measure = 2 * math.pi - 8 * math.acos(0.5 / r)
    assert ring.eta == pytest.approx(r * measure, abs=1e-13)
    assert ring.zeta == pytest.approx(measure / (2 * math.pi), abs=1e-13)
    # area inside radius r: disk minus four circular segments
    seg = r * r * math.acos(0.5 / r) - 0.5 * math.sqrt(r * r - 0.25)
    assert ring.alpha == pytest.approx(math.pi * r * r - 4 * seg, abs=1e-13)


def test_star_area_matches_quadrature():
    F = RadialProfile((0.1,), (0.0, 0.05))
    dom = StarShaped(F, 1.0)
    quad = integrate.quad(lambda t: 0.5 * (1 + F(t)) ** 2, 0, 2 * math.pi, epsabs=1e-14)[0]
    assert dom.volume == pytest.approx(quad, abs=1e-13)
    assert dom.volume == pytest.approx(3.161227607674729, abs=1e-13)


def test_star_convexity_threshold():
    F = RadialProfile((1.0,), ())
    # R = 1 + eps cos 2 theta is convex iff eps < 1/5
    assert max_convex_epsilon(F) == pytest.approx(0.2, abs=1e-8)
    assert check_convex_balanced(StarShaped(F, 0.19)).convex is True
    assert check_convex_balanced(StarShaped(F, 0.21)).convex is False
    assert check_convex_balanced(StarShaped(F, 0.2)).indeterminate


def test_polygon_validation():
    with pytest.raises(DomainError):
        ConvexPolygon(np.array([[1, 0], [0, 1], [-1, 0], [0, -1]])[::-1])
    with pytest.raises(DomainError):
        ConvexPolygon(np.array([[1, 0], [0, 1], [-1, 0], [0.1, -1]]))
    with pytest.raises(DomainError):
        ConvexPolygon.regular(5)


def test_other_validation():
    with pytest.raises(DomainError):
        Rectangle((1.0, -1.0))
    with pytest.raises(DomainError):
        IntervalUnion((1.0, 1.5))
    with pytest.raises(DomainError):
        Spiky(7, ZetaProfile(0.2, 0.05, 0.11))
    with pytest.raises(DomainError):
        StarShaped(RadialProfile((2.0,), ()), 1.0)
    with pytest.raises(DomainError):
        unit_vector((1.0, 1.0))


def test_chord_of_disk_and_square():
    assert chord_width(Ball(2, 1.0), 0.3, 0.5) == pytest.approx(math.sqrt(3))
    assert chord_width(Rectangle((0.5, 0.5)), 0.0, 0.2) == pytest.approx(1.0)
    assert chord_width(Rectangle((0.5, 0.5)), math.pi / 4, 0.0) == pytest.approx(math.sqrt(2))
    with pytest.raises(DomainError):
        chord_width(Spiky(8, ZetaProfile(0.2, 0.05, 0.11)), 0.0, 0.1)


def test_interval_union_and_revolution():
    u = IntervalUnion((1.0, 3.0, 4.0))
    assert u.volume == 6.0 and u.diameter == 9.0
    b = RevolutionBody(2.0)
    assert b.volume == pytest.approx(2 * math.pi / 12)
    assert descriptors(b).diameter == 2.0


@pytest.mark.parametrize(
    "spec",
    [
        Ball(2, 1.5),
        Ball(3, 1.0),
        Rectangle((1.0, 0.5)),
        ConvexPolygon.regular(6),
        StarShaped(RadialProfile((0.1, 0.02), (0.0, 0.03)), 1.0, 2.0),
        Spiky(8, ZetaProfile(0.2, 0.05, 0.110795)),
        IntervalUnion((1.0, 2.5)),
        RevolutionBody(0.5),
    ],
)
def test_json_round_trip(spec):
    data = json.loads(json.dumps(spec_to_dict(spec)))
    back = spec_from_dict(data)
    assert spec_to_dict(back) == spec_to_dict(spec)


@pytest.mark.parametrize(
    "data",
    [{}, {"type": "blob"}, {"type": "rectangle"}, {"type": "ball", "radius": "x"}, {"type": "polygon", "vertices": 3}],
)
def test_bad_descriptions(data):
    with pytest.raises(DomainError):
        spec_from_dict(data)


@given(strip_sets)
def test_polygon_from_strips_is_balanced(strips):
    poly = _polygon(strips)
    if poly is None:
        return
    cb = check_convex_balanced(poly)
    assert cb.convex and cb.balanced
    # every strip constraint holds at every vertex
    for a, w in strips:
        assert np.all(np.abs(poly.vertices @ [math.cos(a), math.sin(a)]) <= w + 1e-9)


@given(strip_sets, st.floats(0, 2 * math.pi))
def test_support_is_max_over_vertices(strips, phi):
    poly = _polygon(strips)
    if poly is None:
        return
    e = unit_vector(phi)
    assert descriptors(poly).support(phi) == pytest.approx(np.max(poly.vertices @ e), abs=1e-12)


@given(strip_sets, st.floats(0, math.pi))
def test_chord_integrates_to_area(strips, phi):
    poly = _polygon(strips)
    if poly is None:
        return
    e = unit_vector(phi)
    w = poly.support(e)
    kinks = sorted(set(np.clip(poly.vertices @ e, -w, w)))
    area = integrate.quad(lambda t: float(chord_width(poly, phi, t)), -w, w, points=kinks, limit=200)[0]
    assert area == pytest.approx(poly.area, rel=1e-9)


@given(strip_sets)
def test_ring_functions_consistent(strips):
    poly = _polygon(strips)
    if poly is None:
        return
    r = np.linspace(0.0, poly.r_max * 1.01, 400)
    alpha = np.array([ring_functions(poly, x).alpha for x in r])
    assert np.all(np.diff(alpha) >= -1e-12)
    assert alpha[-1] == pytest.approx(1.0)
    # d(area within r)/dr = eta, away from the kinks at edge distances and vertices
    h = 1e-6
    kinks = np.array(poly.critical_radii())
    for x in r[1:-1:7]:
        if np.min(np.abs(kinks - x)) < 1e-3:
            continue
        da = (poly.area_within(x + h) - poly.area_within(x - h)) / (2 * h)
        assert da == pytest.approx(ring_functions(poly, x).eta, abs=1e-6)


@given(st.integers(0, 10**6), st.floats(0.2, 5.0))
def test_scaling(seed, s):
    rng = np.random.default_rng(seed)
    poly = random_polygon(rng)
    big = scaled(poly, s)
    assert big.area == pytest.approx(s * s * poly.area)
    assert descriptors(big).diameter == pytest.approx(s * descriptors(poly).diameter)
    star = random_star(rng)
    assert scaled(star, s).volume == pytest.approx(s * s * star.volume)


@given(st.integers(0, 10**6))
def test_corpus_star_is_convex(seed):
    star = random_star(np.random.default_rng(seed))
    assert check_convex_balanced(star).convex is True


def test_spiky_geometry():
    dom = Spiky(16, ZetaProfile(0.2, 0.05, 0.110795))
    z = dom.zeta
    # volume is pi times twice the zeta mass
    mass = 0.5 * (1 - z.delta) ** 2 + 0.25 * (1 - (1 - z.delta) ** 2) + 0.5 * z.a * ((1 + z.delta_tilde) ** 2 - 1)
    assert dom.volume == pytest.approx(2 * math.pi * mass)
    assert dom.r_min == 0.95 and dom.r_max == pytest.approx(1.2)
    assert dom.angular_measure(0.97) == pytest.approx(math.pi)
