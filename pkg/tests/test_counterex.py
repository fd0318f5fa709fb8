import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from kappaspec import counterex as cx
from kappaspec.domains import DomainError, IntervalUnion
from kappaspec.fourier import ft_directional, ft_interval_union
from kappaspec.nullvariety import kappa

J11 = special.jn_zeros(1, 1)[0]


@pytest.fixture(scope="module")
def prof():
    return cx.select_delta(0.2)


def test_selected_profile(prof):
    assert prof.delta == 0.05
    assert prof.a == pytest.approx(0.05 * 1.95 / (2 * 0.2 * 2.2), abs=1e-15)
    assert abs(cx.zeta_moment(prof)) < 1e-15
    assert cx.zeta_mass(prof) == pytest.approx(0.5, abs=1e-15)


def test_build_zeta_validation():
    with pytest.raises(DomainError):
        cx.build_zeta(0.2, 0.3)
    # the plateau stays below 1/2 even as delta approaches delta_tilde
    assert cx.build_zeta(0.9, 0.899).a < 0.5


def _zeta(prof, r):
    if r <= 1 - prof.delta:
        return 1.0
    if r <= 1:
        return 0.5
    if r <= 1 + prof.delta_tilde:
        return prof.a
    return 0.0


@given(st.floats(0.0, 12.0))
def test_radial_limit_against_quad(g):
    p = cx.select_delta(0.2)
    direct = integrate.quad(lambda r: r * _zeta(p, r) * special.j0(g * r), 0, 1.2, points=[0.95, 1.0],
                            epsabs=1e-14)[0]
    assert cx.radial_limit(p, g) == pytest.approx(direct, abs=1e-12)


@given(st.floats(0.05, 10.0))
def test_radial_limit_derivative(g):
    p = cx.select_delta(0.2)
    h = 1e-6
    fd = (cx.radial_limit(p, g + h) - cx.radial_limit(p, g - h)) / (2 * h)
    assert cx.radial_limit_derivative(p, g) == pytest.approx(fd, abs=1e-8)


def test_limit_positive_and_decreasing(prof):
    pos = cx.zeta_positivity(prof)
    assert pos.passed and pos.decreasing
    assert pos.endpoint == pytest.approx(cx.radial_limit(prof, J11))
    assert pos.minimum == pytest.approx(pos.endpoint)


@pytest.mark.parametrize("n,gap", [(8, 1e-2), (16, 1e-7), (32, 1e-12)])
def test_spiky_transform_tends_to_radial_limit(prof, n, gap):
    dom = cx.spiky_domain(n, prof)
    g = np.linspace(0.1, J11, 50)
    for phi in (0.0, 0.1, 1.0):
        assert np.max(np.abs(ft_directional(dom, phi, g) - 2 * np.pi * cx.radial_limit(prof, g))) < gap


def test_verify_spiky_small_grid(prof):
    rep = cx.verify_spiky(64, prof, directions=16, points=64)
    assert rep.passed and rep.violation() is None
    assert rep.inner_radius == pytest.approx(0.95) and rep.outer_radius == pytest.approx(1.2)


def test_spiky_n_validation(prof):
    with pytest.raises(DomainError):
        cx.spiky_domain(6, prof)
    with pytest.raises(DomainError):
        cx.spiky_domain(33, prof)


@pytest.fixture(scope="module", params=[5, 10, 20])
def instance(request):
    return cx.nazarov_search(request.param, seed=0)


def test_instance_certificate(instance):
    assert instance.certified
    assert instance.count / instance.n >= 0.1
    b = cx.interval_union_kappa(instance)
    assert b.product >= 2 * instance.C * instance.count / instance.n - 1e-12
    assert b.volume == 2 * instance.count


@settings(max_examples=60)
@given(st.floats(-1.0, 1.0))
def test_instance_positive_off_grid(x):
    inst = cx.nazarov_search(20, seed=0)
    assert inst.f(x * inst.interval)[0] > 0


def test_kappa_of_instance_exceeds_certified_bound(instance):
    # independent route: scan the 1D transform for its first zero
    k = float(kappa(cx.instance_domain(instance)).kappa)
    assert k >= instance.interval


def test_json_round_trip(instance):
    back = cx.NazarovInstance.from_dict(json.loads(instance.to_json()))
    assert back.n == instance.n and np.array_equal(back.frequencies, instance.frequencies)
    assert cx.certify(back.frequencies, back.C, back.n)[0] == pytest.approx(back.grid_min, abs=1e-12)


def test_expected_sum():
    n = 16
    k = np.arange(1, n + 1)
    assert cx.expected_sum(n, 0.0)[0] == pytest.approx(1 + 2 * np.sum((1 - k / n) ** 2))


def test_search_errors():
    with pytest.raises(ValueError):
        cx.nazarov_search(0)
    bad = cx.NazarovInstance(8, np.array([1, 2]), 5.0, 0, 11, -1.0, 0.1)
    with pytest.raises(ArithmeticError):
        cx.interval_union_kappa(bad)


def test_product_transform():
    u = IntervalUnion((1.0, 3.0))
    xi = np.array([0.7, 1.3])
    expected = ft_interval_union(u.centers, 0.5, 0.7) * ft_interval_union(u.centers, 0.5, 1.3)
    assert cx.product_transform(u, xi) == pytest.approx(expected)
