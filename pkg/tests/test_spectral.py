import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kappaspec.domains import (
    Ball,
    ConvexPolygon,
    DomainError,
    RadialProfile,
    Rectangle,
    Spiky,
    StarShaped,
    ZetaProfile,
    scaled,
)
from kappaspec.harness.corpus import random_star
from kappaspec.spectral import dirichlet_eigs, inequality_checks, neumann_eigs
from kappaspec.nullvariety import kappa

# mpmath: squares of Bessel zeros, unit disk
DISK_DIRICHLET = [5.78318596294678, 14.6819706421239, 14.6819706421239, 26.3746164271634,
                  26.3746164271634, 30.4712623436621]
DISK_NEUMANN = [0.0, 3.38995771667189, 3.38995771667189, 9.32836321374636, 9.32836321374636,
                14.6819706421239]


def test_disk_closed_forms():
    assert dirichlet_eigs(Ball(2, 1.0), 6).dirichlet == pytest.approx(DISK_DIRICHLET, abs=1e-10)
    assert neumann_eigs(Ball(2, 1.0), 6).neumann == pytest.approx(DISK_NEUMANN, abs=1e-10)
    assert dirichlet_eigs(Ball(2, 2.0), 1).dirichlet[0] == pytest.approx(DISK_DIRICHLET[0] / 4)


def test_rectangle_closed_forms():
    lam = dirichlet_eigs(Rectangle((1.0, 0.5)), 3).dirichlet
    assert lam == pytest.approx(np.pi**2 * np.array([1.25, 2.0, 3.25]), abs=1e-10)
    mu = neumann_eigs(Rectangle((1.0, 0.5)), 4).neumann
    assert mu == pytest.approx(np.pi**2 * np.array([0.0, 0.25, 1.0, 1.0]), abs=1e-10)


def test_disk_collocation():
    res = dirichlet_eigs(Ball(2, 1.0), 4, collocation=True)
    assert res.method == "collocation"
    assert res.dirichlet[1] == pytest.approx(14.68197, rel=1e-3)
    assert res.dirichlet == pytest.approx(DISK_DIRICHLET[:4], rel=1e-6)
    assert [1, 2] in res.clusters
    mu = neumann_eigs(Ball(2, 1.0), 4, collocation=True)
    assert mu.neumann == pytest.approx(DISK_NEUMANN[:4], rel=1e-6, abs=1e-12)


def test_rectangle_collocation():
    res = dirichlet_eigs(Rectangle((1.0, 0.5)), 2, collocation=True)
    assert res.dirichlet[1] == pytest.approx(2 * math.pi**2, rel=1e-3)
    assert np.all(res.accuracy < 1e-4)
    # the reported accuracy is an honest bound on the actual error
    exact = np.pi**2 * np.array([1.25, 2.0])
    assert np.all(np.abs(res.dirichlet - exact) / exact <= res.accuracy)


def test_star_refinement_within_accuracy():
    dom = StarShaped(RadialProfile((1.0,), ()), 0.1)
    a = dirichlet_eigs(dom, 3, collocation=True)
    b = dirichlet_eigs(dom, 3, collocation=True, points=512, order=30)
    assert np.all(np.abs(a.dirichlet - b.dirichlet) / b.dirichlet <= np.maximum(a.accuracy, 1e-9))


def test_unsupported_domains():
    with pytest.raises(DomainError):
        dirichlet_eigs(Spiky(8, ZetaProfile(0.2, 0.05, 0.11)), 2)
    with pytest.raises(DomainError):
        dirichlet_eigs(StarShaped(RadialProfile((1.0,), ()), 0.3), 2, collocation=True)
    with pytest.raises(ValueError):
        dirichlet_eigs(Ball(2, 1.0), 0)


@settings(max_examples=5)
@given(st.integers(0, 10**6))
def test_faber_krahn_and_ordering(seed):
    star = random_star(np.random.default_rng(seed))
    lam = dirichlet_eigs(star, 2).dirichlet
    mu = neumann_eigs(star, 3).neumann
    radius = math.sqrt(star.volume / math.pi)
    assert lam[0] >= DISK_DIRICHLET[0] / radius**2 * (1 - 1e-6)
    assert lam[0] < lam[1]
    assert mu[0] == 0.0 and mu[1] < lam[0]


@settings(max_examples=3)
@given(st.floats(0.5, 2.0))
def test_eigen_scaling(s):
    hexagon = ConvexPolygon.regular(6)
    base = dirichlet_eigs(hexagon, 1, collocation=True, order=12, points=96, corner_terms=5)
    big = dirichlet_eigs(scaled(hexagon, s), 1, collocation=True, order=12, points=96, corner_terms=5)
    assert big.dirichlet[0] * s * s == pytest.approx(base.dirichlet[0], rel=1e-6)


@pytest.mark.parametrize("spec", [Ball(2, 1.0), Rectangle((1.0, 0.5)), Rectangle((0.5, 0.5))])
def test_inequality_checks(spec):
    rep = inequality_checks(spec)
    assert rep.passed, [c.as_dict() for c in rep.failures]
    names = [c.name for c in rep.checks]
    assert "kappa >= 2 sqrt(mu_2)" in names
    assert sum(n.startswith("mu_") and "< lambda" in n for n in names) == 5


def test_neumann_split_pair_not_aliased():
    # r = 1 + 0.03 cos 2theta splits the disk pair (j'11)^2 by about 6 %
    dom = StarShaped(RadialProfile((1.0,), ()), 0.03)
    mu = neumann_eigs(dom, 4).neumann
    disk = 1.8411837813406593 ** 2
    assert mu[1] < disk < mu[2]
    assert mu[2] - mu[1] > 0.05


def test_neumann_below_test_function_bound():
    # sin(xi0.x / 2) at a real zero xi0 has Rayleigh quotient kappa^2 / 4 and is
    # orthogonal to constants, so mu_2 <= kappa^2 / 4 whatever the domain
    prof = RadialProfile((0.6393738053399445, 0.06461617908772588, -0.251495414408536, 0.07095328232790266),
                         (-0.6545186611260314, 0.32365413501662754, 0.12070773364854359, 0.21990431907155383))
    dom = StarShaped(prof, 0.03237671572088136)
    k = float(kappa(dom, 360).kappa)
    assert neumann_eigs(dom, 2).neumann[1] <= k * k / 4
