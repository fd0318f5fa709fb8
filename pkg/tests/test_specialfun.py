"""Bessel / Struve primitives against mpmath and scipy values."""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from kappaspec.specialfun import (
    BesselZeroTable,
    bessel_deriv_zero,
    bessel_j,
    bessel_j_prime,
    bessel_moments,
    bessel_zero,
    struve_h,
)

# mpmath, 30 digits
J01 = 2.40482555769577276862
J11 = 3.83170597020751231561
J12 = 7.01558666981561875354
J03 = 8.65372791291101221695


@pytest.mark.parametrize(
    "order,k,expected",
    [
        (0, 1, J01),
        (1, 1, J11),
        (1, 2, J12),
        (0, 3, J03),
        (1.5, 1, 4.49340945790906417531),
        (5, 3, 15.700174079711671038),
    ],
)
def test_zeros_match_mpmath(order, k, expected):
    assert bessel_zero(order, k) == pytest.approx(expected, abs=1e-13)


def test_derivative_zero():
    assert bessel_deriv_zero(1, 1) == pytest.approx(1.84118378134065930264, abs=1e-13)
    assert bessel_deriv_zero(0, 1) == bessel_zero(1, 1)


@pytest.mark.parametrize(
    "order,x,expected",
    [
        (5, 12.3, -0.00840503596552480502),
        (0, 7.25, 0.29199692419177899751),
        (2.5, 3.1, 0.42520967029982961317),
    ],
)
def test_bessel_values(order, x, expected):
    assert bessel_j(order, x) == pytest.approx(expected, abs=1e-14)


def test_struve_values():
    assert struve_h(0, 3.0) == pytest.approx(0.57430614881439839798, abs=1e-14)
    assert struve_h(1, 7.5) == pytest.approx(0.38831308000420560970, abs=1e-13)


def test_struve_outside_range():
    with pytest.raises(ValueError):
        struve_h(0, 20.0)
    with pytest.raises(ValueError):
        struve_h(2, 1.0)


def test_moment_i1_matches_quadrature():
    # int_0^6 t J1(t) dt, mpmath quad
    assert bessel_moments(6.0).I1 == pytest.approx(-0.19765031995562838179, abs=1e-13)


def test_zero_index_validation():
    with pytest.raises(ValueError):
        bessel_zero(0, 0)
    with pytest.raises(ValueError):
        bessel_zero(0, 101)


def test_zero_table_is_lazy():
    tab = BesselZeroTable()
    assert (1, 1) not in tab
    assert tab[1, 1] == pytest.approx(J11, abs=1e-14)
    assert (1, 1) in tab


@given(st.integers(0, 20), st.floats(0.0, 40.0))
def test_against_scipy_integer_orders(n, x):
    assert bessel_j(n, x) == pytest.approx(special.jv(n, x), abs=5e-14)


@given(st.floats(0.0, 25.0), st.floats(0.0, 30.0))
def test_against_scipy_real_orders(nu, x):
    # half-integer orders go through the spherical recurrence, the rest stay in series range
    nu = round(nu * 2) / 2
    if nu != int(nu) or x <= 5:
        assert bessel_j(nu, x) == pytest.approx(special.jv(nu, x), abs=5e-13)


@given(st.integers(0, 10), st.floats(0.01, 30.0))
def test_recurrence(n, x):
    # J_{n-1} + J_{n+1} = (2n/x) J_n
    lhs = (bessel_j(n - 1, x) if n else -bessel_j(1, x)) + bessel_j(n + 1, x)
    assert lhs == pytest.approx(2 * n / x * bessel_j(n, x), abs=1e-12)


@given(st.integers(0, 8), st.floats(0.05, 25.0))
def test_derivative_against_scipy(n, x):
    assert bessel_j_prime(n, x) == pytest.approx(special.jvp(n, x), abs=1e-12)


@given(st.floats(0.0, 4 * math.pi))
def test_struve_against_scipy(x):
    # alternating series: terms reach ~1e4 near 4 pi, so ~1e-12 absolute is what double precision allows
    assert struve_h(0, x) == pytest.approx(special.struve(0, x), abs=2e-12)
    assert struve_h(1, x) == pytest.approx(special.struve(1, x), abs=2e-12)


@given(st.integers(0, 6), st.integers(1, 12))
def test_zeros_are_zeros_and_interlace(n, k):
    z = bessel_zero(n, k)
    assert abs(special.jv(n, z)) < 1e-13
    # j_{n,k} < j_{n+1,k} < j_{n,k+1}
    assert z < bessel_zero(n + 1, k) < bessel_zero(n, k + 1)


def test_array_shape_preserved():
    x = np.linspace(0, 10, 12).reshape(3, 4)
    assert bessel_j(1, x).shape == (3, 4)
    assert isinstance(bessel_j(1, 2.0), float)
