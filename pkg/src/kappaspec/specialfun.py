"""Bessel functions of integer and half-integer order, their zeros, and the
Struve functions H0 and H1.

Everything here is evaluated on the non-negative real axis only. Orders are
restricted to ``{0, 1/2, 1, 3/2, ...}`` up to :data:`MAX_ORDER`.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

MAX_ORDER = 40.0
SERIES_CUTOFF = 5.0
STRUVE_MAX_X = 4.0 * math.pi


def _check_order(order):
    order = float(order)
    twice = 2.0 * order
    if order < 0 or order > MAX_ORDER or twice != round(twice):
        raise ValueError(
            f"unsupported Bessel order {order!r}: expected an integer or "
            f"half-integer in [0, {MAX_ORDER:g}]"
        )
    return order


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)):
        raise ValueError("argument must be finite")
    if np.any(arr < 0):
        raise ValueError("argument must be non-negative")
    return arr


def _series(order, x):
    # ascending series; terms decay super-exponentially once k > x/2
    half = 0.5 * x
    q = -half * half
    term = np.power(half, order) / math.gamma(order + 1.0)
    total = term.copy()
    for k in range(1, 80):
        term = term * q / (k * (k + order))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def _miller_integer(n, x):
    """Backward recurrence for J_n, normalised by J0 + 2*sum J_2k = 1."""
    xmax = float(np.max(x))
    start = int(max(n, xmax) + 30 + 6 * math.sqrt(max(n, xmax)))
    start += start % 2
    j_next = np.zeros_like(x)
    j_cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    wanted = np.zeros_like(x)
    for k in range(start, 0, -1):
        # j_cur holds J_k, produce J_{k-1}
        j_prev = (2.0 * k / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if k == n:
            wanted = j_next.copy()
        if k % 2 == 0:
            norm = norm + 2.0 * j_next
        big = np.abs(j_cur) > 1e200
        if np.any(big):
            scale = np.where(big, 1e-200, 1.0)
            j_cur, j_next = j_cur * scale, j_next * scale
            norm, wanted = norm * scale, wanted * scale
    # loop ended with j_cur = J_0
    if n == 0:
        wanted = j_cur
    norm = norm + j_cur
    return wanted / norm


def _miller_spherical(n, x):
    """Backward recurrence for the spherical Bessel function j_n."""
    xmax = float(np.max(x))
    start = int(max(n, xmax) + 30 + 6 * math.sqrt(max(n, xmax)))
    j_next = np.zeros_like(x)
    j_cur = np.full_like(x, 1e-30)
    wanted = np.zeros_like(x)
    j1 = np.zeros_like(x)
    for k in range(start, 0, -1):
        j_prev = ((2.0 * k + 1.0) / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if k == n:
            wanted = j_next.copy()
        if k == 1:
            j1 = j_next.copy()
        big = np.abs(j_cur) > 1e200
        if np.any(big):
            scale = np.where(big, 1e-200, 1.0)
            j_cur, j_next = j_cur * scale, j_next * scale
            wanted, j1 = wanted * scale, j1 * scale
    if n == 0:
        wanted = j_cur
    true0 = np.sin(x) / x
    true1 = np.sin(x) / x**2 - np.cos(x) / x
    use0 = np.abs(true0) >= np.abs(true1)
    factor = np.where(use0, true0 / j_cur, true1 / j1)
    return wanted * factor


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x) for x >= 0.

    Uses the ascending series for ``x <= 5`` and Miller's backward recurrence
    beyond. Accepts scalars or arrays; returns the same shape.
    """
    order = _check_order(order)
    arr = _as_array(x)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)

    low = flat <= SERIES_CUTOFF
    if np.any(low):
        out[low] = _series(order, flat[low])
    high = ~low
    if np.any(high):
        xs = flat[high]
        if order == int(order):
            out[high] = _miller_integer(int(order), xs)
        else:
            n = int(order - 0.5)
            out[high] = np.sqrt(2.0 * xs / math.pi) * _miller_spherical(n, xs)
    out = out.reshape(np.atleast_1d(arr).shape)
    return float(out[0]) if scalar else out


def bessel_j_prime(order, x):
    """Derivative J'_order(x) = (order/x) J_order(x) - J_{order+1}(x)."""
    order = _check_order(order)
    arr = _as_array(x)
    if order == 0:
        return -bessel_j(1, arr) if arr.ndim else -bessel_j(1, float(arr))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(arr > 0, bessel_j(order, arr) / np.where(arr > 0, arr, 1.0), 0.0)
    if order == 1:
        # J1(x)/x -> 1/2 as x -> 0
        ratio = np.where(arr > 0, ratio, 0.5)
    val = order * ratio - bessel_j(order + 1, arr)
    return float(val) if np.ndim(val) == 0 else val


def _mcmahon(order, k):
    mu = 4.0 * order * order
    beta = (k + 0.5 * order - 0.25) * math.pi
    eb = 8.0 * beta
    return beta - (mu - 1) / eb - 4 * (mu - 1) * (7 * mu - 31) / (3 * eb**3)


def _kth_bracket(func, start, k, guess):
    """Scan for the k-th sign change of ``func`` to the right of ``start``."""
    step = 0.2
    found = 0
    lo = start
    end = max(guess + 2 * math.pi, start + 8.0)
    while True:
        grid = np.arange(lo, end + step, step)
        vals = func(grid)
        sign_change = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        exact = np.nonzero(vals[:-1] == 0)[0]
        if exact.size:
            raise ArithmeticError("grid point landed on a zero; shift the scan")
        if found + sign_change.size >= k:
            i = sign_change[k - found - 1]
            return grid[i], grid[i + 1]
        found += sign_change.size
        lo = grid[-1]
        end = lo + 10 * math.pi


def _polish(func, deriv, a, b, guess):
    """Safeguarded Newton inside a sign bracket [a, b]."""
    fa = func(a)
    x = guess if a < guess < b else 0.5 * (a + b)
    for _ in range(100):
        fx = func(x)
        if fx == 0:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b = x
        dfx = deriv(x)
        step = fx / dfx if dfx != 0 else np.inf
        cand = x - step
        if not (a < cand < b):
            cand = 0.5 * (a + b)
        if abs(cand - x) <= 4e-16 * abs(x) or b - a <= 4e-16 * abs(x):
            return cand
        x = cand
    return x


@lru_cache(maxsize=None)
def bessel_zero(order, k):
    """k-th positive zero j_{order,k} of J_order, for 1 <= k <= 100."""
    order = _check_order(order)
    if not 1 <= int(k) <= 100 or int(k) != k:
        raise ValueError("zero index must be an integer in [1, 100]")
    k = int(k)
    guess = _mcmahon(order, k)
    # J_order > 0 on (0, order], so the scan can start just above it
    start = max(order, 1e-3) + 1e-7
    a, b = _kth_bracket(lambda t: bessel_j(order, t), start, k, guess)
    f = lambda t: bessel_j(order, t)
    df = lambda t: bessel_j_prime(order, t)
    return float(_polish(f, df, a, b, guess))


@lru_cache(maxsize=None)
def bessel_deriv_zero(order, k):
    """k-th positive zero of J'_order (integer order), excluding x = 0."""
    if int(order) != order or order < 0:
        raise ValueError("derivative zeros are only provided for integer orders")
    order = int(order)
    if order == 0:
        return bessel_zero(1, k)
    f = lambda t: bessel_j_prime(order, t)

    def df(t):
        # Bessel's equation: J'' = -J'/t - (1 - order^2/t^2) J
        return -bessel_j_prime(order, t) / t - (1 - order**2 / t**2) * bessel_j(order, t)

    guess = _mcmahon(order, k) - 0.5 * math.pi
    a, b = _kth_bracket(f, max(order, 1e-3) * (1 - 1e-9) + 1e-6, k, guess)
    return float(_polish(f, df, a, b, guess))


class BesselZeroTable:
    """Lazy map ``(order, k) -> j_{order,k}``."""

    def __init__(self):
        self._entries = {}

    def __getitem__(self, key):
        order, k = key
        if key not in self._entries:
            self._entries[key] = bessel_zero(order, k)
        return self._entries[key]

    def __contains__(self, key):
        return key in self._entries

    def items(self):
        return self._entries.items()


def struve_h(n, x):
    """Struve function H_n(x), n in {0, 1}, by power series on [0, 4*pi].

    Absolute error is below 1e-12 on the whole range (cancellation grows
    with x; up to 2 pi it stays below 5e-15).
    """
    if n not in (0, 1):
        raise ValueError("only H0 and H1 are provided")
    arr = _as_array(x)
    if np.any(arr > STRUVE_MAX_X + 1e-12):
        raise ValueError(f"Struve series is only used on [0, {STRUVE_MAX_X:.6g}]")
    half = 0.5 * arr
    q = -half * half
    term = np.power(half, n + 1) / (math.gamma(1.5) * math.gamma(n + 1.5))
    total = term.copy()
    for k in range(1, 80):
        term = term * q / ((k + 0.5) * (k + n + 0.5))
        total = total + term
        if np.all(np.abs(term) <= 1e-18 * np.maximum(np.abs(total), 1e-300)):
            break
    return float(total) if np.ndim(total) == 0 else total


class BesselMoments(NamedTuple):
    I0: float
    I1: float
    I2: float


def bessel_moments(x):
    """Integrals of J1, t*J1 and t^2*J1 over [0, x].

    The middle one is the Struve antiderivative (pi t/2)(J1 H0 - J0 H1),
    which vanishes at t = 0, so only the upper endpoint contributes.
    """
    x = float(x)
    if x < 0:
        raise ValueError("upper limit must be non-negative")
    j0, j1, j2 = bessel_j(0, x), bessel_j(1, x), bessel_j(2, x)
    i1 = 0.5 * math.pi * x * (j1 * struve_h(0, x) - j0 * struve_h(1, x))
    return BesselMoments(1.0 - j0, i1, x * x * j2)
