"""Hot numeric kernels with a numba path and a pure-numpy path.

Two kernels dominate the non-FFT runtime: pointwise Airy evaluation
(series / asymptotic with per-element early termination) and direct
quadrature of the Airy kernel at off-grid output points.  Each has a
``*_numpy`` and a ``*_numba`` implementation with identical contracts;
the public names ``airy_eval`` and ``kernel_quadrature`` are bound to one
of them at import time.

Set ``KDVSHARP_DISABLE_NUMBA=1`` to force the numpy path.  The numpy path
is also used when numba is not importable.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "BACKEND",
    "SERIES_MAX",
    "SERIES_MIN",
    "airy_eval",
    "airy_eval_numpy",
    "kernel_quadrature",
    "kernel_quadrature_numpy",
    "numba_available",
    "taper_weight",
]

#: Ai(0) = 3^{-2/3}/Gamma(2/3)
AI0 = 0.35502805388781723926
#: -Ai'(0) = 3^{-1/3}/Gamma(1/3)
AIP0 = 0.25881940379280679840

# Maclaurin series on [SERIES_MIN, SERIES_MAX]; both neighbouring routes
# are below 1e-11 absolute error at the switch points.
SERIES_MIN = -7.0
SERIES_MAX = 5.5

_EPS = 2.220446049250313e-16
_SQRT_PI = math.sqrt(math.pi)
_N_ASYM = 64


def _asymptotic_coefficients(n: int) -> tuple[np.ndarray, np.ndarray]:
    u = np.empty(n)
    v = np.empty(n)
    u[0] = 1.0
    v[0] = 1.0
    for k in range(1, n):
        # u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!)
        num = 1.0
        for m in range(2 * k + 1, 6 * k, 2):
            num *= m
        u[k] = num / (216.0**k * math.factorial(k))
        v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k]
    return u, v


_U, _V = _asymptotic_coefficients(_N_ASYM)


# --------------------------------------------------------------------------
# scalar routines (plain python, compiled by numba when available)
# --------------------------------------------------------------------------


def _airy_series(z):
    z3 = z * z * z
    t = 1.0  # f-series term
    s = z  # g-series term
    p = 0.5 * z * z  # f' term, starts at k = 1
    q = 1.0  # g' term
    f = t
    g = s
    fp = 0.0
    gp = q
    abs_v = AI0 * abs(t) + AIP0 * abs(s)
    abs_d = AIP0 * abs(q)
    big = max(abs_v, abs_d)
    last_v = 0.0
    last_d = 0.0
    for k in range(200):
        t *= z3 / ((3 * k + 2) * (3 * k + 3))
        s *= z3 / ((3 * k + 3) * (3 * k + 4))
        q *= z3 / ((3 * k + 1) * (3 * k + 3))
        if k >= 1:
            p *= z3 / ((3 * k) * (3 * k + 2))
        f += t
        g += s
        fp += p
        gp += q
        last_v = AI0 * abs(t) + AIP0 * abs(s)
        last_d = AI0 * abs(p) + AIP0 * abs(q)
        abs_v += last_v
        abs_d += last_d
        big = max(big, last_v, last_d)
        if k >= 2 and last_v <= 1e-19 * abs_v and last_d <= 1e-19 * abs_d:
            break
    ai = AI0 * f - AIP0 * g
    aip = AI0 * fp - AIP0 * gp
    # z < 0: alternating terms, error tracks the largest one
    # z >= 0: final combination cancels, error tracks the full sum
    scale = big if z < 0.0 else max(abs_v, abs_d)
    err = 4.0 * _EPS * scale + last_v + last_d
    return ai, aip, err


def _airy_positive(z):
    zeta = 2.0 / 3.0 * z * math.sqrt(z)
    sa = 0.0
    sd = 0.0
    prev = 1e300
    omitted = 0.0
    powk = 1.0
    for k in range(_N_ASYM):
        a = _U[k] * powk
        if a > prev:
            omitted = prev
            break
        sign = 1.0 if k % 2 == 0 else -1.0
        sa += sign * a
        sd += sign * _V[k] * powk
        prev = a
        omitted = a
        if a < 1e-18:
            break
        powk /= zeta
    quarter = z**0.25
    pref = math.exp(-zeta) / (2.0 * _SQRT_PI)
    ai = pref / quarter * sa
    aip = -pref * quarter * sd
    err = pref * (quarter + 1.0 / quarter) * (2.0 * omitted + 8.0 * _EPS * (1.0 + zeta))
    return ai, aip, err


def _airy_negative(z):
    x = -z
    zeta = 2.0 / 3.0 * x * math.sqrt(x)
    theta = zeta - 0.25 * math.pi
    pp = 0.0
    qq = 0.0
    rr = 0.0
    ss = 0.0
    prev = 1e300
    omitted = 0.0
    inv2 = 1.0 / (zeta * zeta)
    pw = 1.0
    for k in range(_N_ASYM // 2):
        a0 = _U[2 * k] * pw
        a1 = _U[2 * k + 1] * pw / zeta
        if a0 > prev:
            omitted = prev
            break
        sign = 1.0 if k % 2 == 0 else -1.0
        pp += sign * a0
        qq += sign * a1
        rr += sign * _V[2 * k] * pw
        ss += sign * _V[2 * k + 1] * pw / zeta
        prev = a1
        omitted = a1
        if a1 < 1e-18:
            break
        pw *= inv2
    c = math.cos(theta)
    s = math.sin(theta)
    quarter = x**0.25
    ai = (c * pp + s * qq) / (_SQRT_PI * quarter)
    aip = quarter / _SQRT_PI * (s * rr - c * ss)
    # phase error from rounding zeta dominates for large |z|
    err = (quarter + 1.0 / quarter) / _SQRT_PI * (2.0 * omitted + 8.0 * _EPS * (1.0 + zeta))
    return ai, aip, err


def _airy_scalar(z):
    if z > SERIES_MAX:
        return _airy_positive(z)
    if z < SERIES_MIN:
        return _airy_negative(z)
    return _airy_series(z)


def _airy_eval_loop(z):
    n = z.shape[0]
    ai = np.empty(n)
    aip = np.empty(n)
    err = np.empty(n)
    for i in range(n):
        a, b, e = _airy_scalar(z[i])
        ai[i] = a
        aip[i] = b
        err[i] = e
    return ai, aip, err


def _kernel_quadrature_loop(points, y, fr, fi, t_cbrt, sign, h, cutoff, taper):
    m = points.shape[0]
    n = y.shape[0]
    out_r = np.zeros(m)
    out_i = np.zeros(m)
    for i in range(m):
        acc_r = 0.0
        acc_i = 0.0
        for j in range(n):
            u = sign * (points[i] - y[j]) / t_cbrt
            if u < -cutoff:
                continue
            w = 1.0
            if u < -cutoff + taper:
                q = (u + cutoff) / taper
                w = q * q * q * (10.0 - 15.0 * q + 6.0 * q * q)
            if u > 40.0:
                continue
            a, b, e = _airy_scalar(u)
            acc_r += w * a * fr[j]
            acc_i += w * a * fi[j]
        out_r[i] = acc_r * h / t_cbrt
        out_i[i] = acc_i * h / t_cbrt
    return out_r, out_i


# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------


def taper_weight(u, cutoff, taper):
    """Quintic smoothstep from 0 at u = -cutoff to 1 at u = -cutoff + taper; 0 for u > 40."""
    q = np.clip((np.asarray(u, dtype=float) + cutoff) / taper, 0.0, 1.0)
    w = q * q * q * (10.0 - 15.0 * q + 6.0 * q * q)
    return np.where(u > 40.0, 0.0, w)


def _series_numpy(z):
    z3 = z * z * z
    t = np.ones_like(z)
    s = z.copy()
    p = 0.5 * z * z
    q = np.ones_like(z)
    f = t.copy()
    g = s.copy()
    fp = np.zeros_like(z)
    gp = q.copy()
    abs_v = AI0 + AIP0 * np.abs(s)
    abs_d = AIP0 * np.abs(q)
    big = np.maximum(abs_v, abs_d)
    last_v = np.zeros_like(z)
    last_d = np.zeros_like(z)
    for k in range(200):
        t *= z3 / ((3 * k + 2) * (3 * k + 3))
        s *= z3 / ((3 * k + 3) * (3 * k + 4))
        q *= z3 / ((3 * k + 1) * (3 * k + 3))
        if k >= 1:
            p *= z3 / ((3 * k) * (3 * k + 2))
        f += t
        g += s
        fp += p
        gp += q
        last_v = AI0 * np.abs(t) + AIP0 * np.abs(s)
        last_d = AI0 * np.abs(p) + AIP0 * np.abs(q)
        abs_v += last_v
        abs_d += last_d
        big = np.maximum(big, np.maximum(last_v, last_d))
        if k >= 2 and np.all(last_v <= 1e-19 * abs_v) and np.all(last_d <= 1e-19 * abs_d):
            break
    ai = AI0 * f - AIP0 * g
    aip = AI0 * fp - AIP0 * gp
    scale = np.where(z < 0.0, big, np.maximum(abs_v, abs_d))
    err = 4.0 * _EPS * scale + last_v + last_d
    return ai, aip, err


def _truncation_mask(mag):
    # keep terms up to (and excluding) the first increase, optimal truncation
    grow = np.zeros_like(mag, dtype=bool)
    grow[1:] = mag[1:] > mag[:-1]
    return ~np.logical_or.accumulate(grow, axis=0)


def _positive_numpy(z):
    zeta = 2.0 / 3.0 * z * np.sqrt(z)
    k = np.arange(_N_ASYM)[:, None]
    powk = zeta[None, :] ** (-k.astype(float))
    a = _U[:, None] * powk
    d = _V[:, None] * powk
    keep = _truncation_mask(a)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    sa = np.sum(np.where(keep, sign * a, 0.0), axis=0)
    sd = np.sum(np.where(keep, sign * d, 0.0), axis=0)
    nkeep = keep.sum(axis=0)
    omitted = a[nkeep - 1, np.arange(z.size)]
    quarter = z**0.25
    pref = np.exp(-zeta) / (2.0 * _SQRT_PI)
    ai = pref / quarter * sa
    aip = -pref * quarter * sd
    err = pref * (quarter + 1.0 / quarter) * (2.0 * omitted + 8.0 * _EPS * (1.0 + zeta))
    return ai, aip, err


def _negative_numpy(z):
    x = -z
    zeta = 2.0 / 3.0 * x * np.sqrt(x)
    theta = zeta - 0.25 * np.pi
    half = _N_ASYM // 2
    k = np.arange(half)[:, None]
    pw = zeta[None, :] ** (-2.0 * k)
    a0 = _U[0::2][:, None] * pw
    a1 = _U[1::2][:, None] * pw / zeta
    d0 = _V[0::2][:, None] * pw
    d1 = _V[1::2][:, None] * pw / zeta
    # pair k is kept while its leading term does not exceed the previous
    # pair's trailing term (same rule as the scalar loop)
    grow = np.zeros_like(a0, dtype=bool)
    grow[1:] = a0[1:] > a1[:-1]
    keep = ~np.logical_or.accumulate(grow, axis=0)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    pp = np.sum(np.where(keep, sign * a0, 0.0), axis=0)
    qq = np.sum(np.where(keep, sign * a1, 0.0), axis=0)
    rr = np.sum(np.where(keep, sign * d0, 0.0), axis=0)
    ss = np.sum(np.where(keep, sign * d1, 0.0), axis=0)
    nkeep = keep.sum(axis=0)
    omitted = a1[nkeep - 1, np.arange(z.size)]
    c = np.cos(theta)
    s = np.sin(theta)
    quarter = x**0.25
    ai = (c * pp + s * qq) / (_SQRT_PI * quarter)
    aip = quarter / _SQRT_PI * (s * rr - c * ss)
    err = (quarter + 1.0 / quarter) / _SQRT_PI * (2.0 * omitted + 8.0 * _EPS * (1.0 + zeta))
    return ai, aip, err


def airy_eval_numpy(z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized Ai, Ai' and absolute error estimate (numpy path)."""
    z = np.ascontiguousarray(z, dtype=float)
    ai = np.empty_like(z)
    aip = np.empty_like(z)
    err = np.empty_like(z)
    regions = (
        (z > SERIES_MAX, _positive_numpy),
        (z < SERIES_MIN, _negative_numpy),
        ((z >= SERIES_MIN) & (z <= SERIES_MAX), _series_numpy),
    )
    for mask, fn in regions:
        if np.any(mask):
            a, b, e = fn(z[mask])
            ai[mask] = a
            aip[mask] = b
            err[mask] = e
    return ai, aip, err


def kernel_quadrature_numpy(points, y, fr, fi, t_cbrt, sign, h, cutoff, taper, chunk=1 << 20):
    m = points.shape[0]
    n = max(y.shape[0], 1)
    out_r = np.zeros(m)
    out_i = np.zeros(m)
    rows = max(1, chunk // n)
    for start in range(0, m, rows):
        sl = slice(start, start + rows)
        u = sign * (points[sl, None] - y[None, :]) / t_cbrt
        w = taper_weight(u, cutoff, taper)
        ai = np.zeros_like(u)
        live = w > 0.0
        ai[live] = airy_eval_numpy(u[live])[0]
        kern = w * ai
        out_r[sl] = kern @ fr
        out_i[sl] = kern @ fi
    return out_r * h / t_cbrt, out_i * h / t_cbrt


# --------------------------------------------------------------------------
# backend selection
# --------------------------------------------------------------------------

_DISABLED = os.environ.get("KDVSHARP_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by KDVSHARP_DISABLE_NUMBA")
    import numba

    _jit = numba.njit(cache=True, nogil=True)
    _airy_series = _jit(_airy_series)
    _airy_positive = _jit(_airy_positive)
    _airy_negative = _jit(_airy_negative)
    _airy_scalar = _jit(_airy_scalar)
    airy_eval_numba = _jit(_airy_eval_loop)
    kernel_quadrature_numba = _jit(_kernel_quadrature_loop)
    numba_available = True
except ImportError:
    airy_eval_numba = None
    kernel_quadrature_numba = None
    numba_available = False

BACKEND = "numba" if numba_available else "numpy"


def airy_eval(z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Ai, Ai' and absolute error estimate at every entry of ``z``."""
    z = np.ascontiguousarray(z, dtype=float)
    if numba_available:
        return airy_eval_numba(z.ravel())
    return airy_eval_numpy(z.ravel())


def kernel_quadrature(points, y, f, t_cbrt, sign, h, cutoff, taper):
    """h * sum_j K(points_i - y_j) f_j for the Airy kernel at scale ``t_cbrt``.

    ``sign`` is +1 for forward time and -1 for backward time (reflected
    kernel).  Arguments below ``-cutoff`` are dropped and the last
    ``taper`` units before the cutoff carry a quintic smoothstep weight.
    ``cutoff = inf`` keeps every lag.
    """
    points = np.ascontiguousarray(points, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    f = np.asarray(f, dtype=complex)
    fr = np.ascontiguousarray(f.real)
    fi = np.ascontiguousarray(f.imag)
    impl = kernel_quadrature_numba if numba_available else kernel_quadrature_numpy
    re, im = impl(points, y, fr, fi, float(t_cbrt), float(sign), float(h), float(cutoff), float(taper))
    return re + 1j * im
