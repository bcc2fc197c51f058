"""Linear KdV group U(t), free Schrodinger group, and J(t) = U(t) x U(-t).

Normalization: U(t) has Fourier symbol exp(i t xi^3 / 3), equivalently

    (U(t) f)(x) = t^{-1/3} int Ai((x - y) / t^{1/3}) f(y) dy,   t > 0,

since the Fourier transform of Ai is exp(i xi^3 / 3).  U(t) solves
v_t + v_xxx / 3 = 0.  For t < 0 the kernel is reflected:
K_{-t}(u) = K_t(-u).  With this normalization J(t) = x - t d^2/dx^2.

The Schrodinger group has symbol exp(i t xi^2), so its J(t) = x - 2 i t d/dx.

Two realizations of U(t):

* ``spectral``: multiplier on the periodic grid (exactly unitary).
* ``airy_convolution``: the kernel sampled on the lattice of grid
  differences and applied as a linear (non-periodic) convolution via FFT.
  Every lag |x - y| <= 2L is kept by default, so the only truncation is the
  box itself.  An optional cutoff in Ai argument applies a quintic
  smoothstep over the last ``KERNEL_TAPER_WAVES`` local wavelengths; a
  linear ramp there (first-order averaging) leaks ~6e-4 relative error at
  the cutoff edge, the quintic over 16 wavelengths about 2e-6.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.signal import fftconvolve

from . import _kernels
from .grid import GridFunction, boundary_mass, fourier_multiply, multiply_by_x, derivative

__all__ = [
    "JResult",
    "KERNEL_CUTOFF",
    "KERNEL_TAPER_WAVES",
    "PropagatorParams",
    "TruncationWarning",
    "airy_kernel",
    "j_fourier_side",
    "j_operator",
    "kdv_group",
    "kdv_group_at",
    "kdv_group_dx",
    "kdv_symbol",
    "kernel_taper",
    "schrodinger_group",
]

KERNEL_CUTOFF = np.inf
KERNEL_TAPER_WAVES = 16
J_TAIL_LIMIT = 1e-6


def kernel_taper(cutoff: float) -> float:
    """Taper length in Ai argument: KERNEL_TAPER_WAVES local wavelengths 2 pi / sqrt(cutoff)."""
    if not np.isfinite(cutoff):
        return 1.0
    return KERNEL_TAPER_WAVES * 2.0 * np.pi / np.sqrt(cutoff)


Method = Literal["spectral", "airy_convolution"]


class TruncationWarning(UserWarning):
    """Mass near the edge of the periodic box: the torus is not imitating the line."""


@dataclass(frozen=True)
class PropagatorParams:
    t: float
    method: Method = "spectral"

    def __post_init__(self):
        if self.method not in ("spectral", "airy_convolution"):
            raise ValueError(f"unknown propagator method {self.method!r}")
        if not np.isfinite(self.t):
            raise ValueError("t must be finite")
        if self.method == "airy_convolution" and self.t == 0:
            raise ValueError("airy_convolution needs t != 0 (kernel scales with t^{1/3})")


def kdv_symbol(xi: np.ndarray, t: float) -> np.ndarray:
    return np.exp(1j * t * xi**3 / 3.0)


def airy_kernel(u: np.ndarray, t: float, cutoff: float = KERNEL_CUTOFF, dx: bool = False) -> np.ndarray:
    """K_t(u) = |t|^{-1/3} Ai(sgn(t) u / |t|^{1/3}), optionally cut at Ai argument -cutoff.

    ``dx=True`` gives dK_t/du = sgn(t) |t|^{-2/3} Ai'(sgn(t) u / |t|^{1/3}).
    """
    c = np.cbrt(abs(t))
    sg = np.sign(t)
    s = sg * np.asarray(u, dtype=float) / c
    w = _kernels.taper_weight(s, cutoff, kernel_taper(cutoff))
    out = np.zeros_like(s)
    live = w > 0.0
    a, d, _ = _kernels.airy_eval(s[live])
    if dx:
        out[live] = d
        return w * out * sg / (c * c)
    out[live] = a
    return w * out / c


def _convolve(f: GridFunction, t: float, cutoff: float = KERNEL_CUTOFF, dx: bool = False) -> GridFunction:
    spec = f.spec
    N, h = spec.n_points, spec.spacing
    lags = h * np.arange(-(N - 1), N)
    k = airy_kernel(lags, t, cutoff, dx)
    v = f.values
    # out_i = h sum_j k(x_i - x_j) f_j
    re = fftconvolve(k, v.real, mode="valid")
    im = fftconvolve(k, v.imag, mode="valid")
    return f.with_values(h * (re + 1j * im))


def kdv_group(f: GridFunction, params: PropagatorParams | float) -> GridFunction:
    """U(t) f by the method in ``params`` (a bare float means spectral)."""
    if not isinstance(params, PropagatorParams):
        params = PropagatorParams(float(params))
    if params.method == "spectral":
        if params.t == 0:
            return f
        return fourier_multiply(f, kdv_symbol(f.spec.xi, params.t))
    return _convolve(f, params.t)


def kdv_group_dx(f: GridFunction, params: PropagatorParams | float) -> GridFunction:
    """d/dx U(t) f: multiplier i xi (spectral) or the Ai' kernel (airy_convolution)."""
    if not isinstance(params, PropagatorParams):
        params = PropagatorParams(float(params))
    if params.method == "spectral":
        return derivative(kdv_group(f, params))
    return _convolve(f, params.t, dx=True)


def kdv_group_at(f: GridFunction, t: float, points, cutoff: float = KERNEL_CUTOFF) -> np.ndarray:
    """(U(t) f)(p) at arbitrary points by direct kernel quadrature (line, not torus)."""
    if t == 0:
        raise ValueError("kdv_group_at needs t != 0")
    points = np.atleast_1d(np.asarray(points, dtype=float))
    return _kernels.kernel_quadrature(
        points, f.x, f.values, np.cbrt(abs(t)), np.sign(t), f.spec.spacing, cutoff, kernel_taper(cutoff)
    )


def schrodinger_group(f: GridFunction, t: float) -> GridFunction:
    """Free Schrodinger group, symbol exp(i t xi^2)."""
    if t == 0:
        return f
    return fourier_multiply(f, np.exp(1j * t * f.spec.xi ** 2))


@dataclass(frozen=True, eq=False)
class JResult:
    function: GridFunction
    tail_fraction: float
    truncated: bool


def j_operator(f: GridFunction, t: float, group: Literal["kdv", "schrodinger"] = "kdv") -> JResult:
    """J(t) f = U(t) x U(-t) f by composition.

    Flags (and warns) when U(-t) f has tail_fraction above 1e-6, because
    the multiplication by x then sees the periodic wrap.
    """
    if group == "kdv":
        back = kdv_group(f, -t)
        fwd = lambda g: kdv_group(g, t)  # noqa: E731
    elif group == "schrodinger":
        back = schrodinger_group(f, -t)
        fwd = lambda g: schrodinger_group(g, t)  # noqa: E731
    else:
        raise ValueError(f"unknown group {group!r}")
    tail = boundary_mass(back).tail_fraction
    truncated = tail > J_TAIL_LIMIT
    if truncated:
        warnings.warn(f"U(-t) f has tail fraction {tail:.3g} > {J_TAIL_LIMIT:g}", TruncationWarning, stacklevel=2)
    return JResult(fwd(multiply_by_x(back)), tail, truncated)


def j_fourier_side(f: GridFunction, t: float, group: Literal["kdv", "schrodinger"] = "kdv") -> GridFunction:
    """J(t) f from the conjugated symbol: i d/dxi + t xi^2 (kdv) or i d/dxi + 2 t xi (schrodinger).

    In physical space these are x - t f'' and x - 2 i t f'.
    """
    xf = multiply_by_x(f)
    if group == "kdv":
        return xf - t * derivative(f, 2)
    if group == "schrodinger":
        return xf - (2j * t) * derivative(f, 1)
    raise ValueError(f"unknown group {group!r}")
