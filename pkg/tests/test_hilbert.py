import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdvsharp.estimates import bump
from kdvsharp.grid import GridFunction, GridSpec, norm_l2
from kdvsharp.hilbert import (
    WeightFamily,
    hilbert_multiplier,
    hilbert_transform,
    mean_free_part,
    verify_isometry,
    weighted_bound_ratio,
)
from kdvsharp.reports import DegenerateInputError

SPEC = GridSpec(20.0, 2**12)


def test_multiplier_values():
    xi = SPEC.xi
    m = hilbert_multiplier(xi)
    assert m[0] == 0 and m[SPEC.n_points // 2] == 0
    assert np.all(m[xi > 0] == -1j) and np.all(m[1 : SPEC.n_points // 2] == 1j)


@pytest.mark.parametrize("k", [1, 7, 100])
def test_cos_to_sin(k):
    w = k * SPEC.dxi
    f = GridFunction.from_callable(SPEC, lambda x: np.cos(w * x))
    h = hilbert_transform(f)
    assert np.max(np.abs(h.values - np.sin(w * SPEC.x))) < 1e-12


def test_square_is_minus_identity_on_mean_free_part():
    f = GridFunction.from_callable(SPEC, lambda x: np.exp(-(x**2)) * (1 + x) + 0.2)
    f0 = mean_free_part(f)
    hh = hilbert_transform(hilbert_transform(f))
    assert np.max(np.abs(hh.values + f0.values)) < 1e-13


def test_isometry_report():
    f = GridFunction.from_callable(SPEC, lambda x: np.exp(-((x - 1) ** 2)) + 0.5)
    r = verify_isometry(f)
    assert r.passes and abs(r.ratio - 1) < 1e-12
    assert r.metadata["degenerate"] == "false"


def test_isometry_degenerate_input():
    r = verify_isometry(GridFunction.from_callable(SPEC, lambda x: np.full_like(x, 3.0)))
    assert math.isnan(r.ratio) and not r.passes
    assert r.metadata["degenerate"] == "true"


def test_antisymmetry():
    f = GridFunction.from_callable(SPEC, lambda x: np.exp(-(x**2)) * np.cos(3 * x))
    g = GridFunction.from_callable(SPEC, lambda x: np.exp(-((x - 1) ** 2) / 2))
    lhs = np.vdot(hilbert_transform(f).values, g.values)
    rhs = -np.vdot(f.values, hilbert_transform(g).values)
    assert abs(lhs - rhs) < 1e-12


def test_principal_value_agrees_for_moment_free_data():
    # mass and first moment vanish, so the 1/x^2 tails that wrap are small
    spec = GridSpec(100.0, 2**17)
    f = GridFunction.from_callable(spec, lambda x: bump(x + 4) - 2 * bump(x) + bump(x - 4))
    a = hilbert_transform(f, "multiplier")
    b = hilbert_transform(f, "principal_value")
    assert norm_l2(a - b) / norm_l2(a) < 1e-3


def test_sinc_beats_multiplier_on_slow_tails():
    # H[1/(1+y^2)] = y/(1+y^2) on the line
    spec = GridSpec(200.0, 2**16)
    f = GridFunction.from_callable(spec, lambda y: 1 / (1 + y * y))
    exact = spec.x / (1 + spec.x**2)
    err = {m: np.max(np.abs(hilbert_transform(f, m).values - exact)) for m in ("multiplier", "sinc")}
    assert err["sinc"] < 1e-4
    assert err["sinc"] < err["multiplier"] / 10


def test_unknown_method():
    with pytest.raises(ValueError):
        hilbert_transform(GridFunction.zeros(SPEC), "wavelet")


def test_weight_family():
    w = WeightFamily(2.0)
    assert w.omega(np.array([2.0, 5.0])) == pytest.approx([1.0, 0.5])
    f = GridFunction.zeros(GridSpec(4.0, 16))
    # torus distance: the point -4 is 2 away from center 2 across the seam
    assert w.on_grid(f)[0] == pytest.approx(1 / math.sqrt(3))


def test_weighted_ratio_translation_covariant():
    spec = GridSpec(50.0, 2**12)
    f = GridFunction.from_callable(spec, lambda x: np.exp(-(x**2) / 4) * np.cos(2 * x))
    base = weighted_bound_ratio(f, WeightFamily(3.0))
    for s in (1, 17, -400):
        g = f.with_values(np.roll(f.values, s))
        r = weighted_bound_ratio(g, WeightFamily(3.0 + s * spec.spacing))
        assert abs(r - base) <= 1e-8 * base


def test_weighted_ratio_grid_stable():
    fn = lambda x: np.exp(-(x**2) / 4) * np.cos(2 * x)  # noqa: E731
    r1 = weighted_bound_ratio(GridFunction.from_callable(GridSpec(50.0, 2**12), fn), WeightFamily(0.0))
    r2 = weighted_bound_ratio(GridFunction.from_callable(GridSpec(50.0, 2**13), fn), WeightFamily(0.0))
    assert abs(r1 - r2) < 0.05 * r1


def test_weighted_ratio_degenerate():
    with pytest.raises(DegenerateInputError):
        weighted_bound_ratio(GridFunction.zeros(SPEC), WeightFamily(0.0))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-2, 2, allow_nan=False), min_size=6, max_size=6))
def test_property_isometry(c):
    fn = lambda x: np.exp(-((x - c[0]) ** 2)) * (c[1] + 1j * c[2]) + c[3] * np.exp(-((x - c[4]) ** 2) / 3) + c[5]  # noqa: E731
    f = GridFunction.from_callable(SPEC, fn)
    r = verify_isometry(f)
    if norm_l2(mean_free_part(f)) > 1e-8:
        assert r.passes


def test_minimizer_image_in_the_interior():
    # the 1/y^2 tail cut at |y| = 200 leaves ~1e-4 near the edge, 5e-7 inside
    spec = GridSpec(200.0, 2**16)
    f = GridFunction.from_callable(spec, lambda y: 1 / (1 + y * y))
    x = spec.x
    err = np.abs(hilbert_transform(f, "sinc").values - x / (1 + x * x))
    assert err[np.abs(x) <= 20].max() < 1e-6


def test_far_weight_center_gives_plain_ratio():
    spec = GridSpec(200.0, 2**13)
    f = GridFunction.from_callable(spec, lambda x: np.exp(-(x**2)) * np.sin(3 * x))
    assert weighted_bound_ratio(f, WeightFamily(150.0)) == pytest.approx(1.0, abs=1e-3)


def test_even_real_maps_to_odd_real():
    f = GridFunction.from_callable(SPEC, lambda x: np.exp(-(x**2)) * np.cos(x))
    h = hilbert_transform(f).values
    assert np.max(np.abs(h.imag)) < 1e-15
    # x_k -> -x_k is k -> N - k on the grid; index 0 (x = -L) maps to itself
    assert np.max(np.abs(h[1:] + h[1:][::-1])) < 1e-10
