import math

import numpy as np
import pytest

from kdvsharp.airy import airy_array, find_airy_max
from kdvsharp.extremizer import (
    ExtremizerParams,
    ResolutionError,
    build_phi_n,
    extremizer_grid,
    find_epsilon,
    sharpness_experiment,
    verify_minimizer_identity,
)
from kdvsharp.grid import GridFunction, GridSpec, multiply_by_x, norm_l2
from kdvsharp.propagator import TruncationWarning

EPSILON = 0.9140923546066868
CORRECTED = 2 * math.pi * 0.53565665601569986 ** 2


def test_epsilon_is_the_half_height_radius():
    eps = find_epsilon()
    assert eps == pytest.approx(EPSILON, abs=1e-9)
    ext = find_airy_max()
    ys = np.linspace(-eps, eps, 4001)
    assert np.min(np.abs(airy_array(ext.x0 - ys)[0])) >= 0.5 * ext.ai_max - 1e-12
    # just past eps the condition breaks on one side
    edge = min(abs(airy_array(np.array([ext.x0 - eps - 1e-6]))[0][0]), abs(airy_array(np.array([ext.x0 + eps + 1e-6]))[0][0]))
    assert edge < 0.5 * ext.ai_max


def test_params_validation():
    x0 = find_airy_max().x0
    with pytest.raises(ValueError):
        ExtremizerParams(0, EPSILON, x0)
    with pytest.raises(ValueError):
        ExtremizerParams(8, 1.5, x0)
    with pytest.raises(ValueError):
        ExtremizerParams(8, -1.0, x0)
    assert ExtremizerParams.default(8).epsilon == pytest.approx(EPSILON)


def test_grid_resolves_the_concentration_scale():
    for n in (8, 32, 128):
        s = extremizer_grid(n)
        assert s.spacing <= 1.0 / (10 * n)
    p = ExtremizerParams.default(64)
    with pytest.raises(ResolutionError):
        build_phi_n(p, GridSpec(60.0, 2**12))


def test_phi_n_values():
    n = 16
    p = ExtremizerParams.default(n)
    phi = build_phi_n(p, extremizer_grid(n))
    x = phi.x
    k0 = int(np.argmin(np.abs(x)))
    assert phi.values[k0].real == pytest.approx(math.sqrt(n) / airy_array(np.array([p.x0]))[0][0], rel=1e-12)
    assert np.all(phi.values[np.abs(x) > p.epsilon] == 0)


def test_weighted_norm_decays_like_one_over_n():
    norms = []
    for n in (16, 32, 64, 128):
        p = ExtremizerParams.default(n)
        norms.append(norm_l2(multiply_by_x(build_phi_n(p, extremizer_grid(n)))))
    slope = np.polyfit(np.log([16, 32, 64, 128]), np.log(norms), 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.05)


def test_sharpness_sweep():
    res = sharpness_experiment((8, 16, 32, 64, 128), "corrected")
    r = [x.ratio for x in res.reports]
    assert r == pytest.approx([1.51290, 1.64802, 1.72277, 1.76213, 1.78230], abs=5e-5)
    assert all(x.passes for x in res.reports)
    for x in res.reports:
        # the off-grid direct evaluation agrees with the interpolated value
        assert float(x.metadata["direct_ratio"]) == pytest.approx(x.ratio, rel=1e-4)
        assert float(x.metadata["gap_corrected"]) == pytest.approx(CORRECTED - x.ratio, abs=1e-12)


def test_sharpness_stated_policy_reports_gaps():
    res = sharpness_experiment((8, 16), "stated")
    assert not res.all_pass
    assert all(float(x.metadata["gap_stated"]) < 0 for x in res.reports)


def test_sharpness_rejects_unsorted_n():
    with pytest.raises(ValueError):
        sharpness_experiment((16, 8))


def test_minimizer_on_large_box():
    r = verify_minimizer_identity(1.0, GridSpec(12800.0, 2**18))
    assert r.passes
    assert float(r.metadata["alignment"]) <= 1e-4


def test_minimizer_small_box_warns_and_falls_short():
    with pytest.warns(TruncationWarning):
        r = verify_minimizer_identity(3.0, GridSpec(200.0, 2**16))
    assert not r.passes
    assert 0.98 < r.ratio < 1 - 1e-4


def test_minimizer_sinc_beats_multiplier():
    spec = GridSpec(400.0, 2**16)
    a = verify_minimizer_identity(1.0, spec, "sinc")
    b = verify_minimizer_identity(1.0, spec, "multiplier")
    assert float(a.metadata["alignment"]) < float(b.metadata["alignment"]) / 10


def test_gaussian_is_not_a_minimizer():
    spec = GridSpec(200.0, 2**16)
    g = GridFunction.from_callable(spec, lambda y: np.exp(-(y**2)))
    r = verify_minimizer_identity(1.0, spec, psi=g)
    assert r.ratio == pytest.approx(math.sqrt(2 / math.pi), abs=1e-3)
    assert not r.passes


def test_minimizer_rejects_bad_lambda():
    with pytest.raises(ValueError):
        verify_minimizer_identity(0.0, GridSpec(200.0, 2**12))
