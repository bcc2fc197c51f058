import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdvsharp import estimates as est
from kdvsharp.airy import find_airy_max
from kdvsharp.grid import GridFunction, GridSpec, derivative, norm_l2, peak_sq
from kdvsharp.propagator import PropagatorParams, TruncationWarning, kdv_group
from kdvsharp.reports import EMPIRICAL, DegenerateInputError

SPEC = GridSpec(60.0, 2**14)
WIDE = GridSpec(240.0, 2**16)


def _partner(x):
    return np.exp(-((x - 0.5) ** 2)) * (1.0 + 0.3 * x)


def _gf(fn, spec=SPEC):
    return GridFunction.from_callable(spec, fn)


def test_claimed_constants():
    a2 = find_airy_max().ai_max ** 2
    assert est.claimed_constant("linfty") == pytest.approx(0.5738561062678437, abs=1e-15)
    assert est.claimed_constant("linfty", "corrected") == pytest.approx(2 * math.pi * a2)
    assert est.claimed_constant("schrodinger") == 2.0
    assert est.claimed_constant("schrodinger", "corrected") == 0.5
    assert est.claimed_constant("landau", "corrected") == 1.0
    with pytest.raises(ValueError):
        est.claimed_constant("linfty", "optimistic")


def test_bump_shape():
    x = np.linspace(-3, 3, 6001)
    b = est.bump(x)
    assert np.all(b[np.abs(x) <= 1.6] == 1.0)
    assert np.all(b[np.abs(x) >= 1.9] == 0.0)
    assert np.all((b >= 0) & (b <= 1))
    right = b[x >= 0]
    assert np.all(np.diff(right) <= 0)
    assert np.max(np.abs(b - b[::-1])) < 1e-12
    assert est.bump_function() is est.bump


@pytest.mark.parametrize("j", [-3, 0, 2])
def test_dyadic_psi_support(j):
    x = np.linspace(-20, 20, 40001)
    p = est.dyadic_psi(x, j)
    assert np.all(p >= 0)
    live = np.abs(x[p > 0])
    assert live.min() > 0.8 * 2.0**j and live.max() < 1.9 * 2.0**j


def test_partition_telescopes():
    x = np.linspace(-50, 50, 10001)
    s = sum(est.dyadic_psi(x, j) for j in range(-4, 5))
    assert np.max(np.abs(s - (est.bump(x / 16.0) - est.bump(x / 2.0**-5)))) < 1e-15
    inner = (np.abs(x) > 0.1) & (np.abs(x) < 25)
    assert np.max(np.abs(s[inner] - 1)) < 1e-15


def test_decomposition_reassembles():
    f = _gf(lambda x: np.exp(-(x**2) / 9))
    d = est.dyadic_decompose(f, -10, 6)
    origin = math.sqrt(SPEC.spacing) * abs(f.values[SPEC.n_points // 2])
    assert norm_l2(d.total() - f) == pytest.approx(origin, rel=1e-12)
    assert d.truncation_l2 < 1e-12
    assert list(d.indices) == list(range(-10, 7))


def test_decomposition_warns_on_truncation():
    f = _gf(lambda x: np.exp(-(x**2) / 400))
    with pytest.warns(TruncationWarning):
        d = est.dyadic_decompose(f, -2, 2)
    assert d.truncation_l2 > 0.1 * norm_l2(f)
    with pytest.raises(ValueError):
        est.dyadic_decompose(f, 3, 2)


def test_pointwise_bound():
    f = _gf(lambda x: np.exp(-(x**2) / 9))
    d = est.dyadic_decompose(f, -10, 6)
    r = est.pointwise_bound_ratio(d, f.x)
    assert 0.9 < r <= 0.95 + 1e-12  # |x| < 1.9 * 2^j on supp psi_j


def test_single_shell_n_t_norm():
    # supported in 4.05 < |x| < 5.95 where psi_2 = 1 and every other psi_j = 0
    f = _gf(lambda x: est.bump((np.abs(x) - 5.0) / 0.5), GridSpec(60.0, 2**15))
    assert est.n_t_norm(f) == pytest.approx(2.0 * norm_l2(f), rel=1e-12)


def test_linfty_gaussian_below_corrected_constant():
    r = est.check_linfty_estimate(_gf(lambda x: np.exp(-(x**2))), 1.0)
    assert r.name == "linfty" and r.t == 1.0
    assert 0.9 < r.ratio < est.claimed_constant("linfty", "corrected")
    assert r.metadata["guard"] == "pass"
    assert not r.passes  # exceeds the stated 2 ||Ai||^2


def test_linfty_methods_agree_on_wide_box():
    phi = _gf(lambda x: np.exp(-(x**2)) * np.cos(x), WIDE)
    a = est.check_linfty_estimate(phi, 2.0, method="spectral")
    b = est.check_linfty_estimate(phi, 2.0, method="airy_convolution")
    assert a.ratio == pytest.approx(b.ratio, rel=1e-10)


def test_linfty_orbit_invariance():
    fn = lambda x: np.exp(-(x**2)) * (1 + 0.3 * x)  # noqa: E731
    r = [est.check_linfty_estimate(est.scaling_orbit(fn, SPEC, t, rescale_grid=False), t).ratio for t in (0.5, 1, 2, 4)]
    assert (max(r) - min(r)) / max(r) < 1e-6


def test_linfty_fixed_data_is_not_t_invariant():
    phi = _gf(lambda x: np.exp(-(x**2)))
    r = [est.check_linfty_estimate(phi, t).ratio for t in (0.5, 4.0)]
    assert abs(r[1] - r[0]) > 0.01


def test_j_forms_restate_the_sup_estimate():
    phi = _gf(lambda x: np.exp(-(x**2)) * (1 + 0.5j * x), WIDE)
    psi = _gf(_partner, WIDE)
    t = 1.5
    u = kdv_group(phi, t)
    v = kdv_group(psi, t)
    r3, r4 = est.check_j_form_estimates(u, v, t)
    direct = est.check_linfty_estimate(phi, t, method="spectral")
    assert r3.ratio == pytest.approx(direct.ratio, rel=1e-8)
    assert r4.claimed_constant == EMPIRICAL and np.isfinite(r4.ratio)


@pytest.mark.parametrize("variant", ["statement", "proof"])
def test_bilinear_orbit_invariance(variant):
    r = []
    for t in (0.5, 4.0):
        phi = est.scaling_orbit(lambda x: np.exp(-(x**2)), SPEC, t, rescale_grid=False)
        psi = est.scaling_orbit(_partner, SPEC, t, rescale_grid=False)
        r.append(est.check_bilinear_estimate(phi, psi, t, variant).ratio)
    assert abs(r[1] - r[0]) / r[0] < 1e-6
    assert est.check_bilinear_estimate(phi, psi, 4.0, variant).name == f"bilinear_{variant}"


def test_bilinear_unknown_variant():
    phi = _gf(lambda x: np.exp(-(x**2)))
    with pytest.raises(ValueError):
        est.check_bilinear_estimate(phi, phi, 1.0, "lemma")


def test_besov_with_and_without_known_preimage():
    spec = GridSpec(128.0, 2**15)
    g = _gf(lambda x: est.bump(x / 2.0), spec)
    u = kdv_group(g, 2.0)
    a = est.check_besov_decay(u, 2.0, back=g)
    b = est.check_besov_decay(u, 2.0)
    assert a.ratio == pytest.approx(b.ratio, rel=1e-10)
    assert 0 < a.ratio < 1


def test_besov_orbit_invariance_on_rescaled_grids():
    base = GridSpec(128.0, 2**15)
    r = []
    for t in (1.0, 8.0):
        g = est.scaling_orbit(lambda x: est.bump(x / 2.0), base, t)
        r.append(est.check_besov_decay(kdv_group(g, t), t, back=g).ratio)
    assert abs(r[1] - r[0]) / r[0] < 1e-12


def test_landau_gaussian_closed_form():
    r = est.check_landau_inequality(_gf(lambda x: np.exp(-(x**2))))
    assert r.ratio == pytest.approx(math.sqrt(2 / math.pi), abs=1e-6)
    assert r.passes


def test_landau_smoothed_exponential_nearly_sharp():
    d = 0.01
    f = _gf(lambda x: np.exp(-(np.sqrt(x * x + d * d) - d)), GridSpec(30.0, 2**16))
    assert 0.99 < est.check_landau_inequality(f).ratio <= 1.0


def test_schrodinger_phase_conjugated_family_approaches_half():
    d, t = 0.01, 2.0
    spec = GridSpec(30.0, 2**16)
    psi = _gf(lambda x: np.exp(-1j * x * x / (4 * t)) * np.exp(-(np.sqrt(x * x + d * d) - d)), spec)
    r = est.check_schrodinger_estimate(psi, t, "corrected")
    assert 0.49 < r.ratio <= 0.5 and r.passes


@pytest.mark.parametrize(
    "call",
    [
        lambda z, g: est.check_linfty_estimate(z, 1.0),
        lambda z, g: est.check_bilinear_estimate(g, z, 1.0),
        lambda z, g: est.check_j_form_estimates(z, g, 1.0),
        lambda z, g: est.check_schrodinger_estimate(z, 1.0),
        lambda z, g: est.check_landau_inequality(z),
        lambda z, g: est.check_besov_decay(z, 1.0),
    ],
)
def test_zero_input_is_degenerate(call):
    with pytest.raises(DegenerateInputError):
        call(GridFunction.zeros(SPEC), _gf(lambda x: np.exp(-(x**2))))


@pytest.mark.parametrize("t", [0.0, -1.0, math.nan])
def test_nonpositive_t_rejected(t):
    phi = _gf(lambda x: np.exp(-(x**2)))
    with pytest.raises(ValueError):
        est.check_linfty_estimate(phi, t)


def test_guard_flags_mass_at_edge():
    phi = _gf(lambda x: np.exp(-((x - 55.0) ** 2)))
    with pytest.warns(TruncationWarning):
        r = est.check_linfty_estimate(phi, 1.0)
    assert r.metadata["guard"] == "fail"


@settings(max_examples=15, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(-2.0, 2.0), st.floats(0.5, 4.0))
def test_property_linfty_below_corrected(width, shift, t):
    phi = _gf(lambda x: np.exp(-(((x - shift) / width) ** 2)) * np.exp(1j * x))
    r = est.check_linfty_estimate(phi, t, constants="corrected")
    assert r.passes


def test_bump_stated_points():
    assert est.bump(np.array([0.0, 1.5, -1.5, 2.0, -2.0])).tolist() == [1.0, 1.0, 1.0, 0.0, 0.0]


def test_unit_shell_data_touches_only_neighbouring_pieces():
    spec = GridSpec(8.0, 2**13)
    f = _gf(lambda x: np.where((np.abs(x) >= 1) & (np.abs(x) <= 2), 1.0, 0.0), spec)
    d = est.dyadic_decompose(f, -4, 4)
    live = {j for j, p in zip(d.indices, d.pieces) if norm_l2(p) > 0}
    assert live <= {-1, 0, 1}


def test_proof_variant_product_rule():
    # phi = psi real: U(t)phi * d_x U(t)phi = d_x (U(t)phi)^2 / 2
    phi = _gf(lambda x: np.exp(-(x**2)), WIDE)
    t = 1.0
    r = est.check_bilinear_estimate(phi, phi, t, "proof", method="spectral")
    u = kdv_group(phi, t)
    half = derivative(u * u) * 0.5
    assert r.lhs == pytest.approx(math.sqrt(peak_sq(half)[0]), rel=1e-8)


@pytest.mark.parametrize("lam", [0.5, 2.0])
def test_landau_scale_invariance(lam):
    spec = GridSpec(60.0, 2**15)
    a = est.check_landau_inequality(_gf(lambda x: np.exp(-(x**2)) * (1 + x / 3), spec)).ratio
    b = est.check_landau_inequality(_gf(lambda x: np.exp(-((lam * x) ** 2)) * (1 + lam * x / 3), spec)).ratio
    assert abs(a - b) / a < 1e-6


def test_schrodinger_orbit_invariance():
    r = [est.check_schrodinger_estimate(est.scaling_orbit(lambda x: np.exp(-(x**2)) * (1 + 0.2j * x), SPEC, t, power=0.5, rescale_grid=False), t).ratio for t in (0.5, 1.0, 2.0)]
    assert (max(r) - min(r)) / max(r) < 1e-6
