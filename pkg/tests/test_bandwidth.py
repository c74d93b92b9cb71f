import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_pure_beta2_model
from topdc import bandwidth as bw
from topdc.constants import HBAR


def test_analytic_spontaneous_closed_form():
    res = bw.tau_sp_wg_analytic(3.2e-26, 0.01)
    assert res.tau_inv == pytest.approx(
        math.sqrt(math.sqrt(3) / (9 * 3.2e-26 * 0.01)), rel=1e-12
    )


def test_analytic_seeded_closed_form():
    res = bw.tau_st_wg_analytic(5.5e-26, 0.01)
    assert res.tau_inv == pytest.approx(
        (4 / 3) * math.sqrt(2 / (math.pi * 5.5e-26 * 0.01)), rel=1e-12
    )


def test_zero_dispersion_diverges():
    with pytest.raises(bw.InfiniteBandwidthError):
        bw.tau_sp_wg_analytic(0.0, 0.01)
    with pytest.raises(bw.InfiniteBandwidthError):
        bw.tau_st_wg_analytic(0.0, 0.01)


def test_quadrature_approaches_analytic_sp():
    model = make_pure_beta2_model(3.2e-26)
    ana = bw.tau_sp_wg_analytic(3.2e-26, 0.01).tau_inv
    w0 = model.omega_ref
    ratios = []
    for half in (2e14, 4e14, 7.8e14):
        res = bw.tau_sp_wg_numeric(model, 0.01, omega_window=(w0 - half, w0 + half))
        assert res.converged
        ratios.append(res.tau_inv / ana)
    assert ratios == sorted(ratios)  # expanding bounds recover the tail
    assert ratios[-1] == pytest.approx(1.0, abs=0.01)


def test_quadrature_approaches_analytic_st():
    model = make_pure_beta2_model(5.5e-26, band="G")
    ana = bw.tau_st_wg_analytic(5.5e-26, 0.01).tau_inv
    w0 = model.omega_ref
    res = bw.tau_st_wg_numeric(model, 0.01, omega_window=(w0 - 7.8e14, w0 + 7.8e14))
    assert res.converged
    assert res.tau_inv == pytest.approx(ana, rel=0.01)


def test_monte_carlo_agrees_with_quadrature_sp():
    model = make_pure_beta2_model(3.2e-26)
    w0 = model.omega_ref
    window = (w0 - 6e14, w0 + 6e14)
    quad = bw.tau_sp_wg_numeric(model, 0.01, omega_window=window).tau_inv
    mc, sigma = bw.mc_tau_sp_wg(model, 0.01, n_samples=400_000,
                                omega_window=window, seed=11)
    assert abs(mc - quad) <= max(0.02 * quad, 3 * sigma)


def test_monte_carlo_agrees_with_quadrature_st():
    model = make_pure_beta2_model(5.5e-26, band="G")
    w0 = model.omega_ref
    window = (w0 - 6e14, w0 + 6e14)
    quad = bw.tau_st_wg_numeric(model, 0.01, omega_window=window).tau_inv
    mc, sigma = bw.mc_tau_st_wg(model, 0.01, n_samples=400_000,
                                omega_window=window, seed=5)
    assert abs(mc - quad) <= max(0.02 * quad, 3 * sigma)


def test_monte_carlo_deterministic_per_seed():
    model = make_pure_beta2_model(3.2e-26)
    a = bw.mc_tau_sp_wg(model, 0.01, n_samples=20_000, seed=1)
    b = bw.mc_tau_sp_wg(model, 0.01, n_samples=20_000, seed=1)
    assert a == b


def test_mismatch_offset_changes_bandwidth():
    # an offset whose sign the dispersion term can never cancel suppresses
    # the integrand everywhere and shrinks the bandwidth
    model = make_pure_beta2_model(3.2e-26)
    base = bw.tau_sp_wg_numeric(model, 0.01).tau_inv
    suppressed = bw.tau_sp_wg_numeric(model, 0.01, upsilon=-40.0).tau_inv
    assert suppressed < base


def test_ring_closed_forms():
    g = 5.4756e7
    assert bw.tau_ring_sp_degenerate(g) == pytest.approx(g / math.sqrt(18), rel=1e-12)
    assert bw.tau_ring_st(g) == pytest.approx(g / 2, rel=1e-12)
    gs = 4.0e7
    on = bw.tau_ring_sp_nondegenerate(g, gs)
    assert on == pytest.approx(
        math.sqrt(0.5 * g**2 * gs / (2 * g + gs)), rel=1e-12
    )
    # detuning can only reduce the bandwidth
    assert bw.tau_ring_sp_degenerate(g, delta=3 * g) < bw.tau_ring_sp_degenerate(g)


def test_vacuum_power_geometric_mean():
    tau_inv = 2.9e13
    w = 1.0951e15
    assert bw.vacuum_power(tau_inv, [w, w, w]) == pytest.approx(
        HBAR * w * tau_inv, rel=1e-12
    )
    mixed = bw.vacuum_power(tau_inv, [w, w, 8 * w])
    assert mixed == pytest.approx(HBAR * 2 * w * tau_inv, rel=1e-12)


def test_effective_vacuum_power_on_resonance():
    gg, gs, ws = 6.2e7, 4.1e7, 8.19e14
    expected = HBAR * ws * gg * gs / (2 * gg + gs)
    assert bw.effective_vacuum_power(gg, gs, ws) == pytest.approx(expected, rel=1e-12)


def test_sinc_small_argument_series():
    assert bw.sinc(0.0) == 1.0
    assert bw.sinc(1e-9) == pytest.approx(1.0, abs=1e-15)
    assert bw.sinc(math.pi) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1e14, 1e14), st.floats(-1e14, 1e14))
def test_rotation_is_an_isometry_on_the_zero_sum_plane(om1, om2):
    d1, d2, d3 = bw.detunings_from_rotated(om1, om2)
    scale = abs(om1) + abs(om2) + 1.0
    assert abs(d1 + d2 + d3) <= 1e-9 * scale
    assert d1**2 + d2**2 + d3**2 == pytest.approx(
        om1**2 + om2**2, rel=1e-9, abs=1e-9 * scale**2
    )
    r1, r2 = bw.rotated_from_detunings(d1, d2)
    assert abs(r1 - om1) <= 1e-9 * scale
    assert abs(r2 - om2) <= 1e-9 * scale
