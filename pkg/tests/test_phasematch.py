import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topdc import sampledata
from topdc.phasematch import (
    NoRootError,
    circulating_power,
    find_phase_matched,
    hot_resonances,
    mismatch,
    optimal_pump_detuning,
    self_consistent_pump,
    shifted_wavenumbers_wg,
)
from topdc.units import wavelength_to_omega


def test_degenerate_phase_match_root(sample_wg):
    result = find_phase_matched(sample_wg.models, "fff", (1.4e-6, 2.0e-6))
    assert result.wavelengths["F"] == pytest.approx(1.72e-6, rel=1e-6)
    assert result.wavelengths["P"] == pytest.approx(1.72e-6 / 3, rel=1e-6)
    assert abs(result.residual) <= 1e-3
    assert not result.degenerate


def test_seeded_phase_match_root(sample_wg):
    result = find_phase_matched(
        sample_wg.models, "gg_s", (1.4e-6, 1.9e-6), fixed={"S": 2.3e-6}
    )
    lam_g = result.wavelengths["G"]
    assert 1.45e-6 < lam_g < 1.6e-6
    assert abs(result.residual) <= 1e-3
    # energy conservation: 1/lam_P = 2/lam_G + 1/lam_S
    lhs = 1 / result.wavelengths["P"]
    assert lhs == pytest.approx(2 / lam_g + 1 / 2.3e-6, rel=1e-12)


def test_doubly_seeded_output_from_energy_conservation(sample_wg):
    result = find_phase_matched(
        sample_wg.models, "dst", (0, 0), fixed={"P": 1.72e-6 / 3, "S": 2.3e-6}
    )
    w = wavelength_to_omega
    assert w(result.wavelengths["GBAR"]) == pytest.approx(
        w(1.72e-6 / 3) - 2 * w(2.3e-6), rel=1e-12
    )


def test_no_root_outside_data(sample_wg):
    with pytest.raises(NoRootError):
        find_phase_matched(sample_wg.models, "fff", (0.1e-6, 0.2e-6))


def test_spm_xpm_wavenumber_shifts(sample_wg):
    cold = shifted_wavenumbers_wg(sample_wg, 0.0)
    hot = shifted_wavenumbers_wg(sample_wg, 0.1)
    assert hot["P"] - cold["P"] == pytest.approx(4.3 * 0.1, rel=1e-9)
    assert hot["F"] - cold["F"] == pytest.approx(2 * 0.8 * 0.1, rel=1e-9)
    # shift is tiny compared to the bare wavenumber
    assert (hot["P"] - cold["P"]) / cold["P"] < 1e-7


def test_mismatch_signs():
    kbar = {"P": 10.0, "F": 3.0, "S": 2.0, "G": 3.5, "GBAR": 5.0}
    assert mismatch("fff", kbar) == pytest.approx(10 - 9)
    assert mismatch("gg_s", kbar) == pytest.approx(10 - 2 - 7)
    assert mismatch("dst", kbar) == pytest.approx(10 - 4 - 5)


def test_on_resonance_buildup_closed_form(sample_ring):
    res = sample_ring.resonances["P"]
    expected = (
        4 * res.group_velocity * res.escape_efficiency * res.q_loaded
        / (sample_ring.circumference * res.omega)
    )
    assert circulating_power(sample_ring, "P", 1.0) == pytest.approx(
        expected, rel=1e-12
    )


def test_sample_ring_pump_buildup(sample_ring):
    assert circulating_power(sample_ring, "P", 0.1) == pytest.approx(1.05, rel=0.02)


def test_self_consistent_pump_is_a_fixed_point(sample_ring):
    state = self_consistent_pump(sample_ring, 0.1)
    again = circulating_power(sample_ring, "P", 0.1, state.detuning)
    assert state.circulating_power == pytest.approx(again, rel=1e-9)
    assert state.hot_omegas["P"] < sample_ring.resonances["P"].omega


def test_zero_pump_state(sample_ring):
    state = self_consistent_pump(sample_ring, 0.0)
    assert state.circulating_power == 0.0


def test_hot_resonances_shift_down_linearly(sample_ring):
    h1 = hot_resonances(sample_ring, 0.5)
    h2 = hot_resonances(sample_ring, 1.0)
    for band in h1:
        cold = sample_ring.resonances[band].omega
        assert cold - h2[band] == pytest.approx(2 * (cold - h1[band]), rel=1e-9)


def test_optimal_pump_detuning_scale(sample_ring):
    state = self_consistent_pump(sample_ring, 0.1)
    delta = optimal_pump_detuning(sample_ring, "fff", state.circulating_power)
    mhz = abs(delta) / (2 * math.pi * 1e6)
    assert 10 < mhz < 60  # tens of MHz for the sample ring at 100 mW


@settings(max_examples=15, deadline=None)
@given(st.floats(min_value=1e-3, max_value=0.5))
def test_buildup_linear_in_power(power):
    ring = sampledata.sample_ring()
    unit = circulating_power(ring, "P", 1.0)
    assert circulating_power(ring, "P", power) == pytest.approx(
        power * unit, rel=1e-12
    )
