import math

import numpy as np
import pytest

from conftest import make_pure_beta2_model
from topdc import sampledata
from topdc.constants import C
from topdc.dispersion import (
    DispersionError,
    ExtrapolationError,
    IndexTable,
    build_model,
)
from topdc.units import wavelength_to_omega


def test_spline_reproduces_samples():
    table = sampledata.fundamental_index_table()
    model = build_model(table)
    for lam, n in zip(table.wavelengths_m[::10], table.n_eff[::10]):
        omega = 2 * math.pi * C / lam
        k = n * omega / C
        assert model.wavenumber(omega) == pytest.approx(k, rel=1e-9)


def test_group_quantities_on_quadratic_band():
    beta2 = 3.2e-26
    model = make_pure_beta2_model(beta2)
    gq = model.group_quantities(model.omega_ref)
    assert gq.n_g == pytest.approx(2.1, rel=1e-6)
    assert gq.beta2 == pytest.approx(beta2, rel=1e-4)
    assert abs(gq.beta3) < 1e-8 * abs(beta2) / 1e12  # quadratic band: no beta3
    off = model.group_quantities(model.omega_ref + 2e14)
    assert off.beta2 == pytest.approx(beta2, rel=1e-4)


def test_sample_dataset_hits_calibration_targets():
    models = sampledata.sample_models()
    f = models["F"].group_quantities(wavelength_to_omega(1.72e-6))
    assert f.n_g == pytest.approx(2.1, rel=1e-6)
    assert f.beta2 == pytest.approx(3.2e-26, rel=1e-4)
    g = models["G"].group_quantities(wavelength_to_omega(1.52e-6))
    assert g.beta2 == pytest.approx(5.5e-26, rel=1e-4)
    p = models["P"].group_quantities(wavelength_to_omega(1.72e-6 / 3))
    assert p.n_g == pytest.approx(2.3, rel=1e-6)
    assert p.beta2 == pytest.approx(1e-25, rel=1e-4)


def test_taylor_mismatch_matches_exact_difference():
    model = make_pure_beta2_model(3.2e-26)
    for dw in (1e13, -5e13, 2e14):
        assert model.taylor_mismatch(dw, order=2) == pytest.approx(
            model.delta_exact(dw), rel=1e-6
        )


def test_delta_exact_vectorized():
    model = make_pure_beta2_model(3.2e-26)
    dw = np.array([-1e13, 0.0, 1e13])
    out = model.delta_exact(dw)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(0.0, abs=1e-9)


def test_extrapolation_raises():
    model = make_pure_beta2_model(3.2e-26, lam_lo=1.0e-6, lam_hi=3.0e-6)
    with pytest.raises(ExtrapolationError):
        model.wavenumber(model.omega_max * 1.5)


def test_with_reference_moves_expansion_point():
    model = make_pure_beta2_model(3.2e-26)
    shifted = model.with_reference(model.omega_ref + 1e14)
    assert shifted.k_ref == pytest.approx(
        model.wavenumber(model.omega_ref + 1e14), rel=1e-12
    )


def test_index_table_validation():
    lam = np.linspace(1e-6, 2e-6, 20)
    with pytest.raises(DispersionError):
        IndexTable("X", lam[::-1], np.full(20, 2.0))  # decreasing
    with pytest.raises(DispersionError):
        IndexTable("X", lam[:5], np.full(5, 2.0))  # too few samples
    with pytest.raises(DispersionError):
        IndexTable("X", lam, np.full(20, -1.0))  # negative index


def test_csv_roundtrip(tmp_path):
    paths = sampledata.write_sample_tables(tmp_path)
    table = IndexTable.from_csv(paths[0])
    ref = sampledata.fundamental_index_table()
    assert table.band_label == ref.band_label
    np.testing.assert_allclose(table.wavelengths_m, ref.wavelengths_m, rtol=1e-8)
    np.testing.assert_allclose(table.n_eff, ref.n_eff, rtol=1e-10)
