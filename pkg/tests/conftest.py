import math

import numpy as np
import pytest

from topdc import sampledata
from topdc.constants import C
from topdc.dispersion import IndexTable, build_model
from topdc.modeoverlap import ModeProfile


@pytest.fixture(scope="session")
def sample_wg():
    return sampledata.sample_waveguide()


@pytest.fixture(scope="session")
def sample_ring():
    return sampledata.sample_ring()


@pytest.fixture(scope="session")
def sample_models():
    return sampledata.sample_models()


def make_pure_beta2_model(beta2, lambda_ref=1.72e-6, n_g=2.1, k_ref=1.97e7 / 3,
                          lam_lo=0.5e-6, lam_hi=6.0e-6, n_points=1200,
                          band="F"):
    """Index table whose k(omega) is exactly quadratic around the reference."""
    w0 = 2 * math.pi * C / lambda_ref
    v = C / n_g
    lam = np.linspace(lam_lo, lam_hi, n_points)
    w = 2 * math.pi * C / lam
    k = k_ref + (w - w0) / v + 0.5 * beta2 * (w - w0) ** 2
    table = IndexTable(band, lam, k * C / w)
    return build_model(table, reference_wavelength_m=lambda_ref)


def make_gaussian_mode(width=0.8e-6, n_grid=64, extent=4e-6, band="F",
                       omega=1.095e15, amplitude=1.0, order=(0, 0)):
    """Hermite-Gauss mode profile on a square grid (order (0,0) = Gaussian)."""
    x = np.linspace(-extent, extent, n_grid)
    X, Y = np.meshgrid(x, x, indexing="ij")
    envelope = np.exp(-(X**2 + Y**2) / (2 * width**2))
    hx = np.polynomial.hermite.hermval(X / width, [0] * order[0] + [1])
    hy = np.polynomial.hermite.hermval(Y / width, [0] * order[1] + [1])
    e = np.zeros((n_grid, n_grid, 3), dtype=complex)
    e[:, :, 0] = amplitude * hx * hy * envelope
    return ModeProfile(
        band_label=band,
        dx=x[1] - x[0],
        dy=x[1] - x[0],
        e_field=e,
        index_map=np.full((n_grid, n_grid), 2.0),
        group_index_map=2.1,
        omega=omega,
    )
