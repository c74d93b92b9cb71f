"""Bundled sample device: a synthetic dispersion dataset plus the waveguide
and ring parameter sets used throughout the tests and example configs.

The effective-index tables are generated from low-order polynomials in
wavelength whose coefficients are solved from physical targets (phase index,
group index, and group-velocity dispersion at calibration wavelengths), so
the dataset is fully reproducible from the numbers below:

* band F (fundamental, 1.1-2.35 um): n_g = 2.1 and beta2 = 3.2e-26 s^2/m at
  1.72 um, beta2 = 5.5e-26 s^2/m at 1.52 um;
* band P (third harmonic, 0.48-0.68 um): phase matched to F at
  lambda_F = 1.72 um (k_P = 3 k_F = 1.97e7 1/m), n_g = 2.3,
  beta2 = 1.0e-25 s^2/m.

The triplet bands G, S, and G-bar reuse the fundamental table with shifted
reference wavelengths.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .constants import C
from .dispersion import DispersionModel, IndexTable, build_model
from .modeoverlap import NonlinearParameterSet
from .phasematch import (
    FUNDAMENTAL,
    GBAR,
    GENERATED,
    PUMP,
    SEED,
    RingResonance,
    RingSpec,
    WaveguideSpec,
)
from .units import wavelength_to_omega

# calibration targets
LAMBDA_F = 1.72e-6
LAMBDA_G = 1.52e-6
LAMBDA_S = 2.30e-6
LAMBDA_P = LAMBDA_F / 3.0
K_MATCH = 1.97e7  # k_P = 3 k_F at the phase-matched point, 1/m
NG_F = 2.1
NG_P = 2.3
BETA2_F = 3.2e-26
BETA2_G = 5.5e-26
BETA2_P = 1.0e-25

GAMMA_SPM = 4.3  # 1/(W m)
GAMMA_XPM = 0.8
GAMMA_TOPDC = 0.19

SAMPLE_GAMMAS = NonlinearParameterSet.from_values(GAMMA_SPM, GAMMA_XPM, GAMMA_TOPDC)

Q_HIGH = 1e7  # F, G, S, G-bar resonances
Q_PUMP = 1e5  # higher-order pump mode
RING_CIRCUMFERENCE = 750e-6
ESCAPE_EFFICIENCY = 0.5


def _d2n_from_beta2(beta2: float, lam: float) -> float:
    """Invert beta2 = lambda^3 / (2 pi c^2) * d2n/dlambda2."""
    return 2.0 * math.pi * C**2 * beta2 / lam**3


def _index_polynomial(lam0, n0, ng, d2n, d3n=0.0):
    """Coefficients (n0, n1, n2, n3) of n(lam) = sum n_j (lam-lam0)^j / j!."""
    n1 = (n0 - ng) / lam0  # from n_g = n - lam * dn/dlam
    return n0, n1, d2n, d3n


def _eval_poly(lam, lam0, coeffs):
    d = lam - lam0
    n0, n1, n2, n3 = coeffs
    return n0 + n1 * d + n2 * d**2 / 2.0 + n3 * d**3 / 6.0


def fundamental_coefficients():
    n0 = K_MATCH / 3.0 * LAMBDA_F / (2.0 * math.pi)
    a = _d2n_from_beta2(BETA2_F, LAMBDA_F)
    # cubic term set so the curvature reaches the pair-band target at 1.52 um
    a_g = _d2n_from_beta2(BETA2_G, LAMBDA_G)
    b = (a_g - a) / (LAMBDA_G - LAMBDA_F)
    return _index_polynomial(LAMBDA_F, n0, NG_F, a, b)


def pump_coefficients():
    n0 = K_MATCH * LAMBDA_P / (2.0 * math.pi)  # equals the fundamental n0
    return _index_polynomial(LAMBDA_P, n0, NG_P, _d2n_from_beta2(BETA2_P, LAMBDA_P))


def fundamental_index_table(n_points: int = 141) -> IndexTable:
    lam = np.linspace(1.1e-6, 2.35e-6, n_points)
    n = _eval_poly(lam, LAMBDA_F, fundamental_coefficients())
    return IndexTable("F", lam, n, source="synthetic sample dataset")


def pump_index_table(n_points: int = 81) -> IndexTable:
    lam = np.linspace(0.48e-6, 0.68e-6, n_points)
    n = _eval_poly(lam, LAMBDA_P, pump_coefficients())
    return IndexTable("P", lam, n, source="synthetic sample dataset")


def write_sample_tables(directory: str | Path) -> list[Path]:
    """Write the two index tables as CSV files and return their paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for table in (fundamental_index_table(), pump_index_table()):
        path = directory / f"{table.band_label}.csv"
        with open(path, "w") as fh:
            fh.write(f"# band: {table.band_label}\n")
            fh.write(f"# {table.source}\n")
            fh.write("wavelength_um,n_eff\n")
            for lam, n in zip(table.wavelengths_m, table.n_eff):
                fh.write(f"{lam * 1e6:.9f},{n:.12f}\n")
        paths.append(path)
    return paths


def sample_models() -> dict[str, DispersionModel]:
    """Dispersion models per band, referenced at the sample wavelengths."""
    fund = fundamental_index_table()
    pump = pump_index_table()
    base = build_model(fund, reference_wavelength_m=LAMBDA_F)
    omega_p = 3.0 * wavelength_to_omega(LAMBDA_F)
    omega_gbar = omega_p - 2.0 * wavelength_to_omega(LAMBDA_S)
    return {
        FUNDAMENTAL: base,
        GENERATED: base.with_reference(wavelength_to_omega(LAMBDA_G)),
        SEED: base.with_reference(wavelength_to_omega(LAMBDA_S)),
        GBAR: base.with_reference(omega_gbar),
        PUMP: build_model(pump, reference_wavelength_m=LAMBDA_P),
    }


def sample_band_centers() -> dict[str, float]:
    omega_f = wavelength_to_omega(LAMBDA_F)
    omega_p = 3.0 * omega_f
    omega_s = wavelength_to_omega(LAMBDA_S)
    return {
        FUNDAMENTAL: omega_f,
        PUMP: omega_p,
        GENERATED: wavelength_to_omega(LAMBDA_G),
        SEED: omega_s,
        GBAR: omega_p - 2.0 * omega_s,
    }


def sample_waveguide(length: float = 0.01) -> WaveguideSpec:
    return WaveguideSpec(
        length=length,
        band_centers=sample_band_centers(),
        gammas=SAMPLE_GAMMAS,
        models=sample_models(),
    )


def sample_ring(circumference: float = RING_CIRCUMFERENCE) -> RingSpec:
    models = sample_models()
    centers = sample_band_centers()
    qs = {FUNDAMENTAL: Q_HIGH, GENERATED: Q_HIGH, SEED: Q_HIGH, GBAR: Q_HIGH, PUMP: Q_PUMP}
    resonances = {}
    for band, omega in centers.items():
        model = models[band]
        resonances[band] = RingResonance(
            omega=omega,
            kappa=model.wavenumber(omega),
            q_loaded=qs[band],
            group_velocity=model.group_quantities(omega).v_g,
            escape_efficiency=ESCAPE_EFFICIENCY,
        )
    return RingSpec(
        circumference=circumference, resonances=resonances, gammas=SAMPLE_GAMMAS
    )
