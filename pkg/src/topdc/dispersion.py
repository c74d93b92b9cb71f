"""Waveguide dispersion from tabulated effective indices.

Each spatial mode band is described by a table of n_eff(lambda) samples
exported from a mode solver.  From it we build a smooth interpolant for the
propagation constant k(omega) = n_eff(omega) * omega / c and expose the group
velocity and the dispersion coefficients beta2..beta4 (the 2nd..4th
frequency derivatives of k).

The interpolant is a quintic spline through the sample points, so k is C^4
and the fourth derivative needed for beta4 is continuous.  Requests outside
the sampled window raise; beta4-level quantities are meaningless when
extrapolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy.interpolate import InterpolatedUnivariateSpline

from .constants import C

_MIN_SAMPLES = 8  # needed for stable 4th-derivative estimates


class DispersionError(Exception):
    """Base class for dispersion-data problems."""


class ExtrapolationError(DispersionError):
    """Frequency outside the fitted window."""


@dataclass(frozen=True)
class IndexTable:
    """Sampled effective index versus wavelength for one mode band."""

    band_label: str
    wavelengths_m: np.ndarray
    n_eff: np.ndarray
    source: str = ""

    def __post_init__(self):
        wl = np.asarray(self.wavelengths_m, dtype=float)
        n = np.asarray(self.n_eff, dtype=float)
        object.__setattr__(self, "wavelengths_m", wl)
        object.__setattr__(self, "n_eff", n)
        if wl.ndim != 1 or n.shape != wl.shape:
            raise DispersionError("wavelengths and n_eff must be 1-D and equal length")
        if wl.size < _MIN_SAMPLES:
            raise DispersionError(
                f"band {self.band_label!r}: need at least {_MIN_SAMPLES} samples, "
                f"got {wl.size}"
            )
        if np.any(wl <= 0):
            raise DispersionError(f"band {self.band_label!r}: wavelengths must be > 0")
        if np.any(np.diff(wl) <= 0):
            raise DispersionError(
                f"band {self.band_label!r}: wavelengths must be strictly increasing"
            )
        if np.any(n <= 0):
            raise DispersionError(f"band {self.band_label!r}: n_eff must be > 0")

    @classmethod
    def from_csv(cls, path: str | Path) -> "IndexTable":
        """Read a `wavelength_um,n_eff` CSV.

        Comment lines start with ``#``; a ``# band: NAME`` comment sets the
        band label, otherwise the file stem is used.
        """
        path = Path(path)
        band = path.stem
        wavelengths = []
        indices = []
        with open(path) as fh:
            for raw in fh:
                line = raw.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    body = line[1:].strip()
                    if body.lower().startswith("band:"):
                        band = body.split(":", 1)[1].strip()
                    continue
                if line.lower().startswith("wavelength_um"):
                    continue
                parts = line.split(",")
                if len(parts) != 2:
                    raise DispersionError(f"{path}: malformed row {line!r}")
                wavelengths.append(float(parts[0]) * 1e-6)
                indices.append(float(parts[1]))
        return cls(
            band_label=band,
            wavelengths_m=np.array(wavelengths),
            n_eff=np.array(indices),
            source=str(path),
        )


@dataclass(frozen=True)
class GroupQuantities:
    v_g: float  # m/s
    n_g: float
    beta2: float  # s^2/m
    beta3: float  # s^3/m
    beta4: float  # s^4/m


@dataclass(frozen=True)
class DispersionModel:
    """Smooth k(omega) for one band, immutable after construction."""

    band_label: str
    omega_min: float
    omega_max: float
    omega_ref: float
    k_ref: float
    _spline: InterpolatedUnivariateSpline = field(repr=False, compare=False)

    def _check_range(self, omega: float) -> None:
        tol = 1e-9 * (self.omega_max - self.omega_min)
        if omega < self.omega_min - tol or omega > self.omega_max + tol:
            raise ExtrapolationError(
                f"band {self.band_label!r}: omega {omega:.6e} rad/s outside fitted "
                f"range [{self.omega_min:.6e}, {self.omega_max:.6e}]"
            )

    def wavenumber(self, omega: float) -> float:
        self._check_range(omega)
        return float(self._spline(omega))

    def group_quantities(self, omega: float) -> GroupQuantities:
        self._check_range(omega)
        d = self._spline.derivatives(omega)
        k1 = d[1]
        if k1 <= 0 or not math.isfinite(k1):
            raise DispersionError(
                f"band {self.band_label!r}: non-physical group velocity at "
                f"omega={omega:.6e}"
            )
        v_g = 1.0 / k1
        return GroupQuantities(
            v_g=v_g, n_g=C / v_g, beta2=float(d[2]), beta3=float(d[3]), beta4=float(d[4])
        )

    def taylor_mismatch(self, delta_omega: float, order: int = 4) -> float:
        """Truncated Taylor series of k(omega_ref + dw) - k_ref.

        The linear term dw/v is included; in the symmetric sums formed by the
        bandwidth integrands the linear parts cancel for zero-sum detunings.
        """
        if order < 1 or order > 4:
            raise ValueError("order must be between 1 and 4")
        self._check_range(self.omega_ref + delta_omega)
        d = self._spline.derivatives(self.omega_ref)
        total = 0.0
        for n in range(1, order + 1):
            total += d[n] * delta_omega**n / math.factorial(n)
        return total

    def delta_exact(self, delta_omega) -> np.ndarray | float:
        """k(omega_ref + dw) - k_ref from the full interpolant (vectorized)."""
        omega = self.omega_ref + np.asarray(delta_omega, dtype=float)
        lo, hi = omega.min(), omega.max()
        self._check_range(float(lo))
        self._check_range(float(hi))
        out = self._spline(omega) - self.k_ref
        return out if out.ndim else float(out)

    def with_reference(self, omega_ref: float) -> "DispersionModel":
        self._check_range(omega_ref)
        return replace(self, omega_ref=omega_ref, k_ref=float(self._spline(omega_ref)))


def build_model(
    table: IndexTable, reference_wavelength_m: float | None = None
) -> DispersionModel:
    """Fit a quintic spline to k(omega) = n_eff * omega / c.

    The spline interpolates the samples exactly (reproduces the table to
    better than 1e-9 relative), and its derivatives supply v_g and beta2..4.
    """
    omega = 2.0 * math.pi * C / table.wavelengths_m[::-1]
    k = table.n_eff[::-1] * omega / C
    spline = InterpolatedUnivariateSpline(omega, k, k=5, ext="raise")
    if reference_wavelength_m is not None:
        omega_ref = 2.0 * math.pi * C / reference_wavelength_m
    else:
        omega_ref = 0.5 * (omega[0] + omega[-1])
    if not omega[0] <= omega_ref <= omega[-1]:
        raise ExtrapolationError(
            f"band {table.band_label!r}: reference wavelength outside sampled range"
        )
    return DispersionModel(
        band_label=table.band_label,
        omega_min=float(omega[0]),
        omega_max=float(omega[-1]),
        omega_ref=float(omega_ref),
        k_ref=float(spline(omega_ref)),
        _spline=spline,
    )


# thin functional aliases mirroring the operation names


def wavenumber(model: DispersionModel, omega: float) -> float:
    return model.wavenumber(omega)


def group_quantities(model: DispersionModel, omega: float) -> GroupQuantities:
    return model.group_quantities(omega)


def taylor_mismatch(model: DispersionModel, delta_omega: float, order: int = 4) -> float:
    return model.taylor_mismatch(delta_omega, order)
