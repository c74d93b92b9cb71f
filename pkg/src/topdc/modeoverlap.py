"""Mode overlaps: normalization constants, effective areas, nonlinear parameters.

The nonlinear strength of a four-mode process is condensed into a single
complex parameter

    gamma = 3 (w1 w2 w3 w4)^(1/4) chi3_bar exp(i*Phi) / (4 eps0 (n1 n2 n3 n4)^(1/2) c^2 A)

where the effective area A and phase Phi come from the transverse overlap of
the four mode profiles weighted by the chi3 distribution.  A is real and
positive by construction: the complex overlap's phase is split off into Phi.

Profiles are sampled on a common uniform 2-D grid; integrals use composite
Simpson rules.  All quantities are invariant under a common rescaling of the
field amplitudes (the normalization constants cancel).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.integrate import simpson

from .constants import C, EPS0


class OverlapError(Exception):
    pass


class GridMismatchError(OverlapError):
    pass


class VanishingOverlapError(OverlapError):
    """Overlap integral is (numerically) zero; the effective area diverges."""


@dataclass(frozen=True)
class ModeProfile:
    """Complex vectorial mode field on a uniform 2-D grid.

    ``e_field`` has shape (nx, ny, 3); intensity-only exports are not enough,
    the overlap integrals need the complex vector field.
    ``group_index_map`` may be a scalar when the local group index is taken
    uniform.
    """

    band_label: str
    dx: float
    dy: float
    e_field: np.ndarray
    index_map: np.ndarray
    group_index_map: np.ndarray | float
    omega: float

    def __post_init__(self):
        e = np.asarray(self.e_field, dtype=complex)
        n = np.asarray(self.index_map, dtype=float)
        object.__setattr__(self, "e_field", e)
        object.__setattr__(self, "index_map", n)
        if self.dx <= 0 or self.dy <= 0:
            raise OverlapError("grid spacings must be positive")
        if e.ndim != 3 or e.shape[2] != 3:
            raise OverlapError("e_field must have shape (nx, ny, 3)")
        nx, ny = e.shape[:2]
        if nx < 16 or ny < 16:
            raise OverlapError("grid must be at least 16x16")
        if n.shape != (nx, ny):
            raise OverlapError("index_map shape must match the field grid")
        if not np.any(e):
            raise OverlapError(f"band {self.band_label!r}: field is identically zero")
        if np.any(n < 1):
            raise OverlapError(f"band {self.band_label!r}: index_map must be >= 1")

    @property
    def shape(self) -> tuple[int, int]:
        return self.e_field.shape[:2]

    @classmethod
    def from_file(cls, path: str | Path) -> "ModeProfile":
        """Read the whitespace-separated mode-profile export format.

        Header lines: nx, ny, dx_um, dy_um, lambda_um, band.  Then nx*ny rows
        of ``x_idx y_idx Re(Ex) Im(Ex) Re(Ey) Im(Ey) Re(Ez) Im(Ez) n``.
        """
        path = Path(path)
        header: dict[str, str] = {}
        rows = []
        with open(path) as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) == 2 and not _is_number(parts[0]):
                    header[parts[0].lower()] = parts[1]
                    continue
                if len(parts) != 9:
                    raise OverlapError(f"{path}: malformed row {line!r}")
                rows.append([float(p) for p in parts])
        try:
            nx = int(header["nx"])
            ny = int(header["ny"])
            dx = float(header["dx_um"]) * 1e-6
            dy = float(header["dy_um"]) * 1e-6
            lam = float(header["lambda_um"]) * 1e-6
            band = header["band"]
        except KeyError as exc:
            raise OverlapError(f"{path}: missing header field {exc}") from None
        if len(rows) != nx * ny:
            raise OverlapError(f"{path}: expected {nx * ny} rows, got {len(rows)}")
        e = np.zeros((nx, ny, 3), dtype=complex)
        n = np.ones((nx, ny))
        for row in rows:
            i, j = int(row[0]), int(row[1])
            e[i, j, 0] = row[2] + 1j * row[3]
            e[i, j, 1] = row[4] + 1j * row[5]
            e[i, j, 2] = row[6] + 1j * row[7]
            n[i, j] = row[8]
        return cls(
            band_label=band,
            dx=dx,
            dy=dy,
            e_field=e,
            index_map=n,
            group_index_map=float(np.max(n)),
            omega=2.0 * math.pi * C / lam,
        )


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _simpson2d(values: np.ndarray, dx: float, dy: float):
    return simpson(simpson(values, dx=dy, axis=1), dx=dx, axis=0)


def normalization_constant(mode: ModeProfile, n_bar: float, v_bar: float) -> float:
    """N = sqrt( integral e.e (n/n_bar) / (v_g/v_bar) dx dy )."""
    e = mode.e_field
    dot = np.einsum("xyc,xyc->xy", e, e)
    n_ratio = mode.index_map / n_bar
    ng = np.asarray(mode.group_index_map, dtype=float)
    v_ratio = (C / ng) / v_bar  # local v_g over nominal
    integral = _simpson2d(dot * n_ratio / v_ratio, mode.dx, mode.dy)
    if abs(integral) == 0:
        raise OverlapError(f"band {mode.band_label!r}: zero-norm field")
    return float(np.sqrt(abs(integral)))


_PATTERNS = {"2-dagger": (True, True, False, False), "3-dagger": (True, True, True, False)}


def _overlap_integral(modes, conjugation, chi3_ratio):
    if conjugation not in _PATTERNS:
        raise OverlapError(f"unknown conjugation pattern {conjugation!r}")
    shape = modes[0].shape
    for m in modes[1:]:
        if m.shape != shape or m.dx != modes[0].dx or m.dy != modes[0].dy:
            raise GridMismatchError("all four modes must share one grid")
    fields = []
    for m, conj in zip(modes, _PATTERNS[conjugation]):
        fields.append(np.conj(m.e_field) if conj else m.e_field)
    ratio = np.asarray(chi3_ratio)
    if ratio.ndim in (4, 6):
        # full rank-4 tensor contraction, optionally space resolved
        sub = "ijkl" if ratio.ndim == 4 else "xyijkl"
        integrand = np.einsum(
            f"{sub},xyi,xyj,xyk,xyl->xy", ratio, *fields
        )
    else:
        # scalar chi3: all fields contracted on a shared polarization component
        integrand = ratio * np.einsum(
            "xyc,xyc,xyc,xyc->xy", *fields
        )
    value = _simpson2d(integrand, modes[0].dx, modes[0].dy)
    bound = _simpson2d(
        np.abs(ratio) * np.prod([np.linalg.norm(f, axis=2) for f in fields], axis=0),
        modes[0].dx,
        modes[0].dy,
    )
    return complex(value), float(abs(bound))


def effective_area_waveguide(
    modes,
    conjugation: str = "3-dagger",
    chi3_ratio=1.0,
    n_bars=None,
    v_bars=None,
) -> tuple[float, float]:
    """Effective area and phase from four mode profiles on one grid.

    ``chi3_ratio`` is chi3(x,y)/chi3_bar: a scalar, an (nx, ny) map, a
    (3,3,3,3) tensor, or an (nx, ny, 3,3,3,3) tensor field.  Returns
    (area_m2, phase_rad) with area real and positive; a vanishing overlap
    raises instead of returning an infinite area.
    """
    modes = list(modes)
    if len(modes) != 4:
        raise OverlapError("exactly four mode profiles are required")
    if n_bars is None:
        n_bars = [float(np.max(m.index_map)) for m in modes]
    if v_bars is None:
        v_bars = [C / float(np.mean(np.asarray(m.group_index_map))) for m in modes]
    value, bound = _overlap_integral(modes, conjugation, chi3_ratio)
    norms = [
        normalization_constant(m, nb, vb) for m, nb, vb in zip(modes, n_bars, v_bars)
    ]
    value /= math.prod(norms)
    bound /= math.prod(norms)
    if bound == 0 or abs(value) < 1e-10 * bound:
        raise VanishingOverlapError(
            "overlap integral vanishes; effective area is unbounded"
        )
    return 1.0 / abs(value), cmath.phase(value)


def effective_area_ring(
    modes,
    kappas,
    circumference: float,
    conjugation: str = "3-dagger",
    chi3_ratio=1.0,
    n_bars=None,
    v_bars=None,
) -> tuple[float, float]:
    """Ring effective area for azimuthally symmetric profiles.

    The azimuthal factor (1/L) * closed-loop integral of exp(i dkappa zeta)
    is analytic for profiles constant along the ring: it is 1 when the
    resonance wavenumbers balance (dkappa = 0) and exactly 0 for any other
    resonance combination.
    """
    kappas = list(kappas)
    if len(kappas) != 4:
        raise OverlapError("four resonance wavenumbers are required")
    if conjugation == "2-dagger":
        dkappa = kappas[0] + kappas[1] - kappas[2] - kappas[3]
    elif conjugation == "3-dagger":
        dkappa = kappas[0] + kappas[1] + kappas[2] - kappas[3]
    else:
        raise OverlapError(f"unknown conjugation pattern {conjugation!r}")
    cycles = dkappa * circumference / (2.0 * math.pi)
    if abs(cycles - round(cycles)) > 1e-6:
        raise OverlapError(
            "dkappa * circumference must be a multiple of 2*pi for ring resonances"
        )
    if round(cycles) != 0:
        raise VanishingOverlapError(
            "azimuthal orthogonality: nonzero resonance-order mismatch"
        )
    return effective_area_waveguide(modes, conjugation, chi3_ratio, n_bars, v_bars)


def gamma_general(
    omegas, n_bars, chi3_bar: float, area: float, phase: float = 0.0
) -> complex:
    """General four-mode nonlinear parameter, (W m)^-1, complex."""
    w1, w2, w3, w4 = omegas
    n1, n2, n3, n4 = n_bars
    if min(w1, w2, w3, w4, n1, n2, n3, n4, area) <= 0:
        raise ValueError("frequencies, indices and area must be positive")
    mag = (
        3.0
        * (w1 * w2 * w3 * w4) ** 0.25
        * chi3_bar
        / (4.0 * EPS0 * math.sqrt(n1 * n2 * n3 * n4) * C**2 * area)
    )
    return mag * cmath.exp(1j * phase)


def process_prefactor(process: str, **omega) -> float:
    """Frequency prefactor converting a base gamma into the process gamma.

    Processes (band frequencies as keyword arguments):
      spm                          -- 1
      xpm(omega_g, omega_p)        -- sqrt(wG/wP)
      fff(omega_f, omega_p)        -- (wF^3 wP)^(1/4) / wF
      gg_s(omega_p, omega_s)      -- (wP/wS)^(1/4)
      ggs(omega_g, omega_s, omega_p) -- (wG^2 wS wP)^(1/4) / (wG^2 wS)^(1/3)
      dst(omega_p, omega_gbar, omega_s) -- (wP wGbar / wS^2)^(1/4)
    """
    if process == "spm":
        return 1.0
    if process == "xpm":
        return math.sqrt(omega["omega_g"] / omega["omega_p"])
    if process == "fff":
        wf, wp = omega["omega_f"], omega["omega_p"]
        return (wf**3 * wp) ** 0.25 / wf
    if process == "gg_s":
        return (omega["omega_p"] / omega["omega_s"]) ** 0.25
    if process == "ggs":
        wg, ws, wp = omega["omega_g"], omega["omega_s"], omega["omega_p"]
        return (wg**2 * ws * wp) ** 0.25 / (wg**2 * ws) ** (1.0 / 3.0)
    if process == "dst":
        wp, wgb, ws = omega["omega_p"], omega["omega_gbar"], omega["omega_s"]
        return (wp * wgb / ws**2) ** 0.25
    raise ValueError(f"unknown process variant {process!r}")


def gamma_process(base_gamma: complex, process: str, **omega) -> complex:
    return base_gamma * process_prefactor(process, **omega)


@dataclass(frozen=True)
class NonlinearParameterSet:
    """All per-process nonlinear parameters, stored complex.

    Rate formulas consume magnitudes only.  When no mode-solver export is at
    hand the gammas can be supplied directly (``from_values``); the effective
    areas and chi3_bar are then left as None.
    """

    gamma_spm: complex
    gamma_xpm: complex
    gamma_fff: complex
    gamma_ggs: complex
    gamma_gg_s: complex
    gamma_dst: complex
    chi3_bar: float | None = None
    n_bars: dict | None = None
    areas: dict | None = None
    phases: dict | None = None

    def __post_init__(self):
        for name in ("gamma_fff", "gamma_ggs", "gamma_gg_s", "gamma_dst"):
            g = getattr(self, name)
            if not (abs(g) > 0 and math.isfinite(abs(g))):
                raise ValueError(f"{name} must be finite and nonzero")
        if self.areas is not None and any(a <= 0 for a in self.areas.values()):
            raise ValueError("effective areas must be positive")

    @classmethod
    def from_values(
        cls, gamma_spm: float, gamma_xpm: float, gamma_topdc: float
    ) -> "NonlinearParameterSet":
        """Common shortcut: one magnitude for all down-conversion variants."""
        return cls(
            gamma_spm=complex(gamma_spm),
            gamma_xpm=complex(gamma_xpm),
            gamma_fff=complex(gamma_topdc),
            gamma_ggs=complex(gamma_topdc),
            gamma_gg_s=complex(gamma_topdc),
            gamma_dst=complex(gamma_topdc),
        )
