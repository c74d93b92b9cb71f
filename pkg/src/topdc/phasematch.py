"""Phase matching, pump-induced shifts, and ring pump buildup.

A strong pump shifts wavenumbers (waveguide) or resonance frequencies (ring)
through self- and cross-phase modulation.  This module evaluates the shifted
("hot") quantities, searches for phase-matched wavelengths, and solves the
steady-state circulating pump power in a ring, where the resonance shift
itself depends on the circulating power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .dispersion import DispersionModel, ExtrapolationError
from .modeoverlap import NonlinearParameterSet
from .units import omega_to_wavelength, wavelength_to_omega

PUMP = "P"
FUNDAMENTAL = "F"
GENERATED = "G"
SEED = "S"
GBAR = "GBAR"

DEFAULT_ESCAPE_EFFICIENCY = 0.5  # critical coupling; flagged in reports


class PhaseMatchError(Exception):
    pass


class NoRootError(PhaseMatchError):
    pass


class BistabilityError(PhaseMatchError):
    """The pump steady state did not converge to a unique fixed point."""

    def __init__(self, message, iterates=None):
        super().__init__(message)
        self.iterates = iterates or []


@dataclass(frozen=True)
class WaveguideSpec:
    """Straight nonlinear waveguide of length L."""

    length: float
    band_centers: dict[str, float]  # band label -> omega (rad/s)
    gammas: NonlinearParameterSet
    models: dict[str, DispersionModel] | None = None

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError("waveguide length must be positive")


@dataclass(frozen=True)
class RingResonance:
    """One ring resonance: loaded linewidth is derived from Q."""

    omega: float
    kappa: float
    q_loaded: float
    group_velocity: float
    escape_efficiency: float = DEFAULT_ESCAPE_EFFICIENCY

    def __post_init__(self):
        if self.omega <= 0 or self.q_loaded <= 0 or self.group_velocity <= 0:
            raise ValueError("omega, Q, and group velocity must be positive")
        if not 0.0 <= self.escape_efficiency <= 1.0:
            raise ValueError("escape efficiency must lie in [0, 1]")

    @property
    def linewidth(self) -> float:
        """Loaded half-linewidth Gamma-bar = omega / (2 Q), rad/s."""
        return self.omega / (2.0 * self.q_loaded)


@dataclass(frozen=True)
class RingSpec:
    circumference: float
    resonances: dict[str, RingResonance]
    gammas: NonlinearParameterSet

    def __post_init__(self):
        if self.circumference <= 0:
            raise ValueError("ring circumference must be positive")


@dataclass(frozen=True)
class PumpState:
    channel_power: float
    circulating_power: float
    detuning: float  # laser detuning from the hot pump resonance, rad/s
    hot_omegas: dict[str, float] = field(default_factory=dict)
    hot_kappas: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.channel_power < 0 or self.circulating_power < 0:
            raise ValueError("powers must be nonnegative")
        if self.channel_power == 0 and self.circulating_power != 0:
            raise ValueError("no circulating power without channel power")


def shifted_wavenumbers_wg(
    spec: WaveguideSpec, pump_power: float, omegas: dict[str, float] | None = None
) -> dict[str, float]:
    """k-bar per band: pump shifts by gamma_SPM*P, others by 2*gamma_XPM*P."""
    if pump_power < 0:
        raise ValueError("pump power must be nonnegative")
    if spec.models is None:
        raise PhaseMatchError("waveguide spec carries no dispersion models")
    if omegas is None:
        omegas = spec.band_centers
    g_spm = abs(spec.gammas.gamma_spm)
    g_xpm = abs(spec.gammas.gamma_xpm)
    out = {}
    for band, omega in omegas.items():
        k = spec.models[band].wavenumber(omega)
        shift = g_spm * pump_power if band == PUMP else 2.0 * g_xpm * pump_power
        out[band] = k + shift
    return out


def mismatch(process: str, kbar: dict[str, float], components=None) -> float:
    """Signed wavenumber mismatch at band centers or supplied components.

    fff:  kP - k1 - k2 - k3      (components default to 3x the F band)
    gg_s: kP - kS - k1 - k2      (components default to 2x the G band)
    dst:  kP - 2 kS - kGbar
    """
    try:
        if process == "fff":
            k123 = components if components is not None else (kbar[FUNDAMENTAL],) * 3
            return kbar[PUMP] - sum(k123)
        if process in ("gg_s", "ggs"):
            k12 = components if components is not None else (kbar[GENERATED],) * 2
            return kbar[PUMP] - kbar[SEED] - sum(k12)
        if process == "dst":
            kg = components if components is not None else kbar[GBAR]
            return kbar[PUMP] - 2.0 * kbar[SEED] - kg
    except KeyError as exc:
        raise PhaseMatchError(f"band {exc} missing for process {process!r}") from None
    raise ValueError(f"unknown process variant {process!r}")


@dataclass(frozen=True)
class PhaseMatchResult:
    wavelengths: dict[str, float]  # meters per band
    residual: float  # rad/m at the solution
    degenerate: bool = False  # mismatch ~ 0 over the whole bracket


def find_phase_matched(
    models: dict[str, DispersionModel],
    process: str,
    bracket: tuple[float, float],
    fixed: dict[str, float] | None = None,
    tol_rel: float = 1e-10,
    degenerate_tol: float = 1e-6,
) -> PhaseMatchResult:
    """Search wavelengths satisfying energy conservation with minimal mismatch.

    ``bracket`` is a wavelength interval (meters) for the searched band:
    the fundamental for the degenerate process, the pair band G for the
    singly seeded one.  ``fixed`` pins the other input wavelengths (seed,
    and for the doubly seeded case also the pump, whose output wavelength
    follows from energy conservation alone).

    A sign change in the bracket is refined to a root; otherwise the
    magnitude is minimized.  If the mismatch is negligible over the whole
    bracket (e.g. a dispersionless medium) any energy-conserving set works
    and the result is flagged degenerate.
    """
    fixed = fixed or {}

    if process == "dst":
        omega_p = wavelength_to_omega(fixed[PUMP])
        omega_s = wavelength_to_omega(fixed[SEED])
        omega_g = omega_p - 2.0 * omega_s
        if omega_g <= 0:
            raise PhaseMatchError("energy conservation gives a nonpositive frequency")
        wavelengths = {
            PUMP: fixed[PUMP],
            SEED: fixed[SEED],
            GBAR: omega_to_wavelength(omega_g),
        }
        kbar = {
            PUMP: models[PUMP].wavenumber(omega_p),
            SEED: models[SEED].wavenumber(omega_s),
            GBAR: models[GBAR].wavenumber(omega_g),
        }
        return PhaseMatchResult(wavelengths, mismatch("dst", kbar))

    if process == "fff":

        def f(lam_f):
            omega_f = wavelength_to_omega(lam_f)
            kp = models[PUMP].wavenumber(3.0 * omega_f)
            kf = models[FUNDAMENTAL].wavenumber(omega_f)
            return kp - 3.0 * kf

        def result(lam_f, residual, degenerate=False):
            return PhaseMatchResult(
                {FUNDAMENTAL: lam_f, PUMP: lam_f / 3.0}, residual, degenerate
            )

    elif process in ("gg_s", "ggs"):
        omega_s = wavelength_to_omega(fixed[SEED])
        ks = models[SEED].wavenumber(omega_s)

        def f(lam_g):
            omega_g = wavelength_to_omega(lam_g)
            omega_p = 2.0 * omega_g + omega_s
            kp = models[PUMP].wavenumber(omega_p)
            kg = models[GENERATED].wavenumber(omega_g)
            return kp - ks - 2.0 * kg

        def result(lam_g, residual, degenerate=False):
            omega_p = 2.0 * wavelength_to_omega(lam_g) + omega_s
            return PhaseMatchResult(
                {
                    GENERATED: lam_g,
                    SEED: fixed[SEED],
                    PUMP: omega_to_wavelength(omega_p),
                },
                residual,
                degenerate,
            )

    else:
        raise ValueError(f"unknown process variant {process!r}")

    lo, hi = bracket
    grid = np.linspace(lo, hi, 64)

    def f_or_nan(x):
        try:
            return f(x)
        except ExtrapolationError:
            return math.nan

    values = np.array([f_or_nan(x) for x in grid])
    valid = np.isfinite(values)
    if not valid.any():
        raise NoRootError("bracket lies entirely outside the fitted dispersion data")
    grid, values = grid[valid], values[valid]
    lo, hi = float(grid[0]), float(grid[-1])
    scale = max(abs(models[PUMP].k_ref), 1.0)
    if np.all(np.abs(values) < degenerate_tol * scale):
        return result(0.5 * (lo + hi), float(values[len(values) // 2]), degenerate=True)

    sign_change = np.nonzero(np.diff(np.sign(values)) != 0)[0]
    if sign_change.size:
        i = int(sign_change[0])
        root = brentq(f, grid[i], grid[i + 1], xtol=tol_rel * grid[i])
        return result(float(root), f(float(root)))

    res = minimize_scalar(
        lambda x: abs(f(x)), bounds=(lo, hi), method="bounded",
        options={"xatol": tol_rel * lo},
    )
    x = float(res.x)
    if x - lo < 2 * tol_rel * lo or hi - x < 2 * tol_rel * lo:
        raise NoRootError("no mismatch root or interior minimum in the bracket")
    return result(x, f(x))


def circulating_power(
    ring: RingSpec, band: str, power: float, detuning: float = 0.0
) -> float:
    """Lorentzian buildup: P' = P * (2 v eta Gbar / L) / (d^2 + Gbar^2).

    On resonance this is the familiar 4 v eta Q / (L omega) enhancement.
    """
    if power < 0:
        raise ValueError("channel power must be nonnegative")
    res = ring.resonances[band]
    g = res.linewidth
    num = 2.0 * res.group_velocity * res.escape_efficiency * g / ring.circumference
    return power * num / (detuning**2 + g**2)


def hot_resonances(ring: RingSpec, circulating_pump_power: float) -> dict[str, float]:
    """Resonance frequencies shifted by pump SPM (pump band) and XPM (others)."""
    if circulating_pump_power < 0:
        raise ValueError("circulating power must be nonnegative")
    g_spm = abs(ring.gammas.gamma_spm)
    g_xpm = abs(ring.gammas.gamma_xpm)
    out = {}
    for band, res in ring.resonances.items():
        if band == PUMP:
            shift = g_spm * res.group_velocity * circulating_pump_power
        else:
            shift = 2.0 * g_xpm * res.group_velocity * circulating_pump_power
        out[band] = res.omega - shift
    return out


def hot_wavenumbers(ring: RingSpec, circulating_pump_power: float) -> dict[str, float]:
    """Channel wavenumbers of the hot resonances: K - (1 or 2) gamma P'."""
    g_spm = abs(ring.gammas.gamma_spm)
    g_xpm = abs(ring.gammas.gamma_xpm)
    out = {}
    for band, res in ring.resonances.items():
        if band == PUMP:
            out[band] = res.kappa - g_spm * circulating_pump_power
        else:
            out[band] = res.kappa - 2.0 * g_xpm * circulating_pump_power
    return out


def self_consistent_pump(
    ring: RingSpec,
    pump_power: float,
    laser_omega: float | None = None,
    rel_tol: float = 1e-12,
    max_iter: int = 10_000,
    damping: float = 0.5,
) -> PumpState:
    """Steady-state circulating pump power with the SPM resonance pull.

    Damped fixed-point iteration of P' = buildup(laser detuning from the hot
    resonance).  ``laser_omega`` defaults to the cold resonance frequency.
    Non-convergence (the bistable regime) raises with the bracketing iterates.
    """
    res = ring.resonances[PUMP]
    if laser_omega is None:
        laser_omega = res.omega
    if pump_power == 0:
        return PumpState(0.0, 0.0, laser_omega - res.omega, hot_resonances(ring, 0.0),
                         hot_wavenumbers(ring, 0.0))
    g_spm = abs(ring.gammas.gamma_spm)
    pull = g_spm * res.group_velocity  # rad/s per watt circulating

    p = circulating_power(ring, PUMP, pump_power, laser_omega - res.omega)
    history = [p]
    for _ in range(max_iter):
        detuning = laser_omega - (res.omega - pull * p)
        target = circulating_power(ring, PUMP, pump_power, detuning)
        new = (1.0 - damping) * p + damping * target
        history.append(new)
        if abs(new - p) <= rel_tol * max(abs(new), 1e-300):
            detuning = laser_omega - (res.omega - pull * new)
            return PumpState(
                pump_power,
                new,
                detuning,
                hot_resonances(ring, new),
                hot_wavenumbers(ring, new),
            )
        p = new
    raise BistabilityError(
        "pump steady state did not converge (bistability suspected)",
        iterates=history[-6:],
    )


def optimal_pump_detuning(
    ring: RingSpec, process: str, circulating_pump_power: float
) -> float:
    """Pump detuning putting the generated photons on the hot resonances.

    Degenerate: 3*wF~ - wP~.  Singly seeded / non-degenerate (seed on
    resonance): 2*wG~ + wS~ - wP~.  Doubly seeded: 2*wS~ + wGbar~ - wP~,
    which zeroes the output detuning.  Linear in the circulating power.
    """
    hot = hot_resonances(ring, circulating_pump_power)
    if process in ("fff", "sp_deg"):
        return 3.0 * hot[FUNDAMENTAL] - hot[PUMP]
    if process in ("ggs", "gg_s", "sp_nondeg", "st"):
        return 2.0 * hot[GENERATED] + hot[SEED] - hot[PUMP]
    if process == "dst":
        return 2.0 * hot[SEED] + hot[GBAR] - hot[PUMP]
    raise ValueError(f"unknown process variant {process!r}")
