"""Triplet generation rates for waveguides and ring resonators.

Each process is expressed as a conversion efficiency R / R_P, with R_P the
pump photon flux, built from the nonlinear parameter, the interaction
length, the seed and vacuum powers, and for rings the Lorentzian field
enhancement of every involved resonance:

* spontaneous, all three photons near one frequency ("sp_deg"),
* spontaneous with a frequency-split pair ("sp_nondeg", rings),
* singly seeded pair generation ("st"),
* doubly seeded, deterministic conversion ("dst").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import bandwidth as bw
from .constants import HBAR
from .phasematch import FUNDAMENTAL, GBAR, GENERATED, PUMP, SEED, RingSpec, WaveguideSpec
from .units import angular_ghz, cyclic_ghz

PROCESSES = ("sp_deg", "sp_nondeg", "st", "dst")

_GAMMA_ATTR = {
    "sp_deg": "gamma_fff",
    "sp_nondeg": "gamma_ggs",
    "st": "gamma_gg_s",
    "dst": "gamma_dst",
}

# bands whose field enhancement multiplies each ring rate, with exponents
_RING_ENHANCEMENTS = {
    "sp_deg": {FUNDAMENTAL: 3, PUMP: 1},
    "sp_nondeg": {GENERATED: 2, SEED: 1, PUMP: 1},
    "st": {GENERATED: 2, SEED: 1, PUMP: 1},
    "dst": {SEED: 2, PUMP: 1, GBAR: 1},
}


class RateError(Exception):
    pass


@dataclass(frozen=True)
class ProcessScenario:
    """One device plus one process plus the driving conditions."""

    device: WaveguideSpec | RingSpec
    process: str
    pump_power: float
    seed_power: float = 0.0
    detunings: dict[str, float] = field(default_factory=dict)
    tau_inv: float | None = None  # injected bandwidth; None -> closed form
    mismatch: float = 0.0  # residual Delta k (rad/m) for the seeded sinc^2

    def __post_init__(self):
        if self.process not in PROCESSES:
            raise RateError(f"unknown process {self.process!r}")
        if self.pump_power < 0 or self.seed_power < 0:
            raise ValueError("powers must be nonnegative")
        if self.process in ("st", "dst") and self.seed_power == 0:
            raise RateError(f"process {self.process!r} needs a seed power")

    @property
    def is_ring(self) -> bool:
        return isinstance(self.device, RingSpec)


@dataclass(frozen=True)
class RateResult:
    rate: float  # triplets (or converted triplets) per second
    efficiency: float  # rate / pump photon flux
    tau_inv: float | None
    vacuum_power: float | None
    enhancements: dict[str, float]
    diagnostics: dict

    def to_report(self) -> dict:
        out = {
            "rate_per_s": self.rate,
            "efficiency": self.efficiency,
            "enhancements": dict(self.enhancements),
            "diagnostics": dict(self.diagnostics),
        }
        if self.tau_inv is not None:
            out["tau_inv_per_s"] = self.tau_inv
            out["tau_inv_ghz_angular"] = angular_ghz(self.tau_inv)
            out["tau_inv_ghz_cyclic"] = cyclic_ghz(self.tau_inv)
        if self.vacuum_power is not None:
            out["vacuum_power_w"] = self.vacuum_power
        return out


def field_enhancement(ring: RingSpec, band: str, detuning: float = 0.0) -> float:
    """|F|^2 = (2 v eta Gamma-bar / circumference) / (detuning^2 + Gamma-bar^2).

    On resonance this reduces to 4 v eta Q / (circumference * omega).
    """
    res = ring.resonances[band]
    g = res.linewidth
    num = 2.0 * res.group_velocity * res.escape_efficiency * g / ring.circumference
    return num / (detuning**2 + g**2)


def _gamma(scenario: ProcessScenario) -> float:
    return abs(getattr(scenario.device.gammas, _GAMMA_ATTR[scenario.process]))


def _omega(scenario: ProcessScenario, band: str) -> float:
    if scenario.is_ring:
        try:
            return scenario.device.resonances[band].omega
        except KeyError:
            raise RateError(f"ring has no resonance for band {band!r}") from None
    try:
        return scenario.device.band_centers[band]
    except KeyError:
        raise RateError(f"waveguide has no band center for {band!r}") from None


def _generated_omegas(scenario: ProcessScenario):
    if scenario.process == "sp_deg":
        return (_omega(scenario, FUNDAMENTAL),) * 3
    if scenario.process == "sp_nondeg":
        og = _omega(scenario, GENERATED)
        return (og, og, _omega(scenario, SEED))
    if scenario.process == "st":
        og = _omega(scenario, GENERATED)
        return (og, og)
    return ()


def _auto_tau_inv(scenario: ProcessScenario) -> float:
    """Closed-form bandwidth when none is injected."""
    dev = scenario.device
    delta = scenario.detunings.get("out", 0.0)
    if scenario.is_ring:
        if scenario.process == "sp_deg":
            return bw.tau_ring_sp_degenerate(dev.resonances[FUNDAMENTAL].linewidth, delta)
        if scenario.process == "sp_nondeg":
            return bw.tau_ring_sp_nondegenerate(
                dev.resonances[GENERATED].linewidth,
                dev.resonances[SEED].linewidth,
                delta,
            )
        return bw.tau_ring_st(dev.resonances[GENERATED].linewidth, delta)
    if dev.models is None:
        raise RateError("no injected bandwidth and no dispersion models to derive one")
    if scenario.process == "sp_deg":
        band, omega = FUNDAMENTAL, _omega(scenario, FUNDAMENTAL)
        beta2 = dev.models[band].group_quantities(omega).beta2
        return bw.tau_sp_wg_analytic(beta2, dev.length).tau_inv
    if scenario.process == "st":
        band, omega = GENERATED, _omega(scenario, GENERATED)
        beta2 = dev.models[band].group_quantities(omega).beta2
        return bw.tau_st_wg_analytic(beta2, dev.length).tau_inv
    raise RateError(
        f"no closed-form waveguide bandwidth for process {scenario.process!r}"
    )


def evaluate(scenario: ProcessScenario) -> RateResult:
    """Rate and efficiency for one scenario.

    Ring scenarios multiply the waveguide-style efficiency (with the
    circumference as the length) by the field enhancement of every involved
    resonance; seed and pump powers are channel powers.
    """
    dev = scenario.device
    gamma = _gamma(scenario)
    length = dev.circumference if scenario.is_ring else dev.length
    omega_p = _omega(scenario, PUMP)
    pump_flux = scenario.pump_power / (HBAR * omega_p)

    enhancements = {}
    enh_product = 1.0
    if scenario.is_ring:
        for band, power in _RING_ENHANCEMENTS[scenario.process].items():
            f2 = field_enhancement(dev, band, scenario.detunings.get(band, 0.0))
            enhancements[band] = f2
            enh_product *= f2**power

    tau_inv = None
    p_vac = None
    if scenario.process in ("sp_deg", "sp_nondeg"):
        tau_inv = scenario.tau_inv if scenario.tau_inv is not None else _auto_tau_inv(scenario)
        p_vac = bw.vacuum_power(tau_inv, _generated_omegas(scenario))
        efficiency = (gamma * length) ** 2 * p_vac**2
    elif scenario.process == "st":
        tau_inv = scenario.tau_inv if scenario.tau_inv is not None else _auto_tau_inv(scenario)
        p_vac = bw.vacuum_power(tau_inv, _generated_omegas(scenario))
        efficiency = (gamma * length) ** 2 * scenario.seed_power * p_vac
    else:  # dst: deterministic conversion of two seed photons plus a pump photon
        phase = 0.5 * scenario.mismatch * length
        efficiency = (gamma * length * scenario.seed_power) ** 2 * float(bw.sinc(phase)) ** 2
        if not scenario.is_ring:
            # continuum of output wavevectors; the ring output is a single mode
            efficiency /= 2.0 * math.pi

    efficiency *= enh_product
    diagnostics = {
        "process": scenario.process,
        "device": "ring" if scenario.is_ring else "waveguide",
        "interaction_length_m": length,
        "pump_flux_per_s": pump_flux,
        "gamma_w_per_m": gamma,
        "bandwidth_source": "injected" if scenario.tau_inv is not None else "closed form",
    }
    if scenario.is_ring:
        diagnostics["escape_efficiencies"] = {
            band: dev.resonances[band].escape_efficiency
            for band in _RING_ENHANCEMENTS[scenario.process]
        }
    return RateResult(
        rate=efficiency * pump_flux,
        efficiency=efficiency,
        tau_inv=tau_inv,
        vacuum_power=p_vac,
        enhancements=enhancements,
        diagnostics=diagnostics,
    )


def _with_param(scenario: ProcessScenario, param: str, value: float) -> ProcessScenario:
    """Scenario copy with one swept parameter replaced."""
    dev = scenario.device
    if param == "pump_power":
        return replace(scenario, pump_power=value)
    if param == "seed_power":
        return replace(scenario, seed_power=value)
    if param == "length":
        if scenario.is_ring:
            raise RateError("rings have a circumference, not a length")
        return replace(scenario, device=replace(dev, length=value))
    if param == "circumference":
        if not scenario.is_ring:
            raise RateError("waveguides have a length, not a circumference")
        return replace(scenario, device=replace(dev, circumference=value))
    if param.startswith("q:"):
        band = param.split(":", 1)[1]
        if not scenario.is_ring:
            raise RateError("quality factors apply to ring scenarios only")
        res = replace(dev.resonances[band], q_loaded=value)
        resonances = dict(dev.resonances)
        resonances[band] = res
        return replace(scenario, device=replace(dev, resonances=resonances))
    raise ValueError(f"unknown sweep parameter {param!r}")


def sweep(scenario: ProcessScenario, param: str, values) -> list[RateResult]:
    return [evaluate(_with_param(scenario, param, float(v))) for v in values]


def scaling_exponent(
    scenario: ProcessScenario, param: str, span: float = 4.0, n: int = 9
) -> float:
    """Power-law exponent d(log R)/d(log param) by a log-log fit.

    Sweeps the parameter geometrically over ``span`` decades of ratio around
    its current value (factor span down to factor span up) and fits a line;
    the injected bandwidth, if any, is cleared so the swept geometry can act
    on the bandwidth too.
    """
    base = getattr(scenario.device, param, None)
    if param == "pump_power":
        center = scenario.pump_power
    elif param == "seed_power":
        center = scenario.seed_power
    elif param.startswith("q:"):
        center = scenario.device.resonances[param.split(":", 1)[1]].q_loaded
    elif base is not None:
        center = base
    else:
        raise ValueError(f"unknown sweep parameter {param!r}")
    if center <= 0:
        raise ValueError("swept parameter must be positive")

    scenario = replace(scenario, tau_inv=None)
    values = center * np.geomspace(1.0 / span, span, n)
    rates = np.array([r.rate for r in sweep(scenario, param, values)])
    if np.any(rates <= 0):
        raise RateError("nonpositive rate in the sweep; cannot fit a power law")
    slope = np.polyfit(np.log(values), np.log(rates), 1)[0]
    return float(slope)
