"""Generation bandwidths and vacuum-fluctuation powers.

The triplet-generation rates are written as conversion efficiencies times an
effective "vacuum power" per photon pair, P_vac = hbar * omega_bar / tau,
where 1/tau is the phase-matching bandwidth of the process.  This module
computes 1/tau four ways:

* closed forms for a straight waveguide in the quadratic-dispersion limit,
* direct numerical quadrature of the underlying frequency integrals,
* a seeded Monte Carlo estimate of the same integrals (used as an
  independent cross-check of the quadrature),
* Lorentzian closed forms for ring resonances.

The frequency integrals are evaluated in rotated detuning coordinates in
which the energy-conservation constraint is already resolved, so only the
wavenumber mismatch appears in the integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from .dispersion import DispersionModel

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT6 = math.sqrt(6.0)


class BandwidthError(Exception):
    pass


class InfiniteBandwidthError(BandwidthError):
    """Vanishing dispersion makes the quadratic-limit bandwidth diverge."""


@dataclass(frozen=True)
class BandwidthResult:
    tau_inv: float  # s^-1 (for spontaneous processes, sqrt of the tau^-2 integral)
    method: str
    node_count: int = 0
    est_rel_error: float = 0.0
    converged: bool = True


def sinc(x):
    """Unnormalized sinc, sin(x)/x, stable near zero."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-8
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0 - x * x / 6.0, np.sin(safe) / safe)
    return out if out.ndim else float(out)


# rotated detuning coordinates: an orthogonal change of variables on the
# zero-sum plane delta1 + delta2 + delta3 = 0


def rotated_from_detunings(d1, d2):
    """(delta1, delta2) on the zero-sum plane -> (Omega1, Omega2).

    The third detuning is implicit, delta3 = -delta1 - delta2.
    """
    return (d1 - d2) / _SQRT2, 3.0 * (d1 + d2) / _SQRT6


def detunings_from_rotated(om1, om2):
    """(Omega1, Omega2) -> (delta1, delta2, delta3), summing to zero."""
    d1 = om1 / _SQRT2 + om2 / _SQRT6
    d2 = -om1 / _SQRT2 + om2 / _SQRT6
    d3 = -2.0 * om2 / _SQRT6
    return d1, d2, d3


def _leggauss(a, b, n):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def tau_sp_wg_analytic(beta2: float, length: float) -> BandwidthResult:
    """Degenerate-triplet bandwidth, quadratic dispersion: an isotropic
    Lorentzian-like sinc^2 integral that evaluates to tau^-2 =
    sqrt(3) / (9 |beta2| L)."""
    if length <= 0:
        raise ValueError("length must be positive")
    if beta2 == 0:
        raise InfiniteBandwidthError("beta2 = 0: quadratic-limit bandwidth diverges")
    tau_inv_sq = _SQRT3 / (9.0 * abs(beta2) * length)
    return BandwidthResult(math.sqrt(tau_inv_sq), method="analytic")


def tau_st_wg_analytic(beta2: float, length: float) -> BandwidthResult:
    """Seeded-pair bandwidth, quadratic dispersion:
    tau^-1 = (4/3) sqrt(2 / (pi |beta2| L))."""
    if length <= 0:
        raise ValueError("length must be positive")
    if beta2 == 0:
        raise InfiniteBandwidthError("beta2 = 0: quadratic-limit bandwidth diverges")
    tau_inv = (4.0 / 3.0) * math.sqrt(2.0 / (math.pi * abs(beta2) * length))
    return BandwidthResult(tau_inv, method="analytic")


def _sp_window(model: DispersionModel, omega_window):
    omega_f = model.omega_ref
    if omega_window is None:
        lo, hi = model.omega_min, model.omega_max
    else:
        lo = max(omega_window[0], model.omega_min)
        hi = min(omega_window[1], model.omega_max)
    if not lo < omega_f < hi:
        raise BandwidthError("central frequency outside the integration window")
    return lo - omega_f, hi - omega_f  # detuning window per photon


def _sp_integrand(model: DispersionModel, length: float, upsilon: float):
    def integrand(om1, om2):
        d1, d2, d3 = detunings_from_rotated(om1, om2)
        total = model.delta_exact(d1) + model.delta_exact(d2) + model.delta_exact(d3)
        return sinc(upsilon - 0.5 * length * total) ** 2

    return integrand


def tau_sp_wg_numeric(
    model: DispersionModel,
    length: float,
    upsilon: float = 0.0,
    omega_window: tuple[float, float] | None = None,
    rel_tol: float = 1e-3,
    max_nodes: int = 1024,
) -> BandwidthResult:
    """Degenerate-triplet bandwidth by 2-D quadrature of the full integrand.

    tau^-2 = sqrt(3)/(18 pi^2) * integral over the rotated detuning plane of
    sinc^2(upsilon - [sum of wavenumber offsets] L / 2), with the photon
    frequencies confined to ``omega_window`` (the fitted band by default).
    ``upsilon`` is an overall mismatch offset Delta k * L / 2.  Nested
    Gauss-Legendre with grid doubling until the relative change is below
    ``rel_tol``.
    """
    if length <= 0:
        raise ValueError("length must be positive")
    a, b = _sp_window(model, omega_window)  # per-photon detuning bounds, a<0<b
    integrand = _sp_integrand(model, length, upsilon)

    # Omega2 range from delta3 = -2 Omega2 / sqrt(6) in [a, b]
    om2_lo, om2_hi = -_SQRT6 * b / 2.0, -_SQRT6 * a / 2.0

    def evaluate(n):
        om2, w2 = _leggauss(om2_lo, om2_hi, n)
        # delta1, delta2 in [a, b] bounds Omega1 for each Omega2
        lo1 = np.maximum(_SQRT2 * (a - om2 / _SQRT6), _SQRT2 * (om2 / _SQRT6 - b))
        hi1 = np.minimum(_SQRT2 * (b - om2 / _SQRT6), _SQRT2 * (om2 / _SQRT6 - a))
        total = 0.0
        for j in range(n):
            if hi1[j] <= lo1[j]:
                continue
            om1, w1 = _leggauss(lo1[j], hi1[j], n)
            total += w2[j] * np.dot(w1, integrand(om1, np.full_like(om1, om2[j])))
        return _SQRT3 / (18.0 * math.pi**2) * total

    return _doubling(evaluate, rel_tol, max_nodes, spontaneous=True)


def tau_st_wg_numeric(
    model: DispersionModel,
    length: float,
    upsilon: float = 0.0,
    omega_window: tuple[float, float] | None = None,
    rel_tol: float = 1e-3,
    max_nodes: int = 4096,
) -> BandwidthResult:
    """Seeded-pair bandwidth by 1-D quadrature:
    tau^-1 = 1/(2 pi) * integral dOmega sinc^2(upsilon - [Delta(Omega/2) +
    Delta(-Omega/2)] L / 2) over the window allowed for both pair photons.
    """
    if length <= 0:
        raise ValueError("length must be positive")
    a, b = _sp_window(model, omega_window)
    lo = max(2.0 * a, -2.0 * b)
    hi = min(2.0 * b, -2.0 * a)
    if hi <= lo:
        raise BandwidthError("empty integration window")

    def evaluate(n):
        om, w = _leggauss(lo, hi, n)
        total = model.delta_exact(om / 2.0) + model.delta_exact(-om / 2.0)
        vals = sinc(upsilon - 0.5 * length * total) ** 2
        return np.dot(w, vals) / (2.0 * math.pi)

    return _doubling(evaluate, rel_tol, max_nodes, spontaneous=False)


def _doubling(evaluate, rel_tol, max_nodes, spontaneous):
    n = 32
    prev = evaluate(n)
    while True:
        n *= 2
        cur = evaluate(n)
        rel = abs(cur - prev) / max(abs(cur), 1e-300)
        if rel < rel_tol or n >= max_nodes:
            break
        prev = cur
    tau_inv = math.sqrt(cur) if spontaneous else float(cur)
    return BandwidthResult(
        tau_inv,
        method="quadrature",
        node_count=n,
        est_rel_error=float(rel),
        converged=bool(rel < rel_tol),
    )


def mc_tau_sp_wg(
    model: DispersionModel,
    length: float,
    n_samples: int = 400_000,
    upsilon: float = 0.0,
    omega_window: tuple[float, float] | None = None,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo estimate of the degenerate-triplet tau^-1.

    Samples the first two photon frequencies uniformly, resolves the third by
    energy conservation and rejects it when outside the window.  The rotation
    to the detuning plane has Jacobian sqrt(3), turning the quadrature
    prefactor into 1/(6 pi^2) in plain frequency coordinates.  Returns
    (tau_inv, one-sigma statistical error on tau_inv).
    """
    a, b = _sp_window(model, omega_window)
    rng = np.random.default_rng(seed)
    d1 = rng.uniform(a, b, n_samples)
    d2 = rng.uniform(a, b, n_samples)
    d3 = -d1 - d2
    inside = (d3 >= a) & (d3 <= b)
    vals = np.zeros(n_samples)
    total = model.delta_exact(d1[inside]) + model.delta_exact(d2[inside]) + model.delta_exact(d3[inside])
    vals[inside] = sinc(upsilon - 0.5 * length * total) ** 2
    area = (b - a) ** 2
    pref = area / (6.0 * math.pi**2)
    tau_inv_sq = pref * vals.mean()
    err_sq = pref * vals.std(ddof=1) / math.sqrt(n_samples)
    tau_inv = math.sqrt(tau_inv_sq)
    return tau_inv, 0.5 * err_sq / tau_inv  # error propagation through the sqrt


def mc_tau_st_wg(
    model: DispersionModel,
    length: float,
    n_samples: int = 400_000,
    upsilon: float = 0.0,
    omega_window: tuple[float, float] | None = None,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo estimate of the seeded-pair tau^-1 (value, one-sigma)."""
    a, b = _sp_window(model, omega_window)
    lo = max(a, -b)
    hi = min(b, -a)
    rng = np.random.default_rng(seed)
    d1 = rng.uniform(lo, hi, n_samples)  # pair-photon detuning; partner at -d1
    total = model.delta_exact(d1) + model.delta_exact(-d1)
    vals = sinc(upsilon - 0.5 * length * total) ** 2
    # dOmega = 2 d(delta1), and the 1/(2 pi) prefactor, give 1/pi overall
    pref = (hi - lo) / math.pi
    return pref * vals.mean(), pref * vals.std(ddof=1) / math.sqrt(n_samples)


# ring resonances: Lorentzian closed forms in the loaded half-linewidths


def tau_ring_sp_degenerate(gamma_f: float, delta: float = 0.0) -> float:
    """tau^-1 for a degenerate triplet on one ring resonance:
    tau^-2 = Gamma_F^4 / (2 (delta^2 + 9 Gamma_F^2)); on resonance
    tau^-1 = Gamma_F / sqrt(18)."""
    if gamma_f <= 0:
        raise ValueError("linewidth must be positive")
    return math.sqrt(0.5 * gamma_f**4 / (delta**2 + 9.0 * gamma_f**2))


def tau_ring_sp_nondegenerate(gamma_g: float, gamma_s: float, delta: float = 0.0) -> float:
    """tau^-1 for a pair on resonance G plus one photon on resonance S:
    tau^-2 = Gamma_G^2 Gamma_S (2 Gamma_G + Gamma_S) /
             (2 (delta^2 + (2 Gamma_G + Gamma_S)^2))."""
    if gamma_g <= 0 or gamma_s <= 0:
        raise ValueError("linewidths must be positive")
    width = 2.0 * gamma_g + gamma_s
    return math.sqrt(0.5 * gamma_g**2 * gamma_s * width / (delta**2 + width**2))


def tau_ring_st(gamma_g: float, delta: float = 0.0) -> float:
    """tau^-1 for a seeded pair on resonance G:
    tau^-1 = 2 Gamma_G^3 / (delta^2 + 4 Gamma_G^2); on resonance Gamma_G/2."""
    if gamma_g <= 0:
        raise ValueError("linewidth must be positive")
    return 2.0 * gamma_g**3 / (delta**2 + 4.0 * gamma_g**2)


def vacuum_power(tau_inv: float, omegas) -> float:
    """P_vac = hbar * omega_bar / tau with omega_bar the geometric mean of
    the generated-photon frequencies (a scalar is used as-is)."""
    if np.ndim(omegas) == 0:
        omega_bar = float(omegas)
    else:
        omega_bar = float(np.prod(omegas)) ** (1.0 / len(omegas))
    if omega_bar <= 0 or tau_inv < 0:
        raise ValueError("frequencies must be positive and tau_inv nonnegative")
    return HBAR * omega_bar * tau_inv


def effective_vacuum_power(
    gamma_g: float,
    gamma_s: float,
    omega_s: float,
    delta_stim: float = 0.0,
    delta_seed: float = 0.0,
) -> float:
    """Seed channel power at which the seeded-pair rate equals the
    spontaneous one on the same resonances.

    On resonance this is hbar * omega_S * Gamma_G Gamma_S / (2 Gamma_G +
    Gamma_S); off resonance the two Lorentzian bandwidth factors no longer
    cancel and the ratio of the closed forms is kept explicitly.
    """
    if gamma_g <= 0 or gamma_s <= 0 or omega_s <= 0:
        raise ValueError("linewidths and frequency must be positive")
    width = 2.0 * gamma_g + gamma_s
    ratio = (
        gamma_s * width / (4.0 * gamma_g)
        * (delta_stim**2 + 4.0 * gamma_g**2)
        / (delta_seed**2 + width**2)
    )
    return HBAR * omega_s * ratio
