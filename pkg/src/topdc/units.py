"""Boundary unit handling.

Internally everything is strict SI with *angular* frequency (rad/s).
Frequency suffixes like ``GHz`` are interpreted as 1e9 s^-1 of angular
frequency, which is the convention under which the bandwidth and vacuum-power
numbers of the rate formulas are mutually consistent.  Reports emit both the
angular and the cyclic (divide by 2*pi) reading.
"""

from __future__ import annotations

import math
import re

# suffix -> multiplier to SI (lengths to m, powers to W, frequencies to
# angular rad/s under the angular convention, times to s)
_UNIT_FACTORS = {
    "m": 1.0,
    "cm": 1e-2,
    "mm": 1e-3,
    "um": 1e-6,
    "nm": 1e-9,
    "pm": 1e-12,
    "w": 1.0,
    "mw": 1e-3,
    "uw": 1e-6,
    "nw": 1e-9,
    "thz": 1e12,
    "ghz": 1e9,
    "mhz": 1e6,
    "khz": 1e3,
    "hz": 1.0,
    "s": 1.0,
}

_QUANTITY_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-zA-Z]*)\s*$")


class UnitError(ValueError):
    pass


def parse_quantity(text: str | float) -> float:
    """Parse ``"100 mW"``-style text into an SI float.

    Bare numbers pass through unchanged (assumed SI already).
    """
    if isinstance(text, (int, float)):
        return float(text)
    m = _QUANTITY_RE.match(text)
    if m is None:
        raise UnitError(f"cannot parse quantity {text!r}")
    value = float(m.group(1))
    suffix = m.group(2).lower()
    if not suffix:
        return value
    try:
        return value * _UNIT_FACTORS[suffix]
    except KeyError:
        raise UnitError(f"unknown unit suffix {m.group(2)!r} in {text!r}") from None


def angular_ghz(omega: float) -> float:
    """rad/s -> GHz under the angular convention (1 GHz = 1e9 rad/s)."""
    return omega / 1e9


def cyclic_ghz(omega: float) -> float:
    """rad/s -> GHz under the cyclic convention (divide by 2*pi)."""
    return omega / (2.0 * math.pi * 1e9)


def wavelength_to_omega(wavelength_m: float) -> float:
    from .constants import C

    if wavelength_m <= 0:
        raise UnitError("wavelength must be positive")
    return 2.0 * math.pi * C / wavelength_m


def omega_to_wavelength(omega: float) -> float:
    from .constants import C

    if omega <= 0:
        raise UnitError("frequency must be positive")
    return 2.0 * math.pi * C / omega
