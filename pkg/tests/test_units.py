import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topdc.units import (
    UnitError,
    angular_ghz,
    cyclic_ghz,
    omega_to_wavelength,
    parse_quantity,
    wavelength_to_omega,
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1 cm", 1e-2),
        ("750 um", 750e-6),
        ("1.72um", 1.72e-6),
        ("100 mW", 0.1),
        ("20 uW", 20e-6),
        ("2.9e4 GHz", 2.9e13),
        ("2.6 GHz", 2.6e9),
        ("30 MHz", 3.0e7),
        ("0.19", 0.19),
        (0.01, 0.01),
    ],
)
def test_parse_quantity(text, expected):
    assert parse_quantity(text) == pytest.approx(expected, rel=1e-12)


def test_parse_quantity_rejects_junk():
    with pytest.raises(UnitError):
        parse_quantity("fast")
    with pytest.raises(UnitError):
        parse_quantity("10 parsec")


def test_frequency_conventions_differ_by_2pi():
    omega = 2.9e13
    assert angular_ghz(omega) == pytest.approx(2.9e4)
    assert cyclic_ghz(omega) == pytest.approx(2.9e4 / (2 * math.pi))


@given(st.floats(min_value=1e-7, max_value=1e-5))
def test_wavelength_omega_roundtrip(lam):
    assert omega_to_wavelength(wavelength_to_omega(lam)) == pytest.approx(
        lam, rel=1e-12
    )


def test_nonpositive_wavelength_rejected():
    with pytest.raises(UnitError):
        wavelength_to_omega(0.0)
    with pytest.raises(UnitError):
        omega_to_wavelength(-1.0)
