"""Photon-triplet generation rates for integrated waveguides and microrings.

Calculator library for third-order parametric down-conversion: dispersion
from tabulated effective indices, nonlinear parameters from mode overlaps,
phase matching with pump-induced shifts, generation bandwidths, and the
spontaneous / seeded / doubly seeded triplet rates, plus a small CLI.
"""

from . import bandwidth, dispersion, modeoverlap, phasematch, rates, sampledata, units
from .dispersion import DispersionModel, IndexTable, build_model
from .modeoverlap import ModeProfile, NonlinearParameterSet
from .phasematch import PumpState, RingResonance, RingSpec, WaveguideSpec
from .rates import ProcessScenario, RateResult, evaluate, scaling_exponent

__version__ = "0.1.0"

__all__ = [
    "DispersionModel",
    "IndexTable",
    "ModeProfile",
    "NonlinearParameterSet",
    "ProcessScenario",
    "PumpState",
    "RateResult",
    "RingResonance",
    "RingSpec",
    "WaveguideSpec",
    "bandwidth",
    "build_model",
    "dispersion",
    "evaluate",
    "modeoverlap",
    "phasematch",
    "rates",
    "sampledata",
    "scaling_exponent",
    "units",
]
