"""Charging of a quantum battery by a quantum charger through a common reservoir.

The charger A and battery B are resonant two-level systems coupled to one
zero-temperature bosonic bath with a Lorentzian spectrum. In the
single-excitation sector the pair is described by two amplitudes driven by a
scalar memory kernel, from which the package computes energetics,
entanglement and quantum-memory-assisted entropic uncertainty.
"""

from .density import (
    QubitState,
    TwoQubitState,
    conditional_entropy_AB,
    joint_state,
    reduce_A,
    reduce_B,
    von_neumann_entropy,
)
from .dynamics import AmplitudePair, amplitudes, kernel_mu, steady_amplitudes
from .energetics import EnergyReport, energy_report, find_peak
from .errors import ModelError
from .information import (
    UncertaintyReport,
    concurrence,
    concurrence_xstate,
    eur_three,
    eur_two,
    eur_two_steady,
    tightness,
    uncertainty_report,
)
from .kernels import BACKEND
from .params import DerivedConstants, ModelParams, derive, validate
from .sweeps import AxisSpec, SweepGrid, sweep_dynamics, sweep_steady, sweep_transfer_plane

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AmplitudePair",
    "AxisSpec",
    "DerivedConstants",
    "EnergyReport",
    "ModelError",
    "ModelParams",
    "QubitState",
    "SweepGrid",
    "TwoQubitState",
    "UncertaintyReport",
    "amplitudes",
    "concurrence",
    "concurrence_xstate",
    "conditional_entropy_AB",
    "derive",
    "energy_report",
    "eur_three",
    "eur_two",
    "eur_two_steady",
    "find_peak",
    "joint_state",
    "kernel_mu",
    "reduce_A",
    "reduce_B",
    "steady_amplitudes",
    "sweep_dynamics",
    "sweep_steady",
    "sweep_transfer_plane",
    "tightness",
    "uncertainty_report",
    "validate",
    "von_neumann_entropy",
]
