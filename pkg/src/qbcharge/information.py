"""Concurrence and quantum-memory-assisted entropic uncertainty.

Measurements are Pauli observables on the charger A; the battery B is the
memory. Two settings are covered: (sigma_x, sigma_z) and
(sigma_x, sigma_y, sigma_z), both with complementarity term -log2 b = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .density import (
    EE,
    EG,
    GE,
    GG,
    TwoQubitState,
    conditional_entropy_AB,
    joint_state,
)
from .dynamics import AmplitudePair, steady_amplitudes
from .errors import NotXState
from .params import ModelParams

X_STATE_TOL = 1e-12


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


@dataclass(frozen=True)
class UncertaintyReport:
    u_left_xz: float
    u_right_2: float
    tightness_xz: float
    u_left_xyz: float
    u_right_3: float
    tightness_xyz: float
    d_factor: float
    gamma_x: tuple[float, float, float, float]
    gamma_z: tuple[float, float, float, float]


def concurrence(amps: AmplitudePair) -> float:
    return 2.0 * abs(amps.eta1 * amps.eta2.conjugate())


def concurrence_xstate(state: TwoQubitState) -> float:
    """Wootters concurrence of an X-shaped two-qubit density matrix."""
    rho = state.matrix if isinstance(state, TwoQubitState) else np.asarray(state)
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = mask[i, 3 - i] = False
    if np.abs(rho[mask]).max() > X_STATE_TOL:
        raise NotXState("matrix has entries outside the diagonal and anti-diagonal")
    r11, r22, r33, r44 = (rho[i, i].real for i in (EE, EG, GE, GG))
    c = max(
        0.0,
        abs(rho[EE, GG]) - math.sqrt(max(r22 * r33, 0.0)),
        abs(rho[EG, GE]) - math.sqrt(max(r11 * r44, 0.0)),
    )
    return 2.0 * c


def d_factor(a: float, b: float) -> float:
    """D for populations a = |eta1|^2, b = |eta2|^2."""
    return math.sqrt(max(1.0 - 4.0 * b + 4.0 * a * b + 4.0 * b * b, 0.0))


def gamma_x(amps: AmplitudePair) -> tuple[float, float, float, float]:
    """Spectrum of the state after a sigma_x measurement on A."""
    d = d_factor(abs(amps.eta1) ** 2, abs(amps.eta2) ** 2)
    lo, hi = 0.25 * (1.0 - d), 0.25 * (1.0 + d)
    return (lo, lo, hi, hi)


def gamma_z(amps: AmplitudePair) -> tuple[float, float, float, float]:
    """Spectrum of the state after a sigma_z measurement on A."""
    a, b = abs(amps.eta1) ** 2, abs(amps.eta2) ** 2
    return (0.0, a, b, max(1.0 - a - b, 0.0))


def _battery_xlogx_sum(b: float) -> float:
    # sum_i eps_i^B log2 eps_i^B, with eps^B = {b, 1 - b}
    return _xlog2x(b) + _xlog2x(1.0 - b)


def eur_two(amps: AmplitudePair) -> tuple[float, float]:
    """(U_l^xz, U_r^2): measured-uncertainty sum and its memory-assisted bound.

    The left side comes from the closed-form post-measurement spectra, the
    right side from 1 + S(A|B) of the explicit density matrix.
    """
    b = abs(amps.eta2) ** 2
    u_left = (
        2.0 * _battery_xlogx_sum(b)
        - sum(_xlog2x(g) for g in gamma_x(amps))
        - sum(_xlog2x(g) for g in gamma_z(amps))
    )
    u_right = 1.0 + conditional_entropy_AB(joint_state(amps))
    return u_left, u_right


def eur_three(amps: AmplitudePair) -> tuple[float, float]:
    """(U_l^xyz, U_r^3) for the full Pauli triple; U_r^3 = 2 U_r^2 - 1."""
    a, b = abs(amps.eta1) ** 2, abs(amps.eta2) ** 2
    m = max(1.0 - a - b, 0.0)
    d = d_factor(a, b)
    u_left = (
        -_xlog2x(a)
        + 2.0 * _xlog2x(b)
        + 3.0 * _xlog2x(1.0 - b)
        - _xlog2x(m)
        - 4.0 * _xlog2x(0.25 * (1.0 - d))
        - 4.0 * _xlog2x(0.25 * (1.0 + d))
    )
    _, u_right_2 = eur_two(amps)
    return u_left, 2.0 * u_right_2 - 1.0


def eur_two_steady(params: ModelParams) -> tuple[float, float]:
    """Steady-state (U_l^xz, U_r^2) written directly in the long-time populations.

    Raises NoSteadyState for R = 0.
    """
    amps = steady_amplitudes(params)
    a, b = abs(amps.eta1) ** 2, abs(amps.eta2) ** 2
    big_m = max(1.0 - a - b, 0.0)
    f = d_factor(a, b)
    u_left = (
        _xlog2x(b)
        - _xlog2x(big_m)
        + 2.0 * _xlog2x(1.0 - b)
        - _xlog2x(a)
        - 2.0 * _xlog2x(0.25 * (1.0 - f))
        - 2.0 * _xlog2x(0.25 * (1.0 + f))
    )
    u_right = 1.0 + _xlog2x(b) + _xlog2x(1.0 - b) - _xlog2x(big_m) - _xlog2x(1.0 - big_m)
    return u_left, u_right


def tightness(amps: AmplitudePair, n_measurements: int = 2) -> float:
    if n_measurements == 2:
        left, right = eur_two(amps)
    elif n_measurements == 3:
        left, right = eur_three(amps)
    else:
        raise ValueError(f"n_measurements must be 2 or 3, got {n_measurements!r}")
    return left - right


def uncertainty_report(amps: AmplitudePair) -> UncertaintyReport:
    l2, r2 = eur_two(amps)
    l3, r3 = eur_three(amps)
    return UncertaintyReport(
        u_left_xz=l2,
        u_right_2=r2,
        tightness_xz=l2 - r2,
        u_left_xyz=l3,
        u_right_3=r3,
        tightness_xyz=l3 - r3,
        d_factor=d_factor(abs(amps.eta1) ** 2, abs(amps.eta2) ** 2),
        gamma_x=gamma_x(amps),
        gamma_z=gamma_z(amps),
    )
