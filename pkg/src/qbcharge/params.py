"""Model parameters and the constants derived from them.

Time enters everywhere as the dimensionless product ``lt = lambda * t`` and
energies as ratios ``E / omega0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    ModelError,
    NegativeCouplingRatio,
    NonPositiveLambda,
    NonPositiveOmega,
    ThetaOutOfRange,
    ZetaNotNormalized,
)

ZETA_TOL = 1e-9
THETA_TOL = 1e-12
CRITICAL_WINDOW = 1e-9

SYMMETRIC_ZETA = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class ModelParams:
    """One charging scenario.

    Attributes
    ----------
    lam : float
        Reservoir spectral width (inverse correlation time), > 0.
    coupling_ratio : float
        R = L / lam, with L the vacuum Rabi frequency. R >> 1 is the
        strong-coupling (non-Markovian) regime.
    zeta1, zeta2 : float
        Relative charger-reservoir and battery-reservoir couplings with
        zeta1**2 + zeta2**2 = 1. ``zeta2=None`` fills in sqrt(1 - zeta1**2).
    theta, phi : float
        Initial amplitudes are sin(theta) e^{i phi} on |eg> and cos(theta)
        on |ge>.
    omega0 : float
        Qubit transition frequency; the energy unit.
    """

    lam: float = 1.0
    coupling_ratio: float = 0.0
    zeta1: float = SYMMETRIC_ZETA
    zeta2: float | None = None
    theta: float = 0.5 * math.pi
    phi: float = 0.0
    omega0: float = 1.0

    def __post_init__(self):
        if self.zeta2 is None:
            object.__setattr__(self, "zeta2", math.sqrt(max(0.0, 1.0 - self.zeta1 * self.zeta1)))


@dataclass(frozen=True)
class DerivedConstants:
    vacuum_rabi: float
    kappa_sq: float
    chi1: float | None
    chi2: float | None


def validate(params: ModelParams) -> ModelParams:
    """Check ranges and return a copy with the zeta pair renormalized.

    The phase is wrapped into [0, 2 pi).
    """
    if not params.lam > 0:
        raise NonPositiveLambda(f"lambda must be > 0, got {params.lam!r}")
    if not params.coupling_ratio >= 0:
        raise NegativeCouplingRatio(f"R must be >= 0, got {params.coupling_ratio!r}")
    if not params.omega0 > 0:
        raise NonPositiveOmega(f"omega0 must be > 0, got {params.omega0!r}")
    z1, z2 = params.zeta1, params.zeta2
    if z1 < 0 or z2 < 0:
        raise ZetaNotNormalized(f"zeta values must be nonnegative, got ({z1!r}, {z2!r})")
    norm = math.hypot(z1, z2)
    if abs(norm - 1.0) > ZETA_TOL:
        raise ZetaNotNormalized(f"zeta1^2 + zeta2^2 = {norm * norm!r}, expected 1")
    theta = params.theta
    if not (-THETA_TOL <= theta <= 0.5 * math.pi + THETA_TOL):
        raise ThetaOutOfRange(f"theta must lie in [0, pi/2], got {theta!r}")
    theta = min(max(theta, 0.0), 0.5 * math.pi)
    if not math.isfinite(params.phi):
        raise ModelError(f"phi must be finite, got {params.phi!r}")
    phi = math.fmod(params.phi, 2.0 * math.pi)
    if phi < 0:
        phi += 2.0 * math.pi
    return replace(params, zeta1=z1 / norm, zeta2=z2 / norm, theta=theta, phi=phi)


def derive(params: ModelParams) -> DerivedConstants:
    R = params.coupling_ratio
    L = R * params.lam
    kappa_sq = params.lam**2 - 4.0 * L * L
    s = 4.0 * R * R
    chi1 = math.sqrt(1.0 - s) if R <= 0.5 else None
    chi2 = math.sqrt(s - 1.0) if R >= 0.5 else None
    return DerivedConstants(vacuum_rabi=L, kappa_sq=kappa_sq, chi1=chi1, chi2=chi2)
