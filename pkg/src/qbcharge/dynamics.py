"""Memory kernel and single-excitation amplitudes of the charger-battery pair."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NegativeTime, NoSteadyState
from .params import ModelParams


@dataclass(frozen=True)
class AmplitudePair:
    """Amplitudes of |e>_A|g>_B (``eta1``) and |g>_A|e>_B (``eta2``)."""

    eta1: complex
    eta2: complex

    @property
    def population(self) -> float:
        return abs(self.eta1) ** 2 + abs(self.eta2) ** 2


def sin_cos(theta: float) -> tuple[float, float]:
    """(sin theta, cos theta), exact at both ends of [0, pi/2]."""
    if theta > 0.25 * math.pi:
        rest = 0.5 * math.pi - theta
        return math.cos(rest), math.sin(rest)
    return math.sin(theta), math.cos(theta)


def initial_amplitudes(params: ModelParams) -> AmplitudePair:
    s, c = sin_cos(params.theta)
    return AmplitudePair(
        eta1=s * complex(math.cos(params.phi), math.sin(params.phi)),
        eta2=complex(c),
    )


def _check_times(lt):
    lt = np.asarray(lt, dtype=np.float64)
    if np.any(lt < 0) or np.any(np.isnan(lt)):
        raise NegativeTime("dimensionless time lt must be >= 0")
    return lt


def kernel_mu(params: ModelParams, lt):
    """mu(lt) for a scalar or array of dimensionless times.

    Weak coupling (R < 1/2) gives a monotone decay, strong coupling an
    oscillating one; |R - 1/2| <= 1e-9 uses the critical closed form.
    """
    arr = _check_times(lt)
    out = kernels.mu_array(params.coupling_ratio, np.atleast_1d(arr).ravel())
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def _propagate(params: ModelParams, mu):
    z1, z2 = params.zeta1, params.zeta2
    s, e02 = sin_cos(params.theta)
    e01 = s * complex(math.cos(params.phi), math.sin(params.phi))
    one_minus = 1.0 - mu
    eta1 = (z2 * z2 + z1 * z1 * mu) * e01 - z1 * z2 * one_minus * e02
    eta2 = (z1 * z1 + z2 * z2 * mu) * e02 - z1 * z2 * one_minus * e01
    return eta1, eta2


def amplitudes(params: ModelParams, lt) -> AmplitudePair:
    mu = kernel_mu(params, lt)
    eta1, eta2 = _propagate(params, mu)
    return AmplitudePair(complex(eta1), complex(eta2))


def amplitude_arrays(params: ModelParams, lt) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``amplitudes``: complex arrays (eta1, eta2) over ``lt``."""
    mu = np.atleast_1d(kernel_mu(params, lt))
    eta1, eta2 = _propagate(params, mu.astype(np.complex128))
    return eta1, eta2


def amplitudes_from_mu(params: ModelParams, mu) -> AmplitudePair:
    """Amplitudes for an externally supplied kernel value (e.g. an ODE solution)."""
    eta1, eta2 = _propagate(params, mu)
    return AmplitudePair(complex(eta1), complex(eta2))


def steady_amplitudes(params: ModelParams) -> AmplitudePair:
    """Long-time amplitudes, obtained by setting mu = 0 exactly.

    Raises NoSteadyState for R = 0, where nothing decays.
    """
    if params.coupling_ratio == 0:
        raise NoSteadyState("R = 0: the amplitudes keep their initial values")
    return amplitudes_from_mu(params, 0.0)
