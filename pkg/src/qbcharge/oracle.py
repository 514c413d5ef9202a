"""Independent numerical ground truth for the closed forms.

Nothing here uses the analytic kernel or the closed-form spectra: the kernel
is integrated from its defining ODE, spectra come from a Jacobi eigensolver,
and post-measurement states are built explicitly from Pauli matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .density import EG, GE, TwoQubitState
from .errors import NotHermitian, StepTooLarge, UnsupportedAxes
from .params import ModelParams

HERMITIAN_TOL = 1e-10
EIG_NOISE_TOL = 1e-10

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
_ID2 = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class OdeSolution:
    lt: np.ndarray
    mu: np.ndarray
    dmu: np.ndarray


def default_ode_step(coupling_ratio: float) -> float:
    return min(1e-3, 0.025 / max(1.0, 4.0 * coupling_ratio))


def integrate_mu(params: ModelParams, lt_max: float, step: float | None = None) -> OdeSolution:
    """RK4 solution of mu'' + mu' + R^2 mu = 0 (time in units of 1/lambda).

    The step is shrunk to divide ``lt_max`` evenly.
    """
    R = params.coupling_ratio
    if step is None:
        step = default_ode_step(R)
    if not lt_max > 0:
        raise ValueError(f"lt_max must be > 0, got {lt_max!r}")
    if not (step > 0 and 4.0 * R * step < 0.5):
        raise StepTooLarge(f"step {step!r} does not resolve oscillations at R={R!r}")
    n = max(1, int(math.ceil(lt_max / step - 1e-9)))
    lt, mu, dmu = kernels.rk4_damped(R, float(lt_max), n)
    return OdeSolution(lt=lt, mu=mu, dmu=dmu)


def eig_hermitian(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvector columns."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] > 4:
        raise ValueError(f"expected a square matrix of size <= 4, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    w, v = kernels.jacobi_eigh(m[None])
    return w[0], v[0]


def eigvals_batch(mats) -> np.ndarray:
    w, _ = kernels.jacobi_eigh(mats)
    return w


def entropy_bits(eigenvalues) -> np.ndarray:
    """Von Neumann entropy along the last axis of an eigenvalue array."""
    w = np.asarray(eigenvalues, dtype=np.float64)
    if w.min(initial=0.0) < -EIG_NOISE_TOL:
        raise ValueError(f"negative eigenvalue {w.min()!r}")
    w = np.clip(w, 0.0, 1.0)
    pos = w > 0.0
    return -np.sum(np.where(pos, w * np.log2(np.where(pos, w, 1.0)), 0.0), axis=-1)


def measurement_channel(state, axis: str):
    """Non-selective Pauli measurement on qubit A: (rho + P rho P) / 2.

    Accepts a TwoQubitState or an ``(..., 4, 4)`` array; returns the same kind.
    """
    if axis not in PAULI:
        raise UnsupportedAxes(f"unknown axis {axis!r}")
    rho = state.matrix if isinstance(state, TwoQubitState) else np.asarray(state)
    op = np.kron(PAULI[axis], _ID2)
    out = 0.5 * (rho + op @ rho @ op)
    return TwoQubitState(out) if isinstance(state, TwoQubitState) else out


def partial_trace_A(rho) -> np.ndarray:
    """rho_B for an ``(..., 4, 4)`` array, by explicit index summation."""
    r = np.asarray(rho)
    t = r.reshape(r.shape[:-2] + (2, 2, 2, 2))
    return t[..., 0, :, 0, :] + t[..., 1, :, 1, :]


def model_states(eta1, eta2) -> np.ndarray:
    """Stack of model density matrices for arrays of amplitudes."""
    eta1 = np.atleast_1d(np.asarray(eta1, dtype=np.complex128))
    eta2 = np.atleast_1d(np.asarray(eta2, dtype=np.complex128))
    rho = np.zeros(eta1.shape + (4, 4), dtype=np.complex128)
    psi = np.zeros(eta1.shape + (4,), dtype=np.complex128)
    psi[..., EG] = eta1
    psi[..., GE] = eta2
    rho += psi[..., :, None] * psi[..., None, :].conj()
    rho[..., 3, 3] += 1.0 - np.abs(eta1) ** 2 - np.abs(eta2) ** 2
    return rho


def brute_eur(state, axes) -> tuple:
    """(sum of S(P|B) over axes, (n-1) S(A|B) + 1) for Pauli axes, n in {2, 3}.

    Works on a single state or an ``(N, 4, 4)`` stack (then returns arrays).
    """
    axes = tuple(axes)
    if len(axes) not in (2, 3) or len(set(axes)) != len(axes) or not set(axes) <= set(PAULI):
        raise UnsupportedAxes(f"axes must be 2 or 3 distinct Pauli labels, got {axes!r}")
    rho = state.matrix if isinstance(state, TwoQubitState) else np.asarray(state)
    single = rho.ndim == 2
    rho = rho.reshape((-1, 4, 4))
    s_b = entropy_bits(eigvals_batch(partial_trace_A(rho)))
    s_ab = entropy_bits(eigvals_batch(rho))
    left = np.zeros(rho.shape[0])
    for ax in axes:
        left += entropy_bits(eigvals_batch(measurement_channel(rho, ax))) - s_b
    right = (len(axes) - 1) * (s_ab - s_b) + 1.0
    if single:
        return float(left[0]), float(right[0])
    return left, right


def concurrence_wootters(rho) -> float:
    """General two-qubit concurrence from the spin-flipped spectrum."""
    rho = rho.matrix if isinstance(rho, TwoQubitState) else np.asarray(rho)
    yy = np.kron(PAULI["y"], PAULI["y"])
    tilde = yy @ rho.conj() @ yy
    # sqrt(rho) tilde sqrt(rho) is Hermitian with the same spectrum as rho tilde
    w, v = eig_hermitian(rho)
    sq = v @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    r = sq @ tilde @ sq
    lam, _ = eig_hermitian(0.5 * (r + r.conj().T))
    s = np.sqrt(np.clip(lam, 0.0, None))[::-1]
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))
