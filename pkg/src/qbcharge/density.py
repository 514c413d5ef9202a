"""Two-qubit density operators, partial traces and von Neumann entropies.

Basis order is fixed throughout the package: ``|ee>, |eg>, |ge>, |gg>`` for
the pair (charger A first) and ``|e>, |g>`` for a single qubit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import AmplitudePair
from .errors import NotDensityMatrix, PopulationOverflow

POPULATION_TOL = 1e-10
EIG_CLIP_TOL = 1e-10

EE, EG, GE, GG = range(4)


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class QubitState:
    matrix: np.ndarray


def joint_state(amps: AmplitudePair) -> TwoQubitState:
    a = abs(amps.eta1) ** 2
    b = abs(amps.eta2) ** 2
    if a + b > 1.0 + POPULATION_TOL:
        raise PopulationOverflow(f"|eta1|^2 + |eta2|^2 = {a + b!r} exceeds 1")
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[EG, EG] = a
    rho[GE, GE] = b
    rho[EG, GE] = amps.eta1 * np.conj(amps.eta2)
    rho[GE, EG] = np.conj(amps.eta1) * amps.eta2
    rho[GG, GG] = max(1.0 - a - b, 0.0)
    return TwoQubitState(rho)


def _as_tensor(state):
    m = state.matrix if isinstance(state, TwoQubitState) else np.asarray(state)
    return m.reshape(2, 2, 2, 2)


def reduce_B(state: TwoQubitState) -> QubitState:
    """Trace out the charger."""
    return QubitState(np.einsum("ijik->jk", _as_tensor(state)))


def reduce_A(state: TwoQubitState) -> QubitState:
    """Trace out the battery."""
    return QubitState(np.einsum("ijkj->ik", _as_tensor(state)))


def clipped_eigenvalues(matrix) -> np.ndarray:
    """Eigenvalues of a density matrix with numerical noise clipped into [0, 1].

    Violations larger than 1e-10 raise NotDensityMatrix instead.
    """
    w = np.linalg.eigvalsh(np.asarray(matrix))
    if w.min() < -EIG_CLIP_TOL or w.max() > 1.0 + EIG_CLIP_TOL:
        raise NotDensityMatrix(f"eigenvalues {w} outside [0, 1]")
    return np.clip(w, 0.0, 1.0)


def shannon_bits(probs) -> float:
    p = np.asarray(probs, dtype=np.float64)
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p)))


def binary_entropy(p: float) -> float:
    return shannon_bits([p, 1.0 - p])


def von_neumann_entropy(matrix) -> float:
    if isinstance(matrix, (TwoQubitState, QubitState)):
        matrix = matrix.matrix
    return shannon_bits(clipped_eigenvalues(matrix))


def conditional_entropy_AB(state: TwoQubitState) -> float:
    """S(A|B) = S(rho_AB) - S(rho_B); negative values witness entanglement."""
    return von_neumann_entropy(state) - von_neumann_entropy(reduce_B(state))
