import math

import numpy as np
import pytest

from qbcharge import oracle
from qbcharge.density import (
    EG,
    GE,
    GG,
    binary_entropy,
    conditional_entropy_AB,
    joint_state,
    reduce_A,
    reduce_B,
    von_neumann_entropy,
)
from qbcharge.dynamics import AmplitudePair
from qbcharge.errors import NotDensityMatrix, PopulationOverflow

S = 1 / math.sqrt(2)

# h(0.3) = -0.3 log2 0.3 - 0.7 log2 0.7
H_03 = 0.8812908992306927
# h(0.8) - h(0.3)
H_08_MINUS_H_03 = -0.1593628043433304


def random_amps(rng):
    a, b, _ = rng.dirichlet([1, 1, 1])
    return AmplitudePair(
        math.sqrt(a) * np.exp(1j * rng.uniform(0, 2 * math.pi)),
        math.sqrt(b) * np.exp(1j * rng.uniform(0, 2 * math.pi)),
    )


def test_single_amplitude_is_pure_eg():
    rho = joint_state(AmplitudePair(1.0, 0.0)).matrix
    expected = np.zeros((4, 4))
    expected[EG, EG] = 1.0
    np.testing.assert_array_equal(rho, expected)


def test_decayed_state_is_ground():
    rho = joint_state(AmplitudePair(0.0, 0.0)).matrix
    expected = np.zeros((4, 4))
    expected[GG, GG] = 1.0
    np.testing.assert_array_equal(rho, expected)


def test_symmetric_superposition_is_rank_one():
    rho = joint_state(AmplitudePair(S, S)).matrix
    w, _ = oracle.eig_hermitian(rho)
    np.testing.assert_allclose(w, [0, 0, 0, 1], atol=1e-14)


def test_overflow_rejected():
    with pytest.raises(PopulationOverflow):
        joint_state(AmplitudePair(0.8, 0.7))


def test_state_invariants(rng):
    for _ in range(200):
        amps = random_amps(rng)
        rho = joint_state(amps).matrix
        assert np.abs(rho - rho.conj().T).max() < 1e-12
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert np.all(rho[0, :] == 0) and np.all(rho[:, 0] == 0)
        w = np.linalg.eigvalsh(rho)
        assert w.min() > -1e-10
        p = amps.population
        np.testing.assert_allclose(np.sort(w), np.sort([0, 0, 1 - p, p]), atol=1e-12)


def test_reduce_b_of_eg():
    rho_b = reduce_B(joint_state(AmplitudePair(1.0, 0.0))).matrix
    np.testing.assert_array_equal(rho_b, np.diag([0.0, 1.0]))


def test_reduce_b_of_symmetric_state():
    rho_b = reduce_B(joint_state(AmplitudePair(S, S))).matrix
    np.testing.assert_allclose(rho_b, np.diag([0.5, 0.5]), atol=1e-15)


def test_reductions_match_generic_partial_trace(rng):
    for _ in range(100):
        amps = random_amps(rng)
        state = joint_state(amps)
        rho_b = reduce_B(state).matrix
        np.testing.assert_allclose(rho_b, oracle.partial_trace_A(state.matrix), atol=1e-12)
        np.testing.assert_allclose(rho_b, np.diag([abs(amps.eta2) ** 2, 1 - abs(amps.eta2) ** 2]),
                                   atol=1e-12)
        rho_a = reduce_A(state).matrix
        np.testing.assert_allclose(rho_a, np.diag([abs(amps.eta1) ** 2, 1 - abs(amps.eta1) ** 2]),
                                   atol=1e-12)


def test_partial_trace_preserves_trace_and_positivity(rng):
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = x @ x.conj().T
    rho /= np.trace(rho)
    for red in (reduce_A(rho), reduce_B(rho)):
        assert np.trace(red.matrix).real == pytest.approx(1.0)
        assert np.linalg.eigvalsh(red.matrix).min() > -1e-12


@pytest.mark.parametrize(
    "matrix, expected",
    [
        (np.diag([1.0, 0, 0, 0]), 0.0),
        (np.diag([0.5, 0.5]), 1.0),
        (np.diag([0.3, 0.7, 0, 0]), H_03),
        (np.eye(4) / 4, 2.0),
    ],
)
def test_von_neumann_entropy(matrix, expected):
    assert von_neumann_entropy(matrix) == pytest.approx(expected, abs=1e-12)


def test_binary_entropy_matches_eigensolver_path():
    assert binary_entropy(0.3) == pytest.approx(H_03, abs=1e-15)
    w, _ = oracle.eig_hermitian(np.diag([0.3, 0.7, 0.0, 0.0]))
    assert oracle.entropy_bits(w) == pytest.approx(H_03, abs=1e-12)


def test_tiny_eigenvalues_do_not_change_entropy():
    base = von_neumann_entropy(np.diag([0.4, 0.6, 0, 0]))
    noisy = von_neumann_entropy(np.diag([0.4, 0.6 - 1e-15, 1e-15, 0]))
    assert noisy == pytest.approx(base, abs=1e-12)


def test_negative_spectrum_rejected():
    with pytest.raises(NotDensityMatrix):
        von_neumann_entropy(np.diag([1.1, -0.1]))


def test_conditional_entropy_examples():
    assert conditional_entropy_AB(joint_state(AmplitudePair(S, S))) == pytest.approx(-1.0, abs=1e-12)
    assert conditional_entropy_AB(joint_state(AmplitudePair(0.0, 0.0))) == pytest.approx(0.0, abs=1e-15)
    amps = AmplitudePair(math.sqrt(0.5), math.sqrt(0.3) * 1j)
    assert conditional_entropy_AB(joint_state(amps)) == pytest.approx(H_08_MINUS_H_03, abs=1e-12)


def test_joint_entropy_is_binary_entropy_of_population(rng):
    for _ in range(100):
        amps = random_amps(rng)
        rho = joint_state(amps).matrix
        w, _ = oracle.eig_hermitian(rho)
        assert oracle.entropy_bits(w) == pytest.approx(binary_entropy(amps.population), abs=1e-10)
        assert von_neumann_entropy(rho) == pytest.approx(binary_entropy(amps.population), abs=1e-10)
