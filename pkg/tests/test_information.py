import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbcharge import oracle
from qbcharge.density import joint_state
from qbcharge.dynamics import AmplitudePair, steady_amplitudes
from qbcharge.errors import NoSteadyState, NotXState
from qbcharge.information import (
    concurrence,
    concurrence_xstate,
    d_factor,
    eur_three,
    eur_two,
    eur_two_steady,
    gamma_x,
    gamma_z,
    tightness,
    uncertainty_report,
)
from qbcharge.params import ModelParams, validate

S = 1 / math.sqrt(2)

# a = 0.3, b = 0.2, real amplitudes; from numpy eigvalsh on explicit channels
FROZEN_03_02 = {"u_left_xz": 1.5496307044046578, "u_right_2": 1.2780719051126375,
                "u_left_xyz": 2.3357142064693437}


def amps_from(a, b, pa=0.0, pb=0.0):
    return AmplitudePair(math.sqrt(a) * complex(math.cos(pa), math.sin(pa)),
                         math.sqrt(b) * complex(math.cos(pb), math.sin(pb)))


@st.composite
def populations(draw):
    a = draw(st.floats(0.0, 1.0))
    b = draw(st.floats(0.0, 1.0 - a))
    pa = draw(st.floats(0.0, 2 * math.pi))
    pb = draw(st.floats(0.0, 2 * math.pi))
    return amps_from(a, b, pa, pb)


@pytest.mark.parametrize(
    "amps, expected",
    [
        (AmplitudePair(S, S), 1.0),
        (AmplitudePair(1.0, 0.0), 0.0),
        (AmplitudePair(0.0, 0.0), 0.0),
        (amps_from(0.3, 0.2), 2 * math.sqrt(0.06)),
        (AmplitudePair(0.6j, -0.8), 0.96),
    ],
)
def test_concurrence_examples(amps, expected):
    assert concurrence(amps) == pytest.approx(expected, abs=1e-15)


def test_concurrence_xstate_matches(rng):
    for _ in range(200):
        a, b, _ = rng.dirichlet([1, 1, 1])
        amps = amps_from(a, b, *rng.uniform(0, 2 * math.pi, 2))
        state = joint_state(amps)
        assert concurrence_xstate(state) == pytest.approx(concurrence(amps), abs=1e-12)
        assert oracle.concurrence_wootters(state) == pytest.approx(concurrence(amps), abs=1e-7)


def test_concurrence_xstate_bell_phi_plus():
    rho = np.zeros((4, 4))
    rho[np.ix_([0, 3], [0, 3])] = 0.5
    assert concurrence_xstate(rho) == pytest.approx(1.0)


def test_concurrence_xstate_rejects_general_state():
    rho = np.full((4, 4), 0.25)
    with pytest.raises(NotXState):
        concurrence_xstate(rho)


def test_spectra_at_ground_state():
    amps = AmplitudePair(0.0, 0.0)
    assert d_factor(0.0, 0.0) == 1.0
    assert gamma_x(amps) == (0.0, 0.0, 0.5, 0.5)
    assert gamma_z(amps) == (0.0, 0.0, 0.0, 1.0)


def test_gamma_x_matches_explicit_channel(rng):
    for _ in range(50):
        a, b, _ = rng.dirichlet([1, 1, 1])
        amps = amps_from(a, b, *rng.uniform(0, 2 * math.pi, 2))
        rho = oracle.measurement_channel(joint_state(amps), "x").matrix
        w, _ = oracle.eig_hermitian(rho)
        np.testing.assert_allclose(w, sorted(gamma_x(amps)), atol=1e-12)
        rho = oracle.measurement_channel(joint_state(amps), "z").matrix
        w, _ = oracle.eig_hermitian(rho)
        np.testing.assert_allclose(w, sorted(gamma_z(amps)), atol=1e-12)


def test_ground_state_uncertainties():
    assert eur_two(AmplitudePair(0.0, 0.0)) == pytest.approx((1.0, 1.0), abs=1e-15)
    assert eur_three(AmplitudePair(0.0, 0.0)) == pytest.approx((2.0, 1.0), abs=1e-15)


def test_frozen_interior_point():
    rep = uncertainty_report(amps_from(0.3, 0.2))
    assert rep.u_left_xz == pytest.approx(FROZEN_03_02["u_left_xz"], abs=1e-12)
    assert rep.u_right_2 == pytest.approx(FROZEN_03_02["u_right_2"], abs=1e-12)
    assert rep.u_left_xyz == pytest.approx(FROZEN_03_02["u_left_xyz"], abs=1e-12)
    assert rep.u_right_3 == pytest.approx(2 * FROZEN_03_02["u_right_2"] - 1, abs=1e-12)
    assert rep.tightness_xz == pytest.approx(rep.u_left_xz - rep.u_right_2)


@pytest.mark.parametrize("a", [0.0, 0.1, 0.5, 0.77, 1.0])
def test_hypotenuse_is_tight_for_two_and_offset_for_three(a):
    amps = amps_from(a, 1.0 - a, 0.4, 2.9)
    assert tightness(amps, 2) == pytest.approx(0.0, abs=1e-12)
    assert tightness(amps, 3) == pytest.approx(1.0, abs=1e-12)


def test_symmetric_hypotenuse_values():
    l2, r2 = eur_two(AmplitudePair(S, S))
    l3, r3 = eur_three(AmplitudePair(S, S))
    assert (l2, r2) == pytest.approx((0.0, 0.0), abs=1e-12)
    assert (l3, r3) == pytest.approx((0.0, -1.0), abs=1e-12)


def test_tightness_rejects_other_counts():
    with pytest.raises(ValueError):
        tightness(AmplitudePair(0.0, 0.0), 4)


@settings(max_examples=300, deadline=None)
@given(populations())
def test_bound_holds_and_relations(amps):
    l2, r2 = eur_two(amps)
    l3, r3 = eur_three(amps)
    assert l2 - r2 >= -1e-10
    assert l3 - r3 >= -1e-10
    assert r3 == pytest.approx(2 * r2 - 1, abs=1e-12)
    d = d_factor(abs(amps.eta1) ** 2, abs(amps.eta2) ** 2)
    assert 0.0 <= d <= 1.0 + 1e-12


@settings(max_examples=100, deadline=None)
@given(populations())
def test_phases_do_not_matter(amps):
    real = AmplitudePair(abs(amps.eta1), abs(amps.eta2))
    assert eur_two(amps) == pytest.approx(eur_two(real), abs=1e-12)
    assert eur_three(amps) == pytest.approx(eur_three(real), abs=1e-12)


def test_closed_forms_match_brute_force(rng):
    for _ in range(100):
        a, b, _ = rng.dirichlet([1, 1, 1])
        amps = amps_from(a, b, *rng.uniform(0, 2 * math.pi, 2))
        state = joint_state(amps)
        assert eur_two(amps) == pytest.approx(oracle.brute_eur(state, "xz"), abs=1e-10)
        assert eur_three(amps) == pytest.approx(oracle.brute_eur(state, "xyz"), abs=1e-10)


def test_steady_closed_form_consistent(rng):
    for _ in range(100):
        p = validate(ModelParams(coupling_ratio=rng.uniform(0.01, 10), zeta1=rng.uniform(),
                                 theta=rng.uniform(0, math.pi / 2), phi=rng.uniform(0, 2 * math.pi)))
        assert eur_two_steady(p) == pytest.approx(eur_two(steady_amplitudes(p)), abs=1e-10)


def test_steady_needs_coupling():
    with pytest.raises(NoSteadyState):
        eur_two_steady(ModelParams(coupling_ratio=0.0))


def test_d_is_one_exactly_on_edges_and_empty_battery():
    a, b = np.meshgrid(np.linspace(0, 1, 41), np.linspace(0, 1, 41))
    feasible = a + b <= 1 + 1e-12
    d = np.vectorize(d_factor)(a, b)
    edge = feasible & ((np.abs(a + b - 1) < 1e-12) | (b == 0))
    np.testing.assert_allclose(d[edge], 1.0, atol=1e-12)
    assert np.all(d[feasible & ~edge] < 1 - 1e-6)
    assert np.all((d[feasible] >= 0) & (d[feasible] <= 1 + 1e-12))
