import math

import pytest

from qbcharge.errors import (
    NegativeCouplingRatio,
    NonPositiveLambda,
    NonPositiveOmega,
    ThetaOutOfRange,
    ZetaNotNormalized,
)
from qbcharge.params import ModelParams, derive, validate


def test_symmetric_figure_parameters_accepted():
    p = validate(ModelParams(lam=1, coupling_ratio=0.3, zeta1=1 / math.sqrt(2),
                             zeta2=1 / math.sqrt(2), theta=math.pi / 2, phi=0, omega0=1))
    assert p.zeta1 == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert p.zeta1**2 + p.zeta2**2 == pytest.approx(1.0, abs=1e-12)


def test_boundary_values_accepted():
    p = validate(ModelParams(lam=1, coupling_ratio=0, zeta1=1, zeta2=0, theta=0, phi=0, omega0=1))
    assert (p.zeta1, p.zeta2, p.theta) == (1.0, 0.0, 0.0)


def test_zeta_pair_must_be_normalized():
    with pytest.raises(ZetaNotNormalized):
        validate(ModelParams(coupling_ratio=0.3, zeta1=0.9, zeta2=0.9))


def test_small_zeta_deviation_is_renormalized():
    p = validate(ModelParams(zeta1=0.6, zeta2=0.8 + 5e-10))
    assert math.hypot(p.zeta1, p.zeta2) == pytest.approx(1.0, abs=1e-15)


def test_zeta2_auto_fills():
    p = ModelParams(zeta1=0.6)
    assert p.zeta2 == pytest.approx(0.8)


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"lam": 0.0}, NonPositiveLambda),
        ({"lam": -1.0}, NonPositiveLambda),
        ({"coupling_ratio": -0.1}, NegativeCouplingRatio),
        ({"omega0": 0.0}, NonPositiveOmega),
        ({"theta": -0.1}, ThetaOutOfRange),
        ({"theta": 1.6}, ThetaOutOfRange),
        ({"zeta1": -0.6, "zeta2": 0.8}, ZetaNotNormalized),
    ],
)
def test_invalid_parameters(kwargs, error):
    with pytest.raises(error):
        validate(ModelParams(**kwargs))


def test_phase_wrapped():
    assert validate(ModelParams(phi=-math.pi / 2)).phi == pytest.approx(1.5 * math.pi)
    assert validate(ModelParams(phi=math.pi)).phi == math.pi


def test_derive_uncoupled():
    d = derive(ModelParams(coupling_ratio=0.0))
    assert d.vacuum_rabi == 0.0
    assert d.chi1 == 1.0
    assert d.chi2 is None


def test_derive_critical_point():
    d = derive(ModelParams(lam=1.0, coupling_ratio=0.5))
    assert d.kappa_sq == 0.0
    assert d.chi1 == 0.0 and d.chi2 == 0.0


def test_derive_strong():
    d = derive(ModelParams(lam=1.0, coupling_ratio=1.0))
    assert d.chi2 == pytest.approx(math.sqrt(3.0), abs=1e-15)
    assert d.chi1 is None
    assert d.kappa_sq == pytest.approx(-3.0)


@pytest.mark.parametrize("R", [0.0, 0.1, 0.25, 0.49, 0.5, 0.51, 1.0, 7.5, 500.0])
def test_chi_identities(R):
    d = derive(ModelParams(lam=2.0, coupling_ratio=R))
    assert d.vacuum_rabi == pytest.approx(2.0 * R)
    if R <= 0.5:
        assert d.chi1**2 + 4 * R * R == pytest.approx(1.0, abs=1e-12)
    if R >= 0.5:
        assert d.chi2**2 == pytest.approx(4 * R * R - 1, abs=1e-9)
