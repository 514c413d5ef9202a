"""Cross-checks of every closed form against the independent oracle.

Each check returns a measured discrepancy; it passes when that number is at
most its tolerance. The ``verify`` CLI command prints the resulting table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import information, kernels, oracle
from .dynamics import AmplitudePair, amplitudes, amplitudes_from_mu, kernel_mu, steady_amplitudes
from .params import ModelParams, validate

ORACLE_R_VALUES = (0.1, 0.3, 0.5, 0.7, 1.0, 5.0, 50.0)


@dataclass(frozen=True)
class Check:
    name: str
    tolerance: float
    run: Callable[[np.random.Generator, int], float]
    description: str = ""


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)


def random_populations(rng, n, *, on_hypotenuse=False):
    """Uniform samples (a, b) from the simplex a + b <= 1 (or its edge a + b = 1)."""
    if on_hypotenuse:
        a = rng.uniform(0.0, 1.0, n)
        return a, 1.0 - a
    w = rng.dirichlet(np.ones(3), size=n)
    return w[:, 0], w[:, 1]


def random_amplitudes(rng, n, *, complex_phases=True, on_hypotenuse=False):
    a, b = random_populations(rng, n, on_hypotenuse=on_hypotenuse)
    eta1 = np.sqrt(a).astype(np.complex128)
    eta2 = np.sqrt(b).astype(np.complex128)
    if complex_phases:
        eta1 *= np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n))
        eta2 *= np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n))
    return eta1, eta2


def random_params(rng, n, *, r_max=5.0):
    out = []
    for _ in range(n):
        z1 = rng.uniform(0.0, 1.0)
        out.append(
            validate(
                ModelParams(
                    lam=rng.uniform(0.1, 3.0),
                    coupling_ratio=rng.uniform(0.01, r_max),
                    zeta1=z1,
                    theta=rng.uniform(0.0, 0.5 * math.pi),
                    phi=rng.uniform(0.0, 2.0 * math.pi),
                )
            )
        )
    return out


def kernel_vs_ode_error(R_values=ORACLE_R_VALUES, lt_max=10.0) -> float:
    worst = 0.0
    for R in R_values:
        p = ModelParams(coupling_ratio=R)
        sol = oracle.integrate_mu(p, lt_max)
        worst = max(worst, float(np.abs(kernel_mu(p, sol.lt) - sol.mu).max()))
    return worst


def closed_vs_oracle_eur(eta1, eta2) -> float:
    """Max |closed form - oracle| over U_l^xz, U_r^2, U_l^xyz, U_r^3."""
    n = len(eta1)
    obs = kernels.row_observables(eta1, eta2, np.full(n, 0.5 * math.pi), np.zeros(n))
    rho = oracle.model_states(eta1, eta2)
    l2, r2 = oracle.brute_eur(rho, "xz")
    l3, r3 = oracle.brute_eur(rho, "xyz")
    cols = kernels.OBSERVABLE_COLUMNS
    diffs = [
        obs[:, cols.index("u_left_xz")] - l2,
        obs[:, cols.index("u_right_2")] - r2,
        obs[:, cols.index("u_left_xyz")] - l3,
        obs[:, cols.index("u_right_3")] - r3,
    ]
    return float(max(np.abs(d).max() for d in diffs))


def _check_kernel_ode(rng, n):
    return kernel_vs_ode_error()


def _check_critical_continuity(rng, n):
    lt = np.linspace(0.0, 20.0, 2001)
    lo = kernel_mu(ModelParams(coupling_ratio=0.5 - 1e-7), lt)
    hi = kernel_mu(ModelParams(coupling_ratio=0.5 + 1e-7), lt)
    return float(np.abs(lo - hi).max())


def _check_amplitudes_ode(rng, n):
    worst = 0.0
    for p in random_params(rng, min(n, 20)):
        sol = oracle.integrate_mu(p, 10.0)
        idx = np.linspace(0, len(sol.lt) - 1, 25).astype(int)
        for i in idx:
            ref = amplitudes_from_mu(p, sol.mu[i])
            got = amplitudes(p, sol.lt[i])
            worst = max(worst, abs(got.eta1 - ref.eta1), abs(got.eta2 - ref.eta2))
    return worst


def _check_eur_real(rng, n):
    return closed_vs_oracle_eur(*random_amplitudes(rng, n, complex_phases=False))


def _check_eur_complex(rng, n):
    return closed_vs_oracle_eur(*random_amplitudes(rng, n, complex_phases=True))


def _check_eur_scalar_api(rng, n):
    eta1, eta2 = random_amplitudes(rng, min(n, 200))
    rho = oracle.model_states(eta1, eta2)
    l2, r2 = oracle.brute_eur(rho, "xz")
    l3, r3 = oracle.brute_eur(rho, "xyz")
    worst = 0.0
    for i in range(len(eta1)):
        amps = AmplitudePair(complex(eta1[i]), complex(eta2[i]))
        a2, b2 = information.eur_two(amps)
        a3, b3 = information.eur_three(amps)
        worst = max(worst, abs(a2 - l2[i]), abs(b2 - r2[i]), abs(a3 - l3[i]), abs(b3 - r3[i]))
    return worst


def _check_steady(rng, n):
    worst = 0.0
    for p in random_params(rng, min(n, 500)):
        closed = information.eur_two_steady(p)
        generic = information.eur_two(steady_amplitudes(p))
        worst = max(worst, abs(closed[0] - generic[0]), abs(closed[1] - generic[1]))
    return worst


def _check_concurrence_xstate(rng, n):
    from .density import joint_state

    eta1, eta2 = random_amplitudes(rng, min(n, 1000))
    worst = 0.0
    for e1, e2 in zip(eta1, eta2):
        amps = AmplitudePair(complex(e1), complex(e2))
        worst = max(worst, abs(information.concurrence(amps)
                               - information.concurrence_xstate(joint_state(amps))))
    return worst


def _check_concurrence_spinflip(rng, n):
    from .density import joint_state

    eta1, eta2 = random_amplitudes(rng, min(n, 200))
    worst = 0.0
    for e1, e2 in zip(eta1, eta2):
        amps = AmplitudePair(complex(e1), complex(e2))
        worst = max(worst, abs(information.concurrence(amps)
                               - oracle.concurrence_wootters(joint_state(amps))))
    return worst


def _check_inequality(rng, n):
    eta1, eta2 = random_amplitudes(rng, n)
    rho = oracle.model_states(eta1, eta2)
    worst = 0.0
    for axes in ("xz", "xyz"):
        left, right = oracle.brute_eur(rho, axes)
        worst = max(worst, float(np.max(right - left)))
    return max(worst, 0.0)


def _check_jacobi(rng, n):
    x = rng.normal(size=(n, 4, 4)) + 1j * rng.normal(size=(n, 4, 4))
    h = x + np.conj(np.swapaxes(x, 1, 2))
    w, v = kernels.jacobi_eigh(h)
    rec = v @ (w[:, :, None] * np.conj(np.swapaxes(v, 1, 2)))
    return float(np.abs(rec - h).max())


def _check_backends(rng, n):
    found = kernels.available_backends()
    if len(found) < 2:
        return 0.0
    eta1, eta2 = random_amplitudes(rng, n)
    theta = rng.uniform(0.0, 0.5 * math.pi, n)
    lt = rng.uniform(0.0, 10.0, n)
    a = found["python"].row_observables(eta1, eta2, theta, lt)
    b = found["cython"].row_observables(eta1, eta2, theta, lt)
    return float(np.nanmax(np.abs(a - b)))


CHECKS = (
    Check("kernel_vs_rk4", 1e-8, _check_kernel_ode, "closed-form mu vs RK4, R in {0.1..50}, lt in [0,10]"),
    Check("mu_critical_continuity", 1e-6, _check_critical_continuity, "mu across R = 1/2 +- 1e-7"),
    Check("amplitudes_vs_rk4", 1e-8, _check_amplitudes_ode, "amplitudes from closed mu vs ODE mu"),
    Check("eur_closed_vs_oracle_real", 1e-10, _check_eur_real, "closed EUR vs channels + Jacobi, real"),
    Check("eur_closed_vs_oracle_complex", 1e-10, _check_eur_complex, "same, complex phases"),
    Check("eur_scalar_api_vs_oracle", 1e-10, _check_eur_scalar_api, "eur_two / eur_three vs oracle"),
    Check("steady_closed_vs_generic", 1e-10, _check_steady, "steady closed form vs generic at mu = 0"),
    Check("concurrence_vs_xstate", 1e-12, _check_concurrence_xstate, "2|eta1 eta2*| vs X-state formula"),
    Check("concurrence_vs_spinflip", 1e-7, _check_concurrence_spinflip, "2|eta1 eta2*| vs spin-flip spectrum"),
    Check("qma_eur_inequality", 1e-10, _check_inequality, "max violation of the uncertainty bound"),
    Check("jacobi_reconstruction", 1e-10, _check_jacobi, "|V diag(w) V^H - M|_max"),
    Check("backend_agreement", 1e-12, _check_backends, "compiled vs NumPy row kernel"),
)


def run_checks(samples: int = 2000, seed: int = 12345, tolerances: dict | None = None):
    tolerances = tolerances or {}
    unknown = set(tolerances) - {c.name for c in CHECKS}
    if unknown:
        raise KeyError(f"unknown check name(s): {', '.join(sorted(unknown))}")
    results = []
    for i, check in enumerate(CHECKS):
        rng = np.random.default_rng([seed, i])
        value = float(check.run(rng, samples))
        results.append(CheckResult(check.name, value, float(tolerances.get(check.name, check.tolerance))))
    return results


def format_table(results) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  {'measured':>10}  {'tolerance':>9}  result"]
    for r in results:
        lines.append(
            f"{r.name:<{width}}  {r.value:10.3e}  {r.tolerance:9.1e}  {'PASS' if r.passed else 'FAIL'}"
        )
    return "\n".join(lines)
