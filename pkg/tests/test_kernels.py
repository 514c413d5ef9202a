import math

import numpy as np
import pytest

from qbcharge import kernels


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.BACKEND in kernels.available_backends()


def test_python_backend_always_available():
    assert "python" in kernels.available_backends()


@pytest.mark.parametrize("R", [0.0, 0.2, 0.5, 0.5 + 5e-10, 0.8, 3.0, 500.0])
def test_mu_agrees_with_reference(backend, R):
    lt = np.linspace(0, 20, 401)
    ref = kernels.available_backends()["python"].mu_array(R, lt)
    np.testing.assert_allclose(backend.mu_array(R, lt), ref, atol=1e-14)


def test_mu_large_times_finite(backend):
    lt = np.array([1e3, 1e5, 1e8])
    out = backend.mu_array(0.01, lt)
    assert np.all(np.isfinite(out))
    assert np.all(out >= 0)


def test_row_observables_agree(backend, rng):
    n = 500
    a, b, _ = rng.dirichlet([1, 1, 1], size=n).T
    e1 = np.sqrt(a) * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
    e2 = np.sqrt(b) * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
    theta = rng.uniform(0, math.pi / 2, n)
    lt = rng.uniform(0, 5, n)
    lt[:3] = [0.0, np.nan, np.inf]
    ref = kernels.available_backends()["python"].row_observables(e1, e2, theta, lt)
    got = backend.row_observables(e1, e2, theta, lt)
    assert got.shape == (n, len(kernels.OBSERVABLE_COLUMNS))
    np.testing.assert_array_equal(np.isnan(got), np.isnan(ref))
    np.testing.assert_allclose(got, ref, atol=1e-12)
    assert got[0, 2] == 0.0
    assert np.isnan(got[1, 2])
    assert got[2, 2] == 0.0


def test_rate_undefined_without_charger_loss(backend):
    out = backend.row_observables(np.array([1.0 + 0j]), np.array([0j]), np.array([math.pi / 2]),
                                  np.array([1.0]))
    assert np.isnan(out[0, 3])
    assert out[0, 0] == 0.0 and out[0, 1] == 0.0


def test_rk4_agrees(backend):
    ref = kernels.available_backends()["python"].rk4_damped(1.3, 5.0, 2000)
    got = backend.rk4_damped(1.3, 5.0, 2000)
    for r, g in zip(ref, got):
        np.testing.assert_allclose(g, r, atol=1e-14)


def test_jacobi_agrees(backend, rng):
    x = rng.normal(size=(50, 4, 4)) + 1j * rng.normal(size=(50, 4, 4))
    h = x + np.conj(np.swapaxes(x, 1, 2))
    w, v = backend.jacobi_eigh(h)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
    rec = v @ (w[:, :, None] * np.conj(np.swapaxes(v, 1, 2)))
    np.testing.assert_allclose(rec, h, atol=1e-12)
    eye = np.conj(np.swapaxes(v, 1, 2)) @ v
    np.testing.assert_allclose(eye, np.broadcast_to(np.eye(4), eye.shape), atol=1e-12)


def test_jacobi_diagonal_input(backend):
    w, v = backend.jacobi_eigh(np.diag([2.0, -1.0, 0.5]).astype(complex)[None])
    np.testing.assert_array_equal(w[0], [-1.0, 0.5, 2.0])
