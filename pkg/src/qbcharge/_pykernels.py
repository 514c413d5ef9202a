"""NumPy implementations of the numerical kernels.

Used when the compiled ``_ckernels`` extension is unavailable or disabled. The
function signatures here are the contract both backends honour.
"""

import math

import numpy as np

CRITICAL_WINDOW = 1e-9
UNDEFINED_RATE_TOL = 1e-12

# Column order of ``row_observables`` output.
OBSERVABLE_COLUMNS = (
    "delta_e_b",
    "delta_e_a",
    "power",
    "transfer_rate",
    "concurrence",
    "u_left_xz",
    "u_right_2",
    "tightness_xz",
    "u_left_xyz",
    "u_right_3",
    "tightness_xyz",
)


def mu_array(R, lt):
    """Memory kernel mu at dimensionless times ``lt`` (1-D float array, lt >= 0)."""
    R = float(R)
    h = 0.5 * np.asarray(lt, dtype=np.float64)
    if abs(R - 0.5) <= CRITICAL_WINDOW:
        return np.exp(-h) * (1.0 + h)
    if R < 0.5:
        chi = math.sqrt((1.0 - 2.0 * R) * (1.0 + 2.0 * R))
        x = chi * h
        # e^{-h} cosh(x) and e^{-h} sinh(x)/chi without overflow or cancellation
        lead = np.exp(x - h)
        em = np.expm1(-2.0 * x)
        return lead * (1.0 + 0.5 * em) - lead * em / (2.0 * chi)
    chi = math.sqrt((2.0 * R - 1.0) * (2.0 * R + 1.0))
    y = chi * h
    return np.exp(-h) * (np.cos(y) + np.sin(y) / chi)


def _xlog2x(x):
    pos = x > 0.0
    return np.where(pos, x * np.log2(np.where(pos, x, 1.0)), 0.0)


def row_observables(eta1, eta2, theta, lt):
    """Energetics, concurrence and entropic uncertainties for many states at once.

    ``eta1``, ``eta2`` are complex arrays, ``theta`` and ``lt`` float arrays of
    the same length (``lt`` may be NaN for rows without a time, ``inf`` for
    steady rows). Returns an ``(n, 11)`` array ordered as OBSERVABLE_COLUMNS,
    NaN marking undefined entries.
    """
    eta1 = np.asarray(eta1, dtype=np.complex128)
    eta2 = np.asarray(eta2, dtype=np.complex128)
    theta = np.asarray(theta, dtype=np.float64)
    lt = np.asarray(lt, dtype=np.float64)
    a = eta1.real**2 + eta1.imag**2
    b = eta2.real**2 + eta2.imag**2
    p = a + b
    m = np.maximum(1.0 - p, 0.0)
    out = np.empty((a.shape[0], len(OBSERVABLE_COLUMNS)))

    # cos^2 via the double angle so theta = pi/2 gives exactly 0 and 1
    c2 = np.cos(2.0 * theta)
    de_b = b - 0.5 * (1.0 + c2)
    de_a = a - 0.5 * (1.0 - c2)
    with np.errstate(divide="ignore", invalid="ignore"):
        power = np.where(lt > 0.0, de_b / np.where(lt > 0.0, lt, 1.0), 0.0)
        power = np.where(np.isnan(lt), np.nan, power)
        undefined = np.abs(de_a) < UNDEFINED_RATE_TOL
        rate = np.where(undefined, np.nan, de_b / np.where(undefined, 1.0, np.abs(de_a)))
    out[:, 0] = de_b
    out[:, 1] = de_a
    out[:, 2] = power
    out[:, 3] = rate
    out[:, 4] = 2.0 * np.sqrt(a) * np.sqrt(b)

    d = np.sqrt(np.maximum(1.0 - 4.0 * b + 4.0 * a * b + 4.0 * b * b, 0.0))
    f_lo = _xlog2x(0.25 * (1.0 - d))
    f_hi = _xlog2x(0.25 * (1.0 + d))
    f_a, f_b, f_nb, f_m = _xlog2x(a), _xlog2x(b), _xlog2x(1.0 - b), _xlog2x(m)

    s_x = -2.0 * f_lo - 2.0 * f_hi
    s_z = -f_a - f_b - f_m
    u_left_xz = 2.0 * (f_b + f_nb) + s_x + s_z
    u_right_2 = 1.0 + f_b + f_nb - _xlog2x(p) - _xlog2x(1.0 - p)
    u_left_xyz = -f_a + 2.0 * f_b + 3.0 * f_nb - f_m - 4.0 * f_lo - 4.0 * f_hi
    u_right_3 = 2.0 * u_right_2 - 1.0
    out[:, 5] = u_left_xz
    out[:, 6] = u_right_2
    out[:, 7] = u_left_xz - u_right_2
    out[:, 8] = u_left_xyz
    out[:, 9] = u_right_3
    out[:, 10] = u_left_xyz - u_right_3
    return out


def rk4_damped(R, lt_max, n_steps):
    """Classical RK4 for mu'' + mu' + R^2 mu = 0, mu(0)=1, mu'(0)=0.

    Returns ``(lt, mu, dmu)`` sampled at the ``n_steps + 1`` grid points.
    """
    n_steps = int(n_steps)
    h = float(lt_max) / n_steps
    k = float(R) * float(R)
    mu = np.empty(n_steps + 1)
    dmu = np.empty(n_steps + 1)
    x, v = 1.0, 0.0
    mu[0], dmu[0] = x, v
    for i in range(1, n_steps + 1):
        k1x, k1v = v, -v - k * x
        x2, v2 = x + 0.5 * h * k1x, v + 0.5 * h * k1v
        k2x, k2v = v2, -v2 - k * x2
        x3, v3 = x + 0.5 * h * k2x, v + 0.5 * h * k2v
        k3x, k3v = v3, -v3 - k * x3
        x4, v4 = x + h * k3x, v + h * k3v
        k4x, k4v = v4, -v4 - k * x4
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        mu[i], dmu[i] = x, v
    lt = np.arange(n_steps + 1) * h
    return lt, mu, dmu


def jacobi_eigh(mats, tol=1e-15, max_sweeps=60):
    """Cyclic Jacobi eigensolver for a stack of complex Hermitian matrices.

    ``mats`` has shape ``(N, n, n)``. Returns eigenvalues ``(N, n)`` in
    ascending order and unitary eigenvector matrices ``(N, n, n)`` (columns).
    All matrices in the stack are rotated together, pair by pair.
    """
    a = np.array(mats, dtype=np.complex128, copy=True)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError("expected an (N, n, n) stack of square matrices")
    N, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=np.complex128), a.shape).copy()
    iu = np.triu_indices(n, 1)
    scale = np.maximum(np.sum(np.abs(a) ** 2, axis=(1, 2)), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.sum(np.abs(a[:, iu[0], iu[1]]) ** 2, axis=1)
        if np.all(off <= tol * tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[:, p, q]
                ag = np.abs(g)
                active = ag > 0.0
                if not active.any():
                    continue
                safe = np.where(active, ag, 1.0)
                th = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
                t = np.where(th >= 0.0, 1.0, -1.0) / (np.abs(th) + np.sqrt(th * th + 1.0))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ph = np.where(active, np.conj(g) / safe, 1.0)
                u = np.empty((N, 2, 2), dtype=np.complex128)
                u[:, 0, 0] = c
                u[:, 0, 1] = s
                u[:, 1, 0] = -s * ph
                u[:, 1, 1] = c * ph
                cols = [p, q]
                a[:, :, cols] = a[:, :, cols] @ u
                a[:, cols, :] = np.conj(np.swapaxes(u, 1, 2)) @ a[:, cols, :]
                v[:, :, cols] = v[:, :, cols] @ u
                a[:, p, q] = np.where(active, 0.0, a[:, p, q])
                a[:, q, p] = np.where(active, 0.0, a[:, q, p])
    w = np.real(np.diagonal(a, axis1=1, axis2=2)).copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v
