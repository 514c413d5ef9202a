# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same signatures and semantics as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, expm1, cos, sin, sqrt, log2, fabs, NAN, isnan

cnp.import_array()

cdef double CRITICAL_WINDOW = 1e-9
cdef double UNDEFINED_RATE_TOL = 1e-12


cdef inline double _mu(double R, double chi, int branch, double lt) nogil:
    cdef double h = 0.5 * lt, x, lead, em
    if branch == 0:
        return exp(-h) * (1.0 + h)
    if branch < 0:
        x = chi * h
        lead = exp(x - h)
        em = expm1(-2.0 * x)
        return lead * (1.0 + 0.5 * em) - lead * em / (2.0 * chi)
    x = chi * h
    return exp(-h) * (cos(x) + sin(x) / chi)


def mu_array(double R, lt):
    cdef const double[::1] t = np.ascontiguousarray(lt, dtype=np.float64)
    cdef Py_ssize_t n = t.shape[0], i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef int branch
    cdef double chi = 0.0
    if fabs(R - 0.5) <= CRITICAL_WINDOW:
        branch = 0
    elif R < 0.5:
        branch = -1
        chi = sqrt((1.0 - 2.0 * R) * (1.0 + 2.0 * R))
    else:
        branch = 1
        chi = sqrt((2.0 * R - 1.0) * (2.0 * R + 1.0))
    with nogil:
        for i in range(n):
            out[i] = _mu(R, chi, branch, t[i])
    return out_arr


cdef inline double _xlog2x(double x) nogil:
    if x > 0.0:
        return x * log2(x)
    return 0.0


def row_observables(eta1, eta2, theta, lt):
    cdef const double complex[::1] e1 = np.ascontiguousarray(eta1, dtype=np.complex128)
    cdef const double complex[::1] e2 = np.ascontiguousarray(eta2, dtype=np.complex128)
    cdef const double[::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef const double[::1] t = np.ascontiguousarray(lt, dtype=np.float64)
    cdef Py_ssize_t n = e1.shape[0], i
    out_arr = np.empty((n, 11), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double a, b, p, m, c2, de_b, de_a, d, f_lo, f_hi, f_a, f_b, f_nb, f_m
    cdef double u_l2, u_r2, u_l3
    with nogil:
        for i in range(n):
            a = e1[i].real * e1[i].real + e1[i].imag * e1[i].imag
            b = e2[i].real * e2[i].real + e2[i].imag * e2[i].imag
            p = a + b
            m = 1.0 - p
            if m < 0.0:
                m = 0.0
            c2 = cos(2.0 * th[i])
            de_b = b - 0.5 * (1.0 + c2)
            de_a = a - 0.5 * (1.0 - c2)
            out[i, 0] = de_b
            out[i, 1] = de_a
            if isnan(t[i]):
                out[i, 2] = NAN
            elif t[i] > 0.0:
                out[i, 2] = de_b / t[i]
            else:
                out[i, 2] = 0.0
            if fabs(de_a) < UNDEFINED_RATE_TOL:
                out[i, 3] = NAN
            else:
                out[i, 3] = de_b / fabs(de_a)
            out[i, 4] = 2.0 * sqrt(a) * sqrt(b)

            d = 1.0 - 4.0 * b + 4.0 * a * b + 4.0 * b * b
            d = sqrt(d) if d > 0.0 else 0.0
            f_lo = _xlog2x(0.25 * (1.0 - d))
            f_hi = _xlog2x(0.25 * (1.0 + d))
            f_a = _xlog2x(a)
            f_b = _xlog2x(b)
            f_nb = _xlog2x(1.0 - b)
            f_m = _xlog2x(m)
            u_l2 = 2.0 * (f_b + f_nb) + (-2.0 * f_lo - 2.0 * f_hi) + (-f_a - f_b - f_m)
            u_r2 = 1.0 + f_b + f_nb - _xlog2x(p) - _xlog2x(1.0 - p)
            u_l3 = -f_a + 2.0 * f_b + 3.0 * f_nb - f_m - 4.0 * f_lo - 4.0 * f_hi
            out[i, 5] = u_l2
            out[i, 6] = u_r2
            out[i, 7] = u_l2 - u_r2
            out[i, 8] = u_l3
            out[i, 9] = 2.0 * u_r2 - 1.0
            out[i, 10] = u_l3 - (2.0 * u_r2 - 1.0)
    return out_arr


def rk4_damped(double R, double lt_max, Py_ssize_t n_steps):
    cdef double h = lt_max / n_steps
    cdef double k = R * R
    mu_arr = np.empty(n_steps + 1, dtype=np.float64)
    dmu_arr = np.empty(n_steps + 1, dtype=np.float64)
    cdef double[::1] mu = mu_arr
    cdef double[::1] dmu = dmu_arr
    cdef double x = 1.0, v = 0.0
    cdef double k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v, x2, v2, x3, v3, x4, v4
    cdef Py_ssize_t i
    mu[0] = x
    dmu[0] = v
    with nogil:
        for i in range(1, n_steps + 1):
            k1x = v
            k1v = -v - k * x
            x2 = x + 0.5 * h * k1x
            v2 = v + 0.5 * h * k1v
            k2x = v2
            k2v = -v2 - k * x2
            x3 = x + 0.5 * h * k2x
            v3 = v + 0.5 * h * k2v
            k3x = v3
            k3v = -v3 - k * x3
            x4 = x + h * k3x
            v4 = v + h * k3v
            k4x = v4
            k4v = -v4 - k * x4
            x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            mu[i] = x
            dmu[i] = v
    lt = np.arange(n_steps + 1) * h
    return lt, mu_arr, dmu_arr


cdef inline double complex _cmul(double complex x, double complex y) noexcept nogil:
    # plain product; C99 complex multiply adds slow inf/nan recovery
    cdef double complex r
    r.real = x.real * y.real - x.imag * y.imag
    r.imag = x.real * y.imag + x.imag * y.real
    return r


cdef inline double complex _axpy(double t, double complex x, double sign,
                                  double complex y) noexcept nogil:
    # t * x + sign * y in real arithmetic
    cdef double complex r
    r.real = t * x.real + sign * y.real
    r.imag = t * x.imag + sign * y.imag
    return r


cdef void _jacobi_one(double complex[:, ::1] a, double complex[:, ::1] v,
                      double tol, int max_sweeps) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], p, q, k
    cdef int sweep
    cdef double scale = 0.0, off, ag, th, t, c, s
    cdef double complex g, ph, sph, cph, akp, akq
    for p in range(n):
        for q in range(n):
            scale += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
            v[p, q] = 1.0 if p == q else 0.0
    if scale < 1e-300:
        scale = 1e-300
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
        if off <= tol * tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = sqrt(g.real * g.real + g.imag * g.imag)
                if ag == 0.0:
                    continue
                th = (a[q, q].real - a[p, p].real) / (2.0 * ag)
                if th >= 0.0:
                    t = 1.0 / (th + sqrt(th * th + 1.0))
                else:
                    t = -1.0 / (-th + sqrt(th * th + 1.0))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                ph = g.conjugate() / ag
                sph = s * ph
                cph = c * ph
                # columns: A[:, (p,q)] <- A[:, (p,q)] U, U = [[c, s], [-s ph, c ph]]
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = _axpy(c, akp, -1.0, _cmul(sph, akq))
                    a[k, q] = _axpy(s, akp, 1.0, _cmul(cph, akq))
                    akp = v[k, p]
                    akq = v[k, q]
                    v[k, p] = _axpy(c, akp, -1.0, _cmul(sph, akq))
                    v[k, q] = _axpy(s, akp, 1.0, _cmul(cph, akq))
                # rows: A[(p,q), :] <- U^H A[(p,q), :]
                sph = sph.conjugate()
                cph = cph.conjugate()
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = _axpy(c, akp, -1.0, _cmul(sph, akq))
                    a[q, k] = _axpy(s, akp, 1.0, _cmul(cph, akq))
                a[p, q] = 0.0
                a[q, p] = 0.0


def jacobi_eigh(mats, double tol=1e-15, int max_sweeps=60):
    a_arr = np.array(mats, dtype=np.complex128, copy=True, order="C")
    if a_arr.ndim != 3 or a_arr.shape[1] != a_arr.shape[2]:
        raise ValueError("expected an (N, n, n) stack of square matrices")
    cdef Py_ssize_t N = a_arr.shape[0], n = a_arr.shape[1], j, k
    v_arr = np.empty_like(a_arr)
    cdef double complex[:, :, ::1] a = a_arr
    cdef double complex[:, :, ::1] v = v_arr
    w_arr = np.empty((N, n), dtype=np.float64)
    cdef double[:, ::1] w = w_arr
    with nogil:
        for j in range(N):
            _jacobi_one(a[j], v[j], tol, max_sweeps)
            for k in range(n):
                w[j, k] = a[j, k, k].real
    order = np.argsort(w_arr, axis=1, kind="stable")
    w_arr = np.take_along_axis(w_arr, order, axis=1)
    v_arr = np.take_along_axis(v_arr, order[:, None, :], axis=2)
    return w_arr, v_arr
