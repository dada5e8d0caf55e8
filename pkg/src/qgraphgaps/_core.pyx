# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Semantics mirror qgraphgaps._fallback exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport floor, tan, cos, sin, fabs, INFINITY, M_PI

cnp.import_array()

ctypedef double complex cplx


cdef cplx _lu_det(cplx[:, ::1] m, Py_ssize_t n) noexcept nogil:
    # in-place LU with partial pivoting; returns the determinant
    cdef Py_ssize_t i, j, r, piv
    cdef double best, mag
    cdef cplx det = 1.0, t, f
    for j in range(n):
        piv = j
        best = fabs(m[j, j].real) + fabs(m[j, j].imag)
        for i in range(j + 1, n):
            mag = fabs(m[i, j].real) + fabs(m[i, j].imag)
            if mag > best:
                best = mag
                piv = i
        if best == 0.0:
            return 0.0
        if piv != j:
            for r in range(n):
                t = m[j, r]
                m[j, r] = m[piv, r]
                m[piv, r] = t
            det = -det
        det = det * m[j, j]
        for i in range(j + 1, n):
            f = m[i, j] / m[j, j]
            for r in range(j + 1, n):
                m[i, r] = m[i, r] - f * m[j, r]
    return det


def secular_batch(double[::1] kl, cnp.complex128_t[:, ::1] sb,
                  double[:, ::1] z, double[:, ::1] thetas):
    """det(I - diag(exp(i(theta.z_b + k l_b))) Sb) for every row of ``thetas``."""
    cdef Py_ssize_t nb = sb.shape[0], nt = thetas.shape[0], nu = z.shape[1]
    cdef Py_ssize_t t, b, c, l
    cdef double ph
    cdef cplx e
    out = np.empty(nt, dtype=np.complex128)
    cdef cnp.complex128_t[::1] res = out
    work = np.empty((nb, nb), dtype=np.complex128)
    cdef cplx[:, ::1] m = work
    with nogil:
        for t in range(nt):
            for b in range(nb):
                ph = kl[b]
                for l in range(nu):
                    ph = ph + thetas[t, l] * z[b, l]
                e = cos(ph) + 1j * sin(ph)
                for c in range(nb):
                    m[b, c] = -e * sb[b, c]
                m[b, b] = m[b, b] + 1.0
            res[t] = _lu_det(m, nb)
    return out


cdef inline double _bracket(double k, double ell) noexcept nogil:
    cdef double x = k * ell
    cdef double u = 0.5 * x - 0.5 * M_PI * floor(x / M_PI)
    # x/pi may round across an integer; fold back into [0, pi/2)
    if u < 0.0:
        u = u + 0.5 * M_PI
    elif u >= 0.5 * M_PI:
        u = u - 0.5 * M_PI
    return u


def gap_margin(double[::1] ks, double a, double b, double alpha):
    """|alpha|/(2k) minus the tan (alpha > 0) or cot (alpha < 0) sum.

    -inf where k*a or k*b is a multiple of pi.
    """
    cdef Py_ssize_t i, n = ks.shape[0]
    cdef double k, ua, ub, lhs
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for i in range(n):
            k = ks[i]
            ua = _bracket(k, a)
            ub = _bracket(k, b)
            if ua == 0.0 or ub == 0.0:
                # k*l in pi*Z: flat Dirichlet band, never a gap point
                res[i] = -INFINITY
                continue
            if alpha > 0:
                lhs = tan(ua) + tan(ub)
            else:
                lhs = 1.0 / tan(ua) + 1.0 / tan(ub)
            res[i] = fabs(alpha) / (2.0 * k) - lhs
    return out


def gamma_terms(double eta, double scale, Py_ssize_t mmax, int sign):
    """scale*m*tan((pi/2)*d_m) for m = 1..mmax.

    d_m = m*eta - floor(m*eta) for sign > 0 and ceil(m*eta) - m*eta otherwise.
    Also returns d_m so that callers can bound the rounding error.
    """
    cdef Py_ssize_t m
    cdef double x, d
    vals = np.empty(mmax, dtype=np.float64)
    dist = np.empty(mmax, dtype=np.float64)
    cdef double[::1] v = vals, dd = dist
    with nogil:
        for m in range(1, mmax + 1):
            x = m * eta
            d = x - floor(x)
            if sign < 0:
                d = 1.0 - d if d > 0 else 0.0
            dd[m - 1] = d
            v[m - 1] = scale * m * tan(0.5 * M_PI * d)
    return vals, dist
