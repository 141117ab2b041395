# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos

cnp.import_array()

from ._pykernels import filon_weights

cdef enum:
    RESEED = 32  # exact trig re-seed interval for the rotation recurrence


def filon_cos(f, double h, u):
    cdef cnp.ndarray[double, ndim=1] fa = np.ascontiguousarray(f, dtype=float)
    cdef cnp.ndarray[double, ndim=1] ua = np.ascontiguousarray(u, dtype=float)
    cdef Py_ssize_t n_nodes = fa.shape[0]
    if n_nodes < 3 or n_nodes % 2 == 0:
        raise ValueError("filon_cos needs an odd number (>= 3) of samples")
    alpha_, beta_, gamma_ = filon_weights(h * ua)
    cdef double[::1] alpha = alpha_
    cdef double[::1] beta = beta_
    cdef double[::1] gamma = gamma_
    cdef double[::1] fv = fa
    cdef double[::1] uv = ua
    cdef cnp.ndarray[double, ndim=1] out = np.empty(ua.shape[0])
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j
    cdef double theta, cr, ci, sr, si, tmp, even, odd, x_end
    x_end = h * (n_nodes - 1)
    for i in range(uv.shape[0]):
        theta = h * uv[i]
        sr = cos(theta)
        si = sin(theta)
        cr = 1.0
        ci = 0.0
        even = 0.5 * fv[0]
        odd = 0.0
        for j in range(1, n_nodes):
            if j % RESEED == 0:
                cr = cos(j * theta)
                ci = sin(j * theta)
            else:
                tmp = cr * sr - ci * si
                ci = cr * si + ci * sr
                cr = tmp
            if j & 1:
                odd += fv[j] * cr
            elif j == n_nodes - 1:
                even += 0.5 * fv[j] * cr
            else:
                even += fv[j] * cr
        ov[i] = h * (alpha[i] * fv[n_nodes - 1] * sin(x_end * uv[i])
                     + beta[i] * even + gamma[i] * odd)
    return out


def triangle_sums(phase, kern):
    cdef cnp.ndarray[complex, ndim=1] pa = np.ascontiguousarray(phase, dtype=complex)
    cdef cnp.ndarray[complex, ndim=1] ka = np.ascontiguousarray(kern, dtype=complex)
    cdef Py_ssize_t n = pa.shape[0]
    if ka.shape[0] < n:
        raise ValueError("kern must be at least as long as phase")
    cdef double[:, ::1] p = pa.view(float).reshape(n, 2)
    cdef double[:, ::1] k = ka.view(float).reshape(ka.shape[0], 2)
    cdef cnp.ndarray[complex, ndim=1] out = np.zeros(n, dtype=complex)
    cdef double[:, ::1] o = out.view(float).reshape(n, 2)
    cdef Py_ssize_t m, j
    cdef double re, im
    for m in range(1, n):
        re = 0.5 * (p[0, 0] * k[m, 0] - p[0, 1] * k[m, 1]
                    + p[m, 0] * k[0, 0] - p[m, 1] * k[0, 1])
        im = 0.5 * (p[0, 0] * k[m, 1] + p[0, 1] * k[m, 0]
                    + p[m, 0] * k[0, 1] + p[m, 1] * k[0, 0])
        for j in range(1, m):
            re += p[j, 0] * k[m - j, 0] - p[j, 1] * k[m - j, 1]
            im += p[j, 0] * k[m - j, 1] + p[j, 1] * k[m - j, 0]
        o[m, 0] = re
        o[m, 1] = im
    return out


cdef void _rhs(double complex[:, :, ::1] ops, Py_ssize_t[:, ::1] widx,
               double complex[::1] mod, double complex[::1] lam,
               double complex[:, ::1] rho, double complex[:, ::1] out) nogil:
    cdef Py_ssize_t k, a, b, c
    cdef double complex y[4][4]
    cdef double complex lr[4][4]
    cdef double complex sl[4][4]
    cdef double complex sm[4][4]
    cdef double complex acc
    for a in range(4):
        for b in range(4):
            y[a][b] = 0
    for k in range(ops.shape[0]):
        for a in range(4):
            for b in range(4):
                sl[a][b] = ops[k, a, b] * lam[widx[a, b]]
                sm[a][b] = ops[k, a, b] * mod[widx[a, b]]
        # lr = (S_k * lam) @ rho
        for a in range(4):
            for c in range(4):
                acc = 0
                for b in range(4):
                    acc = acc + sl[a][b] * rho[b, c]
                lr[a][c] = acc
        # y += S_k(t) lr - lr S_k(t)
        for a in range(4):
            for c in range(4):
                acc = 0
                for b in range(4):
                    acc = acc + sm[a][b] * lr[b][c] - lr[a][b] * sm[b][c]
                y[a][c] = y[a][c] + acc
    for a in range(4):
        for b in range(4):
            out[a, b] = -(y[a][b] + y[b][a].conjugate())


def rk4_tcl2(rho0, ops, widx, mod, lam, double dt, Py_ssize_t n_steps,
             Py_ssize_t record_every):
    cdef double complex[:, :, ::1] o = np.array(ops, dtype=complex, order="C")
    cdef Py_ssize_t[:, ::1] w = np.ascontiguousarray(widx, dtype=np.intp)
    cdef double complex[:, ::1] md = np.ascontiguousarray(mod, dtype=complex)
    cdef double complex[:, ::1] lm = np.ascontiguousarray(lam, dtype=complex)
    cdef double complex[:, ::1] rho = np.array(rho0, dtype=complex)
    cdef double complex[:, ::1] tmp = np.empty((4, 4), dtype=complex)
    cdef double complex[:, :, ::1] k = np.empty((4, 4, 4), dtype=complex)
    n_rec = n_steps // record_every + 1
    rec_arr = np.empty((n_rec, 4, 4), dtype=complex)
    cdef double complex[:, :, ::1] rec = rec_arr
    rec[0, :, :] = rho
    cdef Py_ssize_t step, q, a, b, r = 1
    with nogil:
        for step in range(n_steps):
            q = 2 * step
            _rhs(o, w, md[q], lm[q], rho, k[0])
            for a in range(4):
                for b in range(4):
                    tmp[a, b] = rho[a, b] + 0.5 * dt * k[0, a, b]
            _rhs(o, w, md[q + 1], lm[q + 1], tmp, k[1])
            for a in range(4):
                for b in range(4):
                    tmp[a, b] = rho[a, b] + 0.5 * dt * k[1, a, b]
            _rhs(o, w, md[q + 1], lm[q + 1], tmp, k[2])
            for a in range(4):
                for b in range(4):
                    tmp[a, b] = rho[a, b] + dt * k[2, a, b]
            _rhs(o, w, md[q + 2], lm[q + 2], tmp, k[3])
            for a in range(4):
                for b in range(4):
                    rho[a, b] = rho[a, b] + (dt / 6.0) * (
                        k[0, a, b] + 2 * k[1, a, b] + 2 * k[2, a, b] + k[3, a, b])
            if (step + 1) % record_every == 0:
                for a in range(4):
                    for b in range(4):
                        rec[r, a, b] = rho[a, b]
                r += 1
    return rec_arr
