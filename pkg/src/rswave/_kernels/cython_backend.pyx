# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-pass versions of the per-mode kernels.

Same contracts as numpy_backend; inputs must be C-contiguous.
"""

import numpy as np


def rotate_modes(const double complex[:, ::1] psi, const double[:, ::1] axis,
                 const double[::1] cos_t, const double[::1] sin_t, out=None):
    cdef Py_ssize_t n = psi.shape[1]
    out_arr = np.empty((3, n), dtype=np.complex128) if out is None else out
    cdef double complex[:, ::1] o = out_arr
    cdef double complex vx, vy, vz, dot
    cdef double ax, ay, az, ct, st, omc
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            vx = psi[0, j]; vy = psi[1, j]; vz = psi[2, j]
            ax = axis[0, j]; ay = axis[1, j]; az = axis[2, j]
            ct = cos_t[j]; st = sin_t[j]; omc = 1.0 - ct
            dot = ax * vx + ay * vy + az * vz
            o[0, j] = ct * vx + st * (ay * vz - az * vy) + omc * dot * ax
            o[1, j] = ct * vy + st * (az * vx - ax * vz) + omc * dot * ay
            o[2, j] = ct * vz + st * (ax * vy - ay * vx) + omc * dot * az
    return out_arr


def project_modes(const double complex[:, ::1] psi, const double[:, ::1] khat, out=None):
    cdef Py_ssize_t n = psi.shape[1]
    out_arr = np.empty((3, n), dtype=np.complex128) if out is None else out
    cdef double complex[:, ::1] o = out_arr
    cdef double complex dot
    cdef double ax, ay, az
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            ax = khat[0, j]; ay = khat[1, j]; az = khat[2, j]
            dot = ax * psi[0, j] + ay * psi[1, j] + az * psi[2, j]
            o[0, j] = psi[0, j] - dot * ax
            o[1, j] = psi[1, j] - dot * ay
            o[2, j] = psi[2, j] - dot * az
    return out_arr


def curl_modes(const double complex[:, ::1] psi, const double[:, ::1] k, out=None):
    cdef Py_ssize_t n = psi.shape[1]
    out_arr = np.empty((3, n), dtype=np.complex128) if out is None else out
    cdef double complex[:, ::1] o = out_arr
    cdef double complex i_unit = 1j
    cdef double complex vx, vy, vz
    cdef double kx, ky, kz
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            vx = psi[0, j]; vy = psi[1, j]; vz = psi[2, j]
            kx = k[0, j]; ky = k[1, j]; kz = k[2, j]
            o[0, j] = i_unit * (ky * vz - kz * vy)
            o[1, j] = i_unit * (kz * vx - kx * vz)
            o[2, j] = i_unit * (kx * vy - ky * vx)
    return out_arr


def divergence_modes(const double complex[:, ::1] psi, const double[:, ::1] k):
    cdef Py_ssize_t n = psi.shape[1]
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out_arr
    cdef double complex i_unit = 1j
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            o[j] = i_unit * (k[0, j] * psi[0, j] + k[1, j] * psi[1, j]
                             + k[2, j] * psi[2, j])
    return out_arr


def fdtd_curl(const double[:, :, :, ::1] f, double dx, double dy, double dz):
    cdef Py_ssize_t nx = f.shape[1], ny = f.shape[2], nz = f.shape[3]
    out_arr = np.empty((3, nx, ny, nz), dtype=np.float64)
    cdef double[:, :, :, ::1] o = out_arr
    cdef double inv2x = 0.5 / dx, inv2y = 0.5 / dy, inv2z = 0.5 / dz
    cdef Py_ssize_t i, j, l, ip, im, jp, jm, lp, lm
    cdef double dzy, dyz, dxz, dzx, dyx, dxy
    with nogil:
        for i in range(nx):
            ip = i + 1 if i + 1 < nx else 0
            im = i - 1 if i > 0 else nx - 1
            for j in range(ny):
                jp = j + 1 if j + 1 < ny else 0
                jm = j - 1 if j > 0 else ny - 1
                for l in range(nz):
                    lp = l + 1 if l + 1 < nz else 0
                    lm = l - 1 if l > 0 else nz - 1
                    dzy = (f[2, i, jp, l] - f[2, i, jm, l]) * inv2y
                    dyz = (f[1, i, j, lp] - f[1, i, j, lm]) * inv2z
                    dxz = (f[0, i, j, lp] - f[0, i, j, lm]) * inv2z
                    dzx = (f[2, ip, j, l] - f[2, im, j, l]) * inv2x
                    dyx = (f[1, ip, j, l] - f[1, im, j, l]) * inv2x
                    dxy = (f[0, i, jp, l] - f[0, i, jm, l]) * inv2y
                    o[0, i, j, l] = dzy - dyz
                    o[1, i, j, l] = dxz - dzx
                    o[2, i, j, l] = dyx - dxy
    return out_arr
