"""Vectorized numpy implementations of the per-mode kernels.

Fallback used when the compiled extension is unavailable (or forced via
RSWAVE_KERNELS=numpy).  Mode arrays are flat: complex fields (3, n),
wavevectors (3, n), angles (n,).
"""

import numpy as np


def rotate_modes(psi, axis, cos_t, sin_t, out=None):
    """Rotate each complex mode vector about its (real, unit) axis.

    Rodrigues form: v cos + (a x v) sin + a (a.v)(1 - cos).  Modes with a
    zero axis and cos = 1 pass through unchanged.
    """
    dot = np.einsum("cn,cn->n", axis, psi)
    cross = np.empty_like(psi)
    cross[0] = axis[1] * psi[2] - axis[2] * psi[1]
    cross[1] = axis[2] * psi[0] - axis[0] * psi[2]
    cross[2] = axis[0] * psi[1] - axis[1] * psi[0]
    result = cos_t * psi + sin_t * cross + ((1.0 - cos_t) * dot) * axis
    if out is None:
        return result
    np.copyto(out, result)
    return out


def project_modes(psi, khat, out=None):
    """Remove the longitudinal part per mode: v - khat (khat . v)."""
    dot = np.einsum("cn,cn->n", khat, psi)
    result = psi - dot * khat
    if out is None:
        return result
    np.copyto(out, result)
    return out


def curl_modes(psi, k, out=None):
    """Spectral curl per mode: i (k x v)."""
    result = np.empty_like(psi)
    result[0] = 1j * (k[1] * psi[2] - k[2] * psi[1])
    result[1] = 1j * (k[2] * psi[0] - k[0] * psi[2])
    result[2] = 1j * (k[0] * psi[1] - k[1] * psi[0])
    if out is None:
        return result
    np.copyto(out, result)
    return out


def divergence_modes(psi, k):
    """Spectral divergence per mode: i (k . v), shape (n,)."""
    return 1j * np.einsum("cn,cn->n", k, psi)


def fdtd_curl(f, dx, dy, dz):
    """Periodic central-difference curl of a real (3, nx, ny, nz) field."""

    def diff(a, axis, h):
        return (np.roll(a, -1, axis) - np.roll(a, 1, axis)) / (2.0 * h)

    fx, fy, fz = f[0], f[1], f[2]
    out = np.empty_like(f)
    out[0] = diff(fz, 1, dy) - diff(fy, 2, dz)
    out[1] = diff(fx, 2, dz) - diff(fz, 0, dx)
    out[2] = diff(fy, 0, dx) - diff(fx, 1, dy)
    return out
