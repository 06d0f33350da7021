"""Periodic 3-D grid and its wavevector lattice.

Wavevectors follow the standard symmetric FFT range k = 2*pi*j/L with
integer j in (-n/2, n/2]; on even grids the Nyquist slot carries the
negative sign, matching numpy's fftfreq.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class Grid3:
    nx: int
    ny: int
    nz: int
    lx: float
    ly: float
    lz: float

    def __post_init__(self):
        for n in (self.nx, self.ny, self.nz):
            if not isinstance(n, int) or n < 2:
                raise ValueError("point counts must be integers >= 2")
        for l in (self.lx, self.ly, self.lz):
            if not (np.isfinite(l) and l > 0):
                raise ValueError("box lengths must be positive and finite")

    @classmethod
    def cubic(cls, n, length=2.0 * np.pi):
        return cls(n, n, n, float(length), float(length), float(length))

    @property
    def shape(self):
        return (self.nx, self.ny, self.nz)

    @property
    def npoints(self):
        return self.nx * self.ny * self.nz

    @property
    def spacings(self):
        return (self.lx / self.nx, self.ly / self.ny, self.lz / self.nz)

    @property
    def cell_volume(self):
        dx, dy, dz = self.spacings
        return dx * dy * dz

    def axis_wavenumbers(self, axis):
        n = self.shape[axis]
        length = (self.lx, self.ly, self.lz)[axis]
        return 2.0 * np.pi * np.fft.fftfreq(n, d=length / n)

    @cached_property
    def k_flat(self):
        """Wavevectors of all modes, shape (3, npoints), C-contiguous."""
        kx = self.axis_wavenumbers(0)
        ky = self.axis_wavenumbers(1)
        kz = self.axis_wavenumbers(2)
        gx, gy, gz = np.meshgrid(kx, ky, kz, indexing="ij")
        k = np.ascontiguousarray(np.stack([gx, gy, gz]).reshape(3, -1))
        k.setflags(write=False)
        return k

    @cached_property
    def kmag_flat(self):
        km = np.linalg.norm(self.k_flat, axis=0)
        km.setflags(write=False)
        return km

    @cached_property
    def khat_flat(self):
        """Unit wavevectors; the zero mode gets the zero vector."""
        km = self.kmag_flat
        safe = np.where(km == 0.0, 1.0, km)
        khat = np.ascontiguousarray(self.k_flat / safe)
        khat[:, km == 0.0] = 0.0
        khat.setflags(write=False)
        return khat

    def coordinates(self):
        """Mesh arrays X, Y, Z of node positions, each of grid shape."""
        x = np.arange(self.nx) * (self.lx / self.nx)
        y = np.arange(self.ny) * (self.ly / self.ny)
        z = np.arange(self.nz) * (self.lz / self.nz)
        return np.meshgrid(x, y, z, indexing="ij")

    def position_mesh(self):
        """Node positions stacked as shape (3, nx, ny, nz)."""
        return np.stack(self.coordinates())

    def wavevector(self, j):
        """Physical wavevector 2*pi*(jx/lx, jy/ly, jz/lz) of integer indices."""
        jx, jy, jz = (int(v) for v in j)
        return np.array([
            2.0 * np.pi * jx / self.lx,
            2.0 * np.pi * jy / self.ly,
            2.0 * np.pi * jz / self.lz,
        ])

    def mode_resolved(self, j):
        """True when the integer mode is strictly below the Nyquist edge."""
        for idx, n in zip(j, self.shape):
            idx = int(idx)
            if n % 2 == 0:
                if abs(idx) >= n // 2:
                    return False
            else:
                if abs(idx) > (n - 1) // 2:
                    return False
        return True

    def mode_index(self, j):
        """FFT array indices of an integer mode triple."""
        return tuple(int(v) % n for v, n in zip(j, self.shape))
