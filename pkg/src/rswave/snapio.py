"""Snapshot and CSV output.

Snapshot format "RSF1": little-endian binary; header of magic bytes,
grid dimensions (three uint32), box lengths (three float64) and the
simulation time (float64); then the field as complex128 values, points in
x-fastest order, the three vector components interleaved per point.

All text output uses 17 significant digits so files are bit-reproducible
for identical inputs.
"""

import struct

import numpy as np

from .fields import RSField
from .grid import Grid3

MAGIC = b"RSF1"
_HEADER = struct.Struct("<4s3I4d")


class SnapshotFormatError(ValueError):
    pass


def write_snapshot(path, field, time=0.0):
    grid = field.grid
    header = _HEADER.pack(
        MAGIC, grid.nx, grid.ny, grid.nz, grid.lx, grid.ly, grid.lz, float(time)
    )
    # (3, nx, ny, nz) -> (nz, ny, nx, 3): x varies fastest, components interleaved
    payload = np.ascontiguousarray(field.psi.transpose(3, 2, 1, 0)).astype("<c16")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload.tobytes())


def read_snapshot(path):
    """Read a snapshot; returns (RSField, time)."""
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
        if len(raw) != _HEADER.size:
            raise SnapshotFormatError("truncated header")
        magic, nx, ny, nz, lx, ly, lz, time = _HEADER.unpack(raw)
        if magic != MAGIC:
            raise SnapshotFormatError(f"bad magic {magic!r}")
        count = 3 * nx * ny * nz
        raw = fh.read(count * 16)
        if len(raw) != count * 16:
            raise SnapshotFormatError("truncated payload")
        data = np.frombuffer(raw, dtype="<c16")
    grid = Grid3(nx, ny, nz, lx, ly, lz)
    psi = data.reshape(nz, ny, nx, 3).transpose(3, 2, 1, 0)
    return RSField(grid=grid, psi=np.ascontiguousarray(psi)), time


def write_field_csv(path, field):
    """Field as CSV rows (ix, iy, iz, Re/Im of the three components)."""
    grid = field.grid
    psi = field.psi
    with open(path, "w") as fh:
        fh.write("ix,iy,iz,psi_x_re,psi_x_im,psi_y_re,psi_y_im,psi_z_re,psi_z_im\n")
        for iz in range(grid.nz):
            for iy in range(grid.ny):
                for ix in range(grid.nx):
                    v = psi[:, ix, iy, iz]
                    fh.write(
                        f"{ix},{iy},{iz},"
                        f"{v[0].real:.17g},{v[0].imag:.17g},"
                        f"{v[1].real:.17g},{v[1].imag:.17g},"
                        f"{v[2].real:.17g},{v[2].imag:.17g}\n"
                    )


DIAGNOSTICS_HEADER = "step,t,energy,helicity,gaussE,gaussB,res1,res2"


def write_diagnostics_csv(path, records):
    """One row per emitted step: step, t, energy, helicity, gaussE, gaussB,
    res1, res2 (the two curl-law residuals)."""
    with open(path, "w") as fh:
        fh.write(DIAGNOSTICS_HEADER + "\n")
        for r in records:
            fh.write(
                f"{r.step},{r.t:.17g},{r.energy:.17g},{r.helicity:.17g},"
                f"{r.gauss_e:.17g},{r.gauss_b:.17g},{r.res1:.17g},{r.res2:.17g}\n"
            )
