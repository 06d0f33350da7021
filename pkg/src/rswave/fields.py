"""Field containers and the complex-field packaging Psi = E - i B.

The complex 3-vector field carries the full electromagnetic state; the
real electric and magnetic fields are its real part and negated imaginary
part, so the round trip through either representation is exact.
"""

from dataclasses import dataclass

import numpy as np

from .grid import Grid3


def _check_field_array(grid, a, name, dtype):
    a = np.asarray(a, dtype=dtype)
    if a.shape != (3, *grid.shape):
        raise ValueError(f"{name} must have shape (3, nx, ny, nz) = {(3, *grid.shape)}")
    return a


@dataclass(frozen=True)
class EMField:
    """Real electric and magnetic 3-vector fields on a periodic grid
    (Gaussian units, so both carry the same units)."""

    grid: Grid3
    e: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "e", _check_field_array(self.grid, self.e, "e", float))
        object.__setattr__(self, "b", _check_field_array(self.grid, self.b, "b", float))


@dataclass(frozen=True)
class RSField:
    """Complex 3-vector field Psi = E - i B on a periodic grid."""

    grid: Grid3
    psi: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "psi", _check_field_array(self.grid, self.psi, "psi", complex)
        )

    def validate_finite(self):
        if not np.all(np.isfinite(self.psi.view(float))):
            raise ValueError("field contains non-finite entries")
        return self


def to_rs(field):
    """Package real fields into the complex field, psi = e - i b."""
    return RSField(grid=field.grid, psi=field.e - 1j * field.b)


def from_rs(field):
    """Split the complex field back: e = Re psi, b = -Im psi."""
    return EMField(grid=field.grid, e=field.psi.real.copy(), b=-field.psi.imag)


def zero_rs(grid):
    return RSField(grid=grid, psi=np.zeros((3, *grid.shape), dtype=complex))


def l2_norm(field):
    """Plain Euclidean norm over all components and grid points."""
    return float(np.linalg.norm(field.psi))


def energy(field):
    """Total field energy (1/2) sum |psi|^2 dV = (1/2) integral (E^2 + B^2)."""
    return 0.5 * float(np.sum(np.abs(field.psi) ** 2)) * field.grid.cell_volume


def max_magnitude(field):
    """Largest pointwise 3-vector magnitude |psi(x)| on the grid."""
    return float(np.sqrt(np.max(np.sum(np.abs(field.psi) ** 2, axis=0))))
