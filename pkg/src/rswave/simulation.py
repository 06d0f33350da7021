"""Simulation assembly: initial conditions, the stepping loop, diagnostics.

Initial data comes in three families: superpositions of grid-resolved
circularly polarized plane waves (given by integer mode indices, a
helicity label and a complex amplitude), a Gaussian wave packet riding a
carrier mode, or a previously written snapshot file.  Unless disabled,
the initial field is transverse-projected so the divergence constraints
hold from step zero.

Helicity 0 is accepted in the plane-wave list only so that deliberate
constraint violations can be exercised; a longitudinal mode is not a
solution and the Gauss monitors will flag it.
"""

import os
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .fields import RSField, energy, l2_norm, max_magnitude
from .grid import Grid3
from .helicity import helicity_basis
from .propagator import (
    gauss_residual,
    maxwell_residual,
    rotation_angles,
    step_exact,
    step_spectrum,
)

OUTPUT_DIR_ENV = "RSWAVE_OUTPUT_DIR"


@dataclass(frozen=True)
class PlaneModeInit:
    indices: tuple
    sigma: int
    amplitude: complex

    def __post_init__(self):
        if self.sigma not in (1, 0, -1):
            raise ValueError("mode helicity must be +1, 0 or -1")


@dataclass(frozen=True)
class PlaneWaveInit:
    modes: tuple


@dataclass(frozen=True)
class GaussianInit:
    center: tuple
    width: float
    carrier: tuple
    sigma: int
    amplitude: complex = 1.0 + 0.0j


@dataclass(frozen=True)
class FileInit:
    path: str


@dataclass(frozen=True)
class Limits:
    energy_drift: float = 1e-10
    gauss_residual: float = 1e-10
    helicity_drift: float = 1e-10


@dataclass(frozen=True)
class OutputSpec:
    directory: str = ""
    cadence: int = 1
    diagnostics_name: str = "diagnostics.csv"
    write_snapshots: bool = False
    snapshot_csv: bool = False
    write_spectrum: bool = False

    def resolve_directory(self):
        if self.directory:
            return self.directory
        return os.environ.get(OUTPUT_DIR_ENV, ".")


@dataclass(frozen=True)
class SimConfig:
    grid: Grid3
    dt: float
    steps: int
    c: float = 1.0
    init: object = None
    project_transverse: bool = True
    output: OutputSpec = dataclass_field(default_factory=OutputSpec)
    limits: Limits = dataclass_field(default_factory=Limits)

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c > 0):
            raise ValueError("c must be positive")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise ValueError("dt must be positive")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.output.cadence < 1:
            raise ValueError("output cadence must be >= 1")


@dataclass(frozen=True)
class DiagnosticsRecord:
    step: int
    t: float
    energy: float
    helicity: float
    gauss_e: float
    gauss_b: float
    res1: float
    res2: float
    max_field: float


@dataclass(frozen=True)
class SimResult:
    records: tuple
    final: RSField
    energy_drift: float
    helicity_drift: float
    max_gauss: float
    l2_change: float
    violations: tuple


def _mode_amplitude_array(grid, modes):
    """Spectral array with the requested plane-wave content."""
    hat = np.zeros((3, grid.npoints), dtype=complex)
    n = grid.npoints
    for m in modes:
        if not grid.mode_resolved(m.indices):
            raise ValueError(f"mode {m.indices} not resolved on the grid")
        k = grid.wavevector(m.indices)
        if np.linalg.norm(k) == 0.0:
            raise ValueError("plane-wave init needs nonzero mode indices")
        basis = helicity_basis(k)
        e = {1: basis.e_plus, 0: basis.e_zero, -1: basis.e_minus}[m.sigma]
        idx = np.ravel_multi_index(grid.mode_index(m.indices), grid.shape)
        hat[:, idx] += m.amplitude * e * n
    return hat


def build_initial_field(config):
    """Construct (and optionally transverse-project) the initial field."""
    grid = config.grid
    init = config.init
    if init is None:
        raise ValueError("no initial condition configured")
    if isinstance(init, PlaneWaveInit):
        hat = _mode_amplitude_array(grid, init.modes)
        psi = np.fft.ifftn(hat.reshape(3, *grid.shape), axes=(1, 2, 3))
        field = RSField(grid=grid, psi=psi)
    elif isinstance(init, GaussianInit):
        field = _gaussian_packet(grid, init)
    elif isinstance(init, FileInit):
        from .snapio import read_snapshot

        field, _ = read_snapshot(init.path)
        if field.grid != grid:
            raise ValueError("snapshot grid does not match the configured grid")
    else:
        raise TypeError(f"unsupported initial condition {init!r}")
    field.validate_finite()
    if config.project_transverse:
        from .propagator import project_transverse

        field = project_transverse(field)
    return field


def _gaussian_packet(grid, init):
    k = grid.wavevector(init.carrier)
    if np.linalg.norm(k) == 0.0:
        raise ValueError("gaussian packet needs a nonzero carrier mode")
    basis = helicity_basis(k)
    e = {1: basis.e_plus, 0: basis.e_zero, -1: basis.e_minus}[init.sigma]
    x, y, z = grid.coordinates()
    lengths = (grid.lx, grid.ly, grid.lz)
    r2 = np.zeros_like(x)
    for coord, center, length in zip((x, y, z), init.center, lengths):
        d = coord - center
        d -= length * np.round(d / length)  # minimal image on the torus
        r2 += d * d
    envelope = np.exp(-r2 / (2.0 * init.width**2))
    carrier = np.exp(1j * (k[0] * x + k[1] * y + k[2] * z))
    psi = init.amplitude * np.multiply.outer(e, envelope * carrier)
    return RSField(grid=grid, psi=psi)


def _diagnose(step, t, field, dt, c):
    en = energy(field)
    ge, gb = gauss_residual(field)
    if step == 0:
        r1 = r2 = 0.0
    else:
        f1 = step_exact(field, dt, c)
        r1, r2 = maxwell_residual(field, f1, dt, c)
    from .propagator import helicity_invariant

    return DiagnosticsRecord(
        step=step,
        t=t,
        energy=en,
        helicity=helicity_invariant(field),
        gauss_e=ge,
        gauss_b=gb,
        res1=r1,
        res2=r2,
        max_field=max_magnitude(field),
    )


def run_simulation(config, on_emit=None):
    """Run the configured evolution and collect diagnostics.

    The state lives in Fourier space between steps; fields are
    reconstructed only at emission times (every ``output.cadence`` steps,
    plus the first and last).  ``on_emit(step, field)`` is called at each
    emission, after the diagnostics record is taken.
    """
    grid = config.grid
    field0 = build_initial_field(config)
    psi0 = field0.psi
    hat = np.ascontiguousarray(np.fft.fftn(psi0, axes=(1, 2, 3)).reshape(3, -1))
    cos_t, sin_t = rotation_angles(grid, config.dt, config.c)

    records = []

    def emit(step):
        psi = np.fft.ifftn(hat.reshape(3, *grid.shape), axes=(1, 2, 3))
        f = RSField(grid=grid, psi=psi)
        records.append(_diagnose(step, step * config.dt, f, config.dt, config.c))
        if on_emit is not None:
            on_emit(step, f)
        return f

    f_last = emit(0)
    for step in range(1, config.steps + 1):
        step_spectrum(hat, grid, config.dt, config.c, cos_t, sin_t, out=hat)
        if step % config.output.cadence == 0 or step == config.steps:
            f_last = emit(step)

    e0 = records[0].energy
    h0 = records[0].helicity
    href = max(abs(h0), e0, np.finfo(float).tiny)
    energy_drift = max(abs(r.energy - e0) for r in records) / max(e0, np.finfo(float).tiny)
    helicity_drift = max(abs(r.helicity - h0) for r in records) / href
    max_gauss = max(max(r.gauss_e, r.gauss_b) for r in records)
    norm0 = l2_norm(field0)
    l2_change = (
        float(np.linalg.norm(f_last.psi - psi0)) / norm0 if norm0 > 0.0 else 0.0
    )

    violations = []
    if energy_drift > config.limits.energy_drift:
        violations.append(
            f"energy drift {energy_drift:.3e} exceeds {config.limits.energy_drift:g}"
        )
    if helicity_drift > config.limits.helicity_drift:
        violations.append(
            f"helicity drift {helicity_drift:.3e} exceeds {config.limits.helicity_drift:g}"
        )
    if max_gauss > config.limits.gauss_residual:
        violations.append(
            f"gauss residual {max_gauss:.3e} exceeds {config.limits.gauss_residual:g}"
        )

    return SimResult(
        records=tuple(records),
        final=f_last,
        energy_drift=energy_drift,
        helicity_drift=helicity_drift,
        max_gauss=max_gauss,
        l2_change=l2_change,
        violations=tuple(violations),
    )
