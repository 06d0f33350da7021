"""Line-oriented ``key = value`` configuration files for the evolve command.

Blank lines and lines starting with ``#`` are skipped.  Unknown keys are
errors.  Documented keys:

    grid.nx, grid.ny, grid.nz    point counts (ny, nz default to nx)
    grid.lx, grid.ly, grid.lz    box lengths (default 2*pi; ly, lz default lx)
    physics.c                    wave speed (default 1.0)
    time.dt                      time step (required)
    time.steps                   step count (required)
    init.type                    plane | gaussian | file
    init.modes                   plane: "jx,jy,jz,sigma,re[,im]; ..." entries
    init.center                  gaussian: "x,y,z"
    init.width                   gaussian: envelope width
    init.carrier                 gaussian: "jx,jy,jz" carrier mode
    init.sigma                   gaussian: helicity +1 | -1
    init.amplitude               gaussian: "re[,im]" (default 1)
    init.path                    file: snapshot path
    init.project_transverse     true | false (default true)
    output.dir                   output directory (default $RSWAVE_OUTPUT_DIR or .)
    output.cadence               steps between diagnostics rows (default 1)
    output.diagnostics           diagnostics CSV filename (default diagnostics.csv)
    output.snapshots             true | false (default false)
    output.snapshot_csv          true | false (default false)
    output.spectrum              true | false: helicity-spectrum CSV per emission
    limits.energy_drift          invariant thresholds for the exit status
    limits.gauss_residual        (defaults 1e-10 each)
    limits.helicity_drift
"""

import numpy as np

from .grid import Grid3
from .simulation import (
    FileInit,
    GaussianInit,
    Limits,
    OutputSpec,
    PlaneModeInit,
    PlaneWaveInit,
    SimConfig,
)


class ConfigError(ValueError):
    pass


_KNOWN_KEYS = {
    "grid.nx", "grid.ny", "grid.nz", "grid.lx", "grid.ly", "grid.lz",
    "physics.c", "time.dt", "time.steps",
    "init.type", "init.modes", "init.center", "init.width", "init.carrier",
    "init.sigma", "init.amplitude", "init.path", "init.project_transverse",
    "output.dir", "output.cadence", "output.diagnostics", "output.snapshots",
    "output.snapshot_csv", "output.spectrum",
    "limits.energy_drift", "limits.gauss_residual", "limits.helicity_drift",
}


def _parse_lines(text):
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)
    return entries


def _take(entries, key, convert, default=None, required=False):
    if key not in entries:
        if required:
            raise ConfigError(f"missing required key {key!r}")
        return default
    value, lineno = entries.pop(key)
    try:
        return convert(value)
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from exc


def _to_int(value):
    return int(value)


def _to_float(value):
    x = float(value)
    if not np.isfinite(x):
        raise ValueError("must be finite")
    return x


def _to_bool(value):
    v = value.lower()
    if v in ("true", "yes", "on", "1"):
        return True
    if v in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected true/false, got {value!r}")


def _to_sigma(value):
    s = int(value)
    if s not in (1, 0, -1):
        raise ValueError("helicity must be +1, 0 or -1")
    return s


def _to_complex(value):
    parts = [p.strip() for p in value.split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError("expected 're' or 're,im'")


def _to_triple(value, conv):
    parts = [p.strip() for p in value.split(",")]
    if len(parts) != 3:
        raise ValueError("expected three comma-separated values")
    return tuple(conv(p) for p in parts)


def _to_modes(value):
    modes = []
    for chunk in value.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) not in (5, 6):
            raise ValueError(
                "each mode is 'jx,jy,jz,sigma,re[,im]'; got " + chunk
            )
        j = tuple(int(p) for p in parts[:3])
        sigma = _to_sigma(parts[3])
        amp = complex(float(parts[4]), float(parts[5]) if len(parts) == 6 else 0.0)
        modes.append(PlaneModeInit(indices=j, sigma=sigma, amplitude=amp))
    if not modes:
        raise ValueError("empty mode list")
    return tuple(modes)


def parse_config(text):
    """Parse configuration text into a SimConfig."""
    entries = _parse_lines(text)

    nx = _take(entries, "grid.nx", _to_int, required=True)
    ny = _take(entries, "grid.ny", _to_int, default=nx)
    nz = _take(entries, "grid.nz", _to_int, default=nx)
    lx = _take(entries, "grid.lx", _to_float, default=2.0 * np.pi)
    ly = _take(entries, "grid.ly", _to_float, default=lx)
    lz = _take(entries, "grid.lz", _to_float, default=lx)
    try:
        grid = Grid3(nx, ny, nz, lx, ly, lz)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    c = _take(entries, "physics.c", _to_float, default=1.0)
    dt = _take(entries, "time.dt", _to_float, required=True)
    steps = _take(entries, "time.steps", _to_int, required=True)

    init_type = _take(entries, "init.type", str, required=True)
    if init_type == "plane":
        init = PlaneWaveInit(modes=_take(entries, "init.modes", _to_modes, required=True))
    elif init_type == "gaussian":
        init = GaussianInit(
            center=_take(entries, "init.center",
                         lambda v: _to_triple(v, float), required=True),
            width=_take(entries, "init.width", _to_float, required=True),
            carrier=_take(entries, "init.carrier",
                          lambda v: _to_triple(v, int), required=True),
            sigma=_take(entries, "init.sigma", _to_sigma, required=True),
            amplitude=_take(entries, "init.amplitude", _to_complex, default=1.0 + 0.0j),
        )
    elif init_type == "file":
        init = FileInit(path=_take(entries, "init.path", str, required=True))
    else:
        raise ConfigError(f"init.type must be plane, gaussian or file, got {init_type!r}")

    project = _take(entries, "init.project_transverse", _to_bool, default=True)

    output = OutputSpec(
        directory=_take(entries, "output.dir", str, default=""),
        cadence=_take(entries, "output.cadence", _to_int, default=1),
        diagnostics_name=_take(entries, "output.diagnostics", str,
                               default="diagnostics.csv"),
        write_snapshots=_take(entries, "output.snapshots", _to_bool, default=False),
        snapshot_csv=_take(entries, "output.snapshot_csv", _to_bool, default=False),
        write_spectrum=_take(entries, "output.spectrum", _to_bool, default=False),
    )
    limits = Limits(
        energy_drift=_take(entries, "limits.energy_drift", _to_float, default=1e-10),
        gauss_residual=_take(entries, "limits.gauss_residual", _to_float, default=1e-10),
        helicity_drift=_take(entries, "limits.helicity_drift", _to_float, default=1e-10),
    )

    if entries:
        # keys spelled correctly but irrelevant for the chosen init type
        leftover = ", ".join(sorted(entries))
        raise ConfigError(f"keys not applicable to this configuration: {leftover}")

    try:
        return SimConfig(
            grid=grid, dt=dt, steps=steps, c=c, init=init,
            project_transverse=project, output=output, limits=limits,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path):
    """Read and parse a configuration file."""
    with open(path) as fh:
        return parse_config(fh.read())
