"""Command-line interface.

Subcommands:
    algebra     run the exact matrix-identity suite
    helicity    print the helicity basis and eigen-residuals for a mode
    evolve      run a configured field evolution with diagnostics
    dispersion  measure mode frequencies against c|k|
    selftest    run the invariant suite at desk scale

Exit codes: 0 success, 1 verification/invariant failure, 2 usage, config
or I/O error.  Output formatting uses 17 significant digits throughout,
so identical inputs give identical files.
"""

import argparse
import os
import sys
import time as time_mod

import numpy as np

from . import __version__
from .config import ConfigError, load_config
from .identities import identity_names, verify_all, verify_identity


def _fmt(x):
    return f"{x:.17g}"


def _parse_int_triple(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected jx,jy,jz, got {text!r}")
    return tuple(int(p) for p in parts)


def cmd_algebra(args):
    if args.identity:
        try:
            checks = [verify_identity(args.identity)]
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return 2
    else:
        checks = verify_all()
    for chk in checks:
        if args.format == "kv":
            print(chk.kv_line())
        else:
            status = "PASS" if chk.ok else "FAIL"
            print(f"{status}  {chk.name}  ({chk.description})")
    return 0 if all(c.ok for c in checks) else 1


def cmd_helicity(args):
    from .grid import Grid3
    from .helicity import FREQUENCY_HELICITY_SIGN, helicity_basis

    try:
        j = _parse_int_triple(args.k)
        box = tuple(float(v.strip()) for v in args.box.split(","))
        if len(box) == 1:
            box = box * 3
        if len(box) != 3:
            raise ValueError("expected one or three box lengths")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if j == (0, 0, 0):
        print("error: the zero mode has no helicity basis", file=sys.stderr)
        return 2
    if args.grid:
        try:
            dims = tuple(int(v) for v in args.grid.split(","))
            if len(dims) == 1:
                dims = dims * 3
            grid = Grid3(*dims, *box)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if not grid.mode_resolved(j):
            print(f"error: mode {j} is not resolved on the grid", file=sys.stderr)
            return 2
    k = np.array([2.0 * np.pi * j[a] / box[a] for a in range(3)])
    basis = helicity_basis(k)
    print(f"k = ({_fmt(k[0])}, {_fmt(k[1])}, {_fmt(k[2])})  |k| = {_fmt(basis.k.norm)}")
    for name, e in (("e_plus", basis.e_plus), ("e_zero", basis.e_zero),
                    ("e_minus", basis.e_minus)):
        comps = ", ".join(f"{_fmt(z.real)}{z.imag:+.17g}i" for z in e)
        print(f"{name} = ({comps})")
    rp, r0, rm = basis.eigen_residuals()
    print(f"eigen residuals: plus={rp:.3e} zero={r0:.3e} minus={rm:.3e}")
    print(
        "convention: phases exp(i(k.x - w t)) with w = "
        f"{FREQUENCY_HELICITY_SIGN:+d} * sigma * c * |k| "
        "(negative helicity is the positive-frequency solution)"
    )
    return 0


def _prepare_output_dir(output):
    directory = output.resolve_directory()
    os.makedirs(directory, exist_ok=True)
    probe = os.path.join(directory, ".write_probe")
    with open(probe, "w") as fh:
        fh.write("")
    os.remove(probe)
    return directory


def cmd_evolve(args):
    from .helicity import helicity_spectrum, write_spectrum_csv
    from .simulation import run_simulation
    from .snapio import write_diagnostics_csv, write_field_csv, write_snapshot

    try:
        config = load_config(args.config)
        directory = _prepare_output_dir(config.output)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    emitted = []

    def on_emit(step, field):
        if config.output.write_snapshots:
            base = os.path.join(directory, f"state_{step:08d}")
            write_snapshot(base + ".rsf", field, time=step * config.dt)
            if config.output.snapshot_csv:
                write_field_csv(base + ".csv", field)
        if config.output.write_spectrum:
            path = os.path.join(directory, f"spectrum_{step:08d}.csv")
            write_spectrum_csv(path, helicity_spectrum(field))
        emitted.append(step)

    try:
        result = run_simulation(config, on_emit=on_emit)
        diag_path = os.path.join(directory, config.output.diagnostics_name)
        write_diagnostics_csv(diag_path, result.records)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(f"steps = {config.steps}  t_final = {_fmt(config.steps * config.dt)}")
    print(f"emitted {len(emitted)} diagnostic rows -> {diag_path}")
    print(f"energy drift        = {_fmt(result.energy_drift)}")
    print(f"helicity drift      = {_fmt(result.helicity_drift)}")
    print(f"max gauss residual  = {_fmt(result.max_gauss)}")
    print(f"l2 change vs start  = {_fmt(result.l2_change)}")
    if result.violations:
        for v in result.violations:
            print(f"VIOLATION: {v}")
        return 1
    print("all invariant thresholds met")
    return 0


def cmd_dispersion(args):
    from .propagator import dispersion_check

    try:
        config = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        modes = [
            _parse_int_triple(chunk)
            for chunk in args.modes.split(";")
            if chunk.strip()
        ]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    results = []
    for mode in modes:
        try:
            results.append(
                dispersion_check(config.grid, mode, steps=args.steps,
                                 dt=config.dt, c=config.c)
            )
        except ValueError as exc:
            print(f"error: mode {mode}: {exc}", file=sys.stderr)
            return 2
    print("kmag,omega_measured,omega_expected,rel_error")
    worst = 0.0
    for r in results:
        worst = max(worst, r.rel_error)
        print(
            f"{_fmt(r.kmag)},{_fmt(r.omega_measured)},"
            f"{_fmt(r.omega_expected)},{_fmt(r.rel_error)}"
        )
    return 0 if worst < args.tolerance else 1


def _selftest_checks():
    """(name, callable) pairs; each raises AssertionError on failure."""
    from fractions import Fraction

    from .fields import RSField, energy, l2_norm
    from .grid import Grid3
    from .helicity import (
        conjugate_wave_operator_residual,
        helicity_basis,
        wave_operator_residual,
    )
    from .propagator import (
        curl_spectral,
        curl_via_spin_matrices,
        dispersion_check,
        fdtd_reference_step,
        gauss_residual,
        maxwell_residual,
        project_transverse,
        step_exact,
    )
    from .simulation import PlaneModeInit, PlaneWaveInit, SimConfig, run_simulation
    from .spin import check_spin_algebra, pauli_triple, spin1_cartesian, spin_triple

    rng = np.random.default_rng(20250901)

    def random_field(grid):
        shape = (3, *grid.shape)
        return RSField(
            grid=grid,
            psi=rng.standard_normal(shape) + 1j * rng.standard_normal(shape),
        )

    def spin_algebra():
        assert check_spin_algebra(pauli_triple()).max_residual == 0.0
        assert check_spin_algebra(spin1_cartesian()).max_residual == 0.0
        for k in (Fraction(1, 2), 1, Fraction(3, 2), 2):
            report = check_spin_algebra(spin_triple(k))
            assert report.passed, f"k={k}: {report}"

    def matrix_identities():
        checks = verify_all()
        bad = [c.name for c in checks if not c.ok]
        assert not bad, f"failing identities: {bad}"

    def curl_identity():
        grid = Grid3.cubic(8)
        for _ in range(2):
            f = random_field(grid)
            a = curl_spectral(f)
            b = curl_via_spin_matrices(f)
            rel = l2_norm(RSField(grid, a.psi - b.psi)) / l2_norm(a)
            assert rel < 1e-13, f"curl routes differ by {rel:.3e}"

    def transverse_projection():
        grid = Grid3.cubic(8)
        f = project_transverse(random_field(grid))
        ge, gb = gauss_residual(f)
        assert max(ge, gb) < 1e-12
        again = project_transverse(f)
        rel = l2_norm(RSField(grid, again.psi - f.psi)) / l2_norm(f)
        assert rel < 1e-13, "projection is not idempotent"

    def conservation():
        grid = Grid3.cubic(12)
        config = SimConfig(
            grid=grid, dt=0.02, steps=300, c=1.0,
            init=PlaneWaveInit(modes=(
                PlaneModeInit((1, 0, 0), 1, 1.0),
                PlaneModeInit((0, 1, 1), -1, 0.5 + 0.25j),
            )),
        )
        result = run_simulation(config)
        assert result.energy_drift < 1e-12, f"energy drift {result.energy_drift:.3e}"
        assert result.helicity_drift < 1e-12, f"helicity drift {result.helicity_drift:.3e}"
        assert result.max_gauss < 1e-12, f"gauss residual {result.max_gauss:.3e}"
        return result

    def maxwell_recovery():
        grid = Grid3.cubic(16)
        k = grid.wavevector((1, 0, 0))
        period = 2.0 * np.pi / float(np.linalg.norm(k))
        basis = helicity_basis(k)
        x = grid.position_mesh()
        phase = np.exp(1j * np.tensordot(k, x, axes=([0], [0])))
        f0 = RSField(grid, np.multiply.outer(basis.e_plus, phase))
        res = []
        for dt in (period / 128, period / 256):
            f1 = step_exact(f0, dt)
            res.append(maxwell_residual(f0, f1, dt)[0])
        ratio = res[0] / res[1]
        assert 3.5 < ratio < 4.5, f"residual ratio {ratio:.2f} is not O(dt^2)"

    def dispersion():
        grid = Grid3.cubic(16)
        r = dispersion_check(grid, (1, 0, 0), steps=32, dt=0.05)
        assert r.rel_error < 1e-10, f"dispersion error {r.rel_error:.3e}"

    def fdtd_oracle():
        errs = []
        for n in (16, 32):
            grid = Grid3.cubic(n, length=1.0)
            k = grid.wavevector((1, 0, 0))
            basis = helicity_basis(k)
            x = grid.position_mesh()
            phase = np.exp(1j * np.tensordot(k, x, axes=([0], [0])))
            f0 = RSField(grid, np.multiply.outer(basis.e_plus, phase))
            from .fields import from_rs, to_rs

            dt = 0.2 / n
            nsteps = n // 4
            em = from_rs(f0)
            for _ in range(nsteps):
                em = fdtd_reference_step(em, dt)
            exact = step_exact(f0, nsteps * dt)
            diff = to_rs(em).psi - exact.psi
            errs.append(float(np.linalg.norm(diff)) / l2_norm(exact))
        ratio = errs[0] / errs[1]
        assert 3.0 < ratio < 5.0, f"oracle refinement ratio {ratio:.2f}"

    def helicity_assignment():
        k = (0.0, 3.0, 4.0)
        assert wave_operator_residual(k, sigma=-1) < 1e-12
        assert conjugate_wave_operator_residual(k, sigma=-1) < 1e-12
        # wrong pairing must NOT be annihilated
        kn = float(np.linalg.norm(k))
        assert wave_operator_residual(k, sigma=1, omega=kn) > 0.5

    return [
        ("spin-algebra", spin_algebra),
        ("matrix-identities", matrix_identities),
        ("curl-identity", curl_identity),
        ("transverse-projection", transverse_projection),
        ("conservation", conservation),
        ("maxwell-recovery", maxwell_recovery),
        ("dispersion", dispersion),
        ("fdtd-oracle", fdtd_oracle),
        ("helicity-assignment", helicity_assignment),
    ]


def cmd_selftest(args):
    from .simulation import OutputSpec
    from .snapio import write_diagnostics_csv

    try:
        directory = _prepare_output_dir(OutputSpec(directory=args.output or ""))
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 2

    conservation_result = None
    for name, fn in _selftest_checks():
        start = time_mod.perf_counter()
        try:
            out = fn()
        except AssertionError as exc:
            print(f"FAIL  {name}: {exc}")
            return 1
        elapsed = time_mod.perf_counter() - start
        print(f"PASS  {name} ({elapsed:.2f} s)")
        if name == "conservation":
            conservation_result = out

    try:
        path = os.path.join(directory, "selftest_diagnostics.csv")
        write_diagnostics_csv(path, conservation_result.records)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rswave",
        description=(
            "Exact verification of spin-matrix wave-equation factorizations "
            "and spectral evolution of the complex field E - iB"
        ),
    )
    parser.add_argument("--version", action="version", version=f"rswave {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="run the exact identity suite")
    p.add_argument("--identity", help="run a single identity by name; one of: "
                   + ", ".join(identity_names()))
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.set_defaults(fn=cmd_algebra)

    p = sub.add_parser("helicity", help="print the helicity basis for a mode")
    p.add_argument("--k", required=True, metavar="JX,JY,JZ",
                   help="integer mode indices")
    p.add_argument("--box", default="6.283185307179586",
                   help="box length(s), one value or lx,ly,lz (default 2*pi)")
    p.add_argument("--grid", default="",
                   help="optional point counts n or nx,ny,nz for a Nyquist check")
    p.set_defaults(fn=cmd_helicity)

    p = sub.add_parser("evolve", help="run a configured evolution")
    p.add_argument("--config", required=True, help="path to a key=value config file")
    p.set_defaults(fn=cmd_evolve)

    p = sub.add_parser("dispersion", help="measure mode frequencies against c|k|")
    p.add_argument("--config", required=True, help="config supplying grid, c and dt")
    p.add_argument("--modes", default="1,0,0;0,1,0;0,0,1;1,1,0;1,0,1",
                   help="semicolon-separated integer mode triples")
    p.add_argument("--steps", type=int, default=64, help="steps used for the fit")
    p.add_argument("--tolerance", type=float, default=1e-10,
                   help="largest acceptable relative frequency error")
    p.set_defaults(fn=cmd_dispersion)

    p = sub.add_parser("selftest", help="run the invariant suite at desk scale")
    p.add_argument("--output", default="",
                   help="output directory (default $RSWAVE_OUTPUT_DIR or .)")
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
