"""Exact verification of the matrix factorizations behind first-order wave
equations, and spectral evolution of the complex electromagnetic field
Psi = E - i B on a periodic grid."""

from ._kernels import backend_name as kernel_backend
from .exact import Poly, PolyMatrix, RationalComplex, VARIABLES
from .fields import EMField, RSField, energy, from_rs, l2_norm, max_magnitude, to_rs
from .grid import Grid3
from .helicity import (
    FREQUENCY_HELICITY_SIGN,
    HelicityBasis,
    PlaneWaveMode,
    WaveVector,
    apply_k_dot_S,
    helicity_basis,
    helicity_spectrum,
    plane_wave_rs,
)
from .identities import (
    IdentityCheck,
    dirac_constraint_matrices,
    identity_names,
    verify_all,
    verify_alternative_decomposition,
    verify_dirac_decomposition,
    verify_identity,
    verify_neutrino_decomposition,
    verify_photon_decomposition,
    verify_rank1_factorizations,
    verify_spin1_constraint_reduction,
)
from .propagator import (
    curl_spectral,
    curl_via_spin_matrices,
    dispersion_check,
    fdtd_reference_step,
    fdtd_stable_dt,
    gauss_residual,
    helicity_invariant,
    maxwell_residual,
    project_transverse,
    step_exact,
)
from .simulation import (
    FileInit,
    GaussianInit,
    Limits,
    OutputSpec,
    PlaneModeInit,
    PlaneWaveInit,
    SimConfig,
    build_initial_field,
    run_simulation,
)
from .spin import (
    SpinTriple,
    cartesian_spherical_transform,
    check_spin_algebra,
    pauli_triple,
    spin1_cartesian,
    spin_triple,
)

__version__ = "0.1.0"
