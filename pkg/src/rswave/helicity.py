"""Helicity eigenbasis of the spin projection along a wavevector, and
circularly polarized plane-wave solutions of the first-order field equation.

For the Cartesian spin-1 matrices, (k.S) v = i k x v, so the eigenvectors
of k.S with eigenvalues (+|k|, 0, -|k|) are the right/longitudinal/left
polarization vectors of the direction k.

Sign convention
---------------
Plane waves carry the phase exp(i(k.x - w t)).  The first-order evolution
equation dPsi/dt = i c curl Psi forces w = -sigma c |k| for a helicity-sigma
mode, i.e. the *negative* helicity mode is the positive-frequency solution
and the positive-helicity content of a physical field sits in its complex
conjugate.  The pairing is held in the single module constant
:data:`FREQUENCY_HELICITY_SIGN` so downstream checks can assert it.
"""

from dataclasses import dataclass

import numpy as np

from .spin import spin1_cartesian

# w = FREQUENCY_HELICITY_SIGN * sigma * c * |k| under the exp(i(k.x - w t))
# phase convention; -1 makes dPsi/dt = i c curl Psi hold identically.
FREQUENCY_HELICITY_SIGN = -1

_S_CARTESIAN = spin1_cartesian()

# reference direction switches away from z near the poles
_POLE_THRESHOLD = 1.0 - 1e-9


@dataclass(frozen=True)
class WaveVector:
    kx: float
    ky: float
    kz: float

    def __post_init__(self):
        if not all(np.isfinite([self.kx, self.ky, self.kz])):
            raise ValueError("wavevector components must be finite")

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def as_array(self):
        return np.array([self.kx, self.ky, self.kz])

    @property
    def norm(self):
        return float(np.sqrt(self.kx**2 + self.ky**2 + self.kz**2))


@dataclass(frozen=True)
class HelicityBasis:
    """Orthonormal eigenvector triple of k.S for eigenvalues +|k|, 0, -|k|."""

    e_plus: np.ndarray
    e_zero: np.ndarray
    e_minus: np.ndarray
    k: WaveVector

    def eigen_residuals(self):
        """Norms of (k.S) e_sigma - sigma |k| e_sigma for sigma = +1, 0, -1."""
        kn = self.k.norm
        out = []
        for sigma, e in ((1, self.e_plus), (0, self.e_zero), (-1, self.e_minus)):
            out.append(float(np.linalg.norm(apply_k_dot_S(self.k, e) - sigma * kn * e)))
        return tuple(out)


@dataclass(frozen=True)
class PlaneWaveMode:
    """A single circularly polarized travelling mode; helicity +-1 only
    (the longitudinal direction is excluded by transversality)."""

    k: WaveVector
    helicity: int
    amplitude: complex

    def __post_init__(self):
        if self.helicity not in (1, -1):
            raise ValueError("helicity must be +1 or -1")
        if self.k.norm == 0.0:
            raise ValueError("plane-wave mode needs a nonzero wavevector")
        if not np.isfinite(self.amplitude):
            raise ValueError("amplitude must be finite")


def apply_k_dot_S(k, v):
    """Apply the matrix kx*Sx + ky*Sy + kz*Sz to a complex 3-vector.

    Equals i (k x v); the cross-product form is the independent check used
    in the tests.
    """
    if isinstance(k, WaveVector):
        k = k.as_array()
    m = k[0] * _S_CARTESIAN.sx + k[1] * _S_CARTESIAN.sy + k[2] * _S_CARTESIAN.sz
    return m @ np.asarray(v, dtype=complex)


def _transverse_pair(khat):
    """Real orthonormal transverse pair (t1, t2) for unit direction columns.

    ``khat`` has shape (3, n).  The reference direction is z, or x within
    1e-9 of the poles; t1 is the normalized transverse part of the
    reference, sign-fixed so its first nonzero component is positive, and
    t2 = khat x t1.
    """
    n = khat.shape[1]
    ref = np.zeros((3, n))
    near_pole = np.abs(khat[2]) > _POLE_THRESHOLD
    ref[2, :] = np.where(near_pole, 0.0, 1.0)
    ref[0, :] = np.where(near_pole, 1.0, 0.0)
    proj = np.einsum("cn,cn->n", ref, khat)
    t1 = ref - proj * khat
    t1 /= np.linalg.norm(t1, axis=0)
    # first nonzero component real positive, tolerating exact zeros
    lead = np.where(np.abs(t1[0]) > 1e-12, np.sign(t1[0]),
                    np.where(np.abs(t1[1]) > 1e-12, np.sign(t1[1]), np.sign(t1[2])))
    t1 *= lead
    t2 = np.cross(khat, t1, axis=0)
    return t1, t2


def helicity_basis(k):
    """Helicity eigenbasis for a nonzero wavevector.

    e_zero points along k; e_+- = (t1 +- i t2)/sqrt(2) over the documented
    transverse pair, which makes (k.S) e_sigma = sigma |k| e_sigma.
    """
    if isinstance(k, (tuple, list, np.ndarray)):
        k = WaveVector.from_array(np.asarray(k))
    kn = k.norm
    if kn == 0.0:
        raise ValueError("helicity basis undefined for the zero wavevector")
    khat = (k.as_array() / kn).reshape(3, 1)
    t1, t2 = _transverse_pair(khat)
    t1 = t1[:, 0]
    t2 = t2[:, 0]
    e_plus = (t1 + 1j * t2) / np.sqrt(2.0)
    e_minus = (t1 - 1j * t2) / np.sqrt(2.0)
    e_zero = khat[:, 0].astype(complex)
    for a in (e_plus, e_zero, e_minus):
        a.setflags(write=False)
    return HelicityBasis(e_plus=e_plus, e_zero=e_zero, e_minus=e_minus, k=k)


def mode_frequency(mode, c=1.0):
    """Angular frequency of the mode under the module sign convention."""
    return FREQUENCY_HELICITY_SIGN * mode.helicity * c * mode.k.norm


def plane_wave_rs(mode, position, time, c=1.0):
    """Analytic complex field of one circularly polarized mode.

    ``position`` is an array of shape (3,) or (3, ...); the result has the
    same trailing shape.  The returned field solves the first-order
    evolution equation and is transverse for every position and time.
    """
    basis = helicity_basis(mode.k)
    e = basis.e_plus if mode.helicity == 1 else basis.e_minus
    pos = np.asarray(position, dtype=float)
    k = mode.k.as_array()
    phase_space = np.tensordot(k, pos, axes=([0], [0]))
    omega = mode_frequency(mode, c)
    phase = np.exp(1j * (phase_space - omega * time))
    return mode.amplitude * np.multiply.outer(e, np.asarray(phase))


def wave_operator_residual(k, sigma, omega=None, c=1.0):
    """Relative residual of the operator (E/c + p.S) on the plane wave
    e_sigma exp(i(k.x - w t)).

    The energy and momentum actions on the analytic wave are exact:
    E -> w (times the cleared quantum of action) and p -> k, so the
    residual reduces to |(w/c) e_sigma + (k.S) e_sigma| over the operator
    scale.  Zero iff the frequency pairing matches the helicity.
    """
    if not isinstance(k, WaveVector):
        k = WaveVector.from_array(np.asarray(k))
    if omega is None:
        omega = FREQUENCY_HELICITY_SIGN * sigma * c * k.norm
    basis = helicity_basis(k)
    e = {1: basis.e_plus, 0: basis.e_zero, -1: basis.e_minus}[sigma]
    vec = (omega / c) * e + apply_k_dot_S(k, e)
    scale = abs(omega) / c + k.norm
    return float(np.linalg.norm(vec)) / scale


def conjugate_wave_operator_residual(k, sigma, omega=None, c=1.0):
    """Relative residual of the operator (E/c - p.S) on the *conjugate* of
    the plane wave e_sigma exp(i(k.x - w t)).

    Conjugation flips both the energy and momentum actions (to -w, -k) and
    the helicity content, so the conjugate of a correctly paired mode is
    annihilated by the opposite-sign operator.
    """
    if not isinstance(k, WaveVector):
        k = WaveVector.from_array(np.asarray(k))
    if omega is None:
        omega = FREQUENCY_HELICITY_SIGN * sigma * c * k.norm
    basis = helicity_basis(k)
    e = {1: basis.e_plus, 0: basis.e_zero, -1: basis.e_minus}[sigma]
    e_conj = e.conj()
    # E action on the conjugate wave is -w, the momentum action is -k
    vec = (-omega / c) * e_conj - apply_k_dot_S(WaveVector(-k.kx, -k.ky, -k.kz), e_conj)
    scale = abs(omega) / c + k.norm
    return float(np.linalg.norm(vec)) / scale


@dataclass(frozen=True)
class HelicitySpectrum:
    """Per-mode helicity amplitudes of a field on a periodic grid.

    Amplitudes are normalized so a single plane wave of amplitude A yields
    |a_sigma| = |A| at its mode.  The zero mode uses the z-axis basis.
    """

    grid: object
    a_plus: np.ndarray
    a_zero: np.ndarray
    a_minus: np.ndarray

    def amplitudes(self, j):
        """(a_+, a_0, a_-) at integer mode indices (jx, jy, jz)."""
        ix, iy, iz = (int(j[a]) % (self.grid.shape[a]) for a in range(3))
        return (
            complex(self.a_plus[ix, iy, iz]),
            complex(self.a_zero[ix, iy, iz]),
            complex(self.a_minus[ix, iy, iz]),
        )

    def total_power(self):
        return float(
            np.sum(np.abs(self.a_plus) ** 2)
            + np.sum(np.abs(self.a_zero) ** 2)
            + np.sum(np.abs(self.a_minus) ** 2)
        )

    def helicity_total(self):
        return float(np.sum(np.abs(self.a_plus) ** 2) - np.sum(np.abs(self.a_minus) ** 2))

    def nonzero_modes(self, threshold=1e-12):
        """Yield (jx, jy, jz, sigma, amplitude) above the threshold."""
        arrays = ((1, self.a_plus), (0, self.a_zero), (-1, self.a_minus))
        jx = np.fft.fftfreq(self.grid.nx, 1.0 / self.grid.nx).astype(int)
        jy = np.fft.fftfreq(self.grid.ny, 1.0 / self.grid.ny).astype(int)
        jz = np.fft.fftfreq(self.grid.nz, 1.0 / self.grid.nz).astype(int)
        for sigma, a in arrays:
            for ix, iy, iz in zip(*np.nonzero(np.abs(a) > threshold)):
                yield (int(jx[ix]), int(jy[iy]), int(jz[iz]), sigma, complex(a[ix, iy, iz]))


def basis_arrays(grid):
    """Helicity basis vectors for every grid mode, shape (3, npoints) each.

    The zero mode gets the z-direction basis so the triple stays
    orthonormal everywhere.
    """
    khat = grid.khat_flat.copy()
    zero = grid.kmag_flat == 0.0
    khat[2, zero] = 1.0
    t1, t2 = _transverse_pair(khat)
    e_plus = (t1 + 1j * t2) / np.sqrt(2.0)
    e_minus = (t1 - 1j * t2) / np.sqrt(2.0)
    e_zero = khat.astype(complex)
    return e_plus, e_zero, e_minus


def helicity_spectrum(field):
    """Decompose an RS field into helicity amplitudes per grid mode.

    Parseval: the summed squared amplitudes equal the grid mean of |Psi|^2.
    """
    grid = field.grid
    psi_hat = np.fft.fftn(field.psi, axes=(1, 2, 3)).reshape(3, -1) / grid.npoints
    e_plus, e_zero, e_minus = basis_arrays(grid)
    shape = grid.shape
    a_plus = np.einsum("cn,cn->n", e_plus.conj(), psi_hat).reshape(shape)
    a_zero = np.einsum("cn,cn->n", e_zero.conj(), psi_hat).reshape(shape)
    a_minus = np.einsum("cn,cn->n", e_minus.conj(), psi_hat).reshape(shape)
    return HelicitySpectrum(grid=grid, a_plus=a_plus, a_zero=a_zero, a_minus=a_minus)


def write_spectrum_csv(path, spectrum, threshold=1e-12):
    """CSV rows (jx, jy, jz, sigma, re, im) for modes above the threshold."""
    with open(path, "w") as fh:
        fh.write("jx,jy,jz,sigma,re,im\n")
        for jx, jy, jz, sigma, a in spectrum.nonzero_modes(threshold):
            fh.write(f"{jx},{jy},{jz},{sigma},{a.real:.17g},{a.imag:.17g}\n")
