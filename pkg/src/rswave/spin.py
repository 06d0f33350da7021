"""Spin matrices for arbitrary (half-)integer spin, and their validation.

Two representations are kept in exact integer arithmetic because they feed
the exact identity checks: the 2x2 sigma matrices (stored unscaled, with
eigenvalues +-1, so the triple carries an explicit scale factor of 2) and
the Cartesian 3x3 spin-1 matrices (S_j)_{lm} = -i eps_{jlm}, whose defining
property is (a.S)v = i a x v for any 3-vectors a, v.

General spin uses the standard ladder-operator construction in the
|k, m> basis and lives in floating point; its algebra is validated
numerically by :func:`check_spin_algebra`.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import RationalComplex

_0 = RationalComplex(0)
_1 = RationalComplex(1)
_I = RationalComplex(0, 1)

# sigma_x, sigma_y, sigma_z with eigenvalues +-1
PAULI_EXACT = (
    ((_0, _1), (_1, _0)),
    ((_0, -_I), (_I, _0)),
    ((_1, _0), (_0, -_1)),
)

# Cartesian spin-1 triple, (S_j)_{lm} = -i eps_{jlm}
SPIN1_EXACT = (
    ((_0, _0, _0), (_0, _0, -_I), (_0, _I, _0)),
    ((_0, _0, _I), (_0, _0, _0), (-_I, _0, _0)),
    ((_0, -_I, _0), (_I, _0, _0), (_0, _0, _0)),
)


def _to_array(exact_matrix):
    a = np.array([[z.to_complex() for z in row] for row in exact_matrix], dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpinTriple:
    """Three spin matrices of dimension 2k+1.

    The stored matrices equal ``scale`` times the spin matrices proper, so
    (sx/scale, sy/scale, sz/scale) satisfy the cyclic commutators
    [Sx,Sy] = iSz, ... and the Casimir sum Sx^2+Sy^2+Sz^2 = k(k+1) I.
    ``exact`` carries the entries as rational complex numbers when the
    representation admits them (the hand-written k=1/2 and k=1 forms).
    """

    k: Fraction
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    scale: int = 1
    exact: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "k", Fraction(self.k))
        dim = int(2 * self.k) + 1
        for name in ("sx", "sy", "sz"):
            m = getattr(self, name)
            if m.shape != (dim, dim):
                raise ValueError(f"{name} must be {dim}x{dim} for k={self.k}")

    @property
    def dim(self):
        return int(2 * self.k) + 1

    def matrices(self):
        """The properly normalized spin matrices (stored / scale)."""
        if self.scale == 1:
            return self.sx, self.sy, self.sz
        s = float(self.scale)
        return self.sx / s, self.sy / s, self.sz / s


def pauli_triple():
    """The 2x2 sigma triple exactly as usually printed (eigenvalues +-1).

    Tagged k=1/2 with scale 2: sigma = 2 S.
    """
    return SpinTriple(
        k=Fraction(1, 2),
        sx=_to_array(PAULI_EXACT[0]),
        sy=_to_array(PAULI_EXACT[1]),
        sz=_to_array(PAULI_EXACT[2]),
        scale=2,
        exact=PAULI_EXACT,
    )


def spin1_cartesian():
    """The Cartesian spin-1 triple (S_j)_{lm} = -i eps_{jlm}."""
    return SpinTriple(
        k=Fraction(1),
        sx=_to_array(SPIN1_EXACT[0]),
        sy=_to_array(SPIN1_EXACT[1]),
        sz=_to_array(SPIN1_EXACT[2]),
        scale=1,
        exact=SPIN1_EXACT,
    )


def spin_triple(k):
    """Ladder-operator spin matrices in the standard |k, m> basis.

    Sz = diag(k, k-1, ..., -k); the raising operator has matrix elements
    sqrt(k(k+1) - m(m+1)).  Entries are floating point; k = 1/2 and the
    Cartesian k = 1 forms are available exactly through
    :func:`pauli_triple` / :func:`spin1_cartesian`.
    """
    k = Fraction(k)
    if k < 0 or (2 * k).denominator != 1:
        raise ValueError(f"spin must be a non-negative half-integer, got {k}")
    dim = int(2 * k) + 1
    m = np.array([float(k - j) for j in range(dim)])
    sz = np.diag(m)
    kk = float(k * (k + 1))
    # <k, m+1 | S+ | k, m> sits on the superdiagonal
    sp = np.zeros((dim, dim))
    for j in range(1, dim):
        sp[j - 1, j] = math.sqrt(kk - m[j] * (m[j] + 1.0))
    sm = sp.T
    sx = (sp + sm) / 2.0
    sy = (sp - sm) / 2.0j
    sx = sx.astype(complex)
    sy = sy.astype(complex)
    sz = sz.astype(complex)
    for a in (sx, sy, sz):
        a.setflags(write=False)
    return SpinTriple(k=k, sx=sx, sy=sy, sz=sz, scale=1, exact=None)


def cartesian_spherical_transform():
    """Unitary U with U S_j^cartesian U^dagger = S_j^ladder for j = x, y, z.

    Columns of U^dagger are the Sz eigenvectors of the Cartesian triple in
    the standard ladder phase convention (the intertwiner between the two
    irreducible representations is unique up to one global phase, so no
    per-column phase normalization is possible).
    """
    rt = 1.0 / math.sqrt(2.0)
    v_plus = np.array([-rt, -1j * rt, 0.0])
    v_zero = np.array([0.0, 0.0, 1.0])
    v_minus = np.array([rt, -1j * rt, 0.0])
    v = np.column_stack([v_plus, v_zero, v_minus])
    u = v.conj().T
    u.setflags(write=False)
    return u


@dataclass(frozen=True)
class AlgebraCheck:
    name: str
    residual: float


@dataclass(frozen=True)
class SpinAlgebraReport:
    spin: Fraction
    tolerance: float
    checks: tuple

    @property
    def passed(self):
        return all(c.residual <= self.tolerance for c in self.checks)

    @property
    def max_residual(self):
        return max(c.residual for c in self.checks)

    def __str__(self):
        lines = [f"spin k={self.spin} (tolerance {self.tolerance:g})"]
        for c in self.checks:
            status = "PASS" if c.residual <= self.tolerance else "FAIL"
            lines.append(f"  {c.name:<16} residual={c.residual:.3e}  {status}")
        return "\n".join(lines)


def _fro(a):
    return float(np.linalg.norm(a))


def check_spin_algebra(triple, tolerance=1e-13):
    """Residual norms for Hermiticity, the cyclic commutators and the Casimir.

    Exact-representation triples (integer entries over a power-of-two
    scale) produce residuals that are exactly zero in floating point.
    """
    sx, sy, sz = triple.matrices()
    k = triple.k
    dim = triple.dim
    eye = np.eye(dim)
    casimir = float(k * (k + 1))
    checks = (
        AlgebraCheck("hermitian-x", _fro(sx - sx.conj().T)),
        AlgebraCheck("hermitian-y", _fro(sy - sy.conj().T)),
        AlgebraCheck("hermitian-z", _fro(sz - sz.conj().T)),
        AlgebraCheck("commutator-xy", _fro(sx @ sy - sy @ sx - 1j * sz)),
        AlgebraCheck("commutator-zx", _fro(sz @ sx - sx @ sz - 1j * sy)),
        AlgebraCheck("commutator-yz", _fro(sy @ sz - sz @ sy - 1j * sx)),
        AlgebraCheck("casimir", _fro(sx @ sx + sy @ sy + sz @ sz - casimir * eye)),
    )
    return SpinAlgebraReport(spin=k, tolerance=tolerance, checks=checks)
