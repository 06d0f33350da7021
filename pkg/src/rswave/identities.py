"""Machine-verified factorization identities behind first-order wave equations.

Each check expands a product of matrices with exact polynomial entries and
asserts that the residual against the expected right-hand side is the
identically-zero matrix:

* the 4x4 Dirac electron factorization of E^2 - c^2 p^2 - m^2 c^4,
* the 2x2 two-component (neutrino) factorization of E^2 - c^2 p^2,
* the 3x3 photon factorization, which needs the momentum outer product
  p p^T subtracted before the remainder is proportional to the identity,
  in both factor orders and in the rearranged (outer-product-isolated) form,
* the reduction of the massless spin-k constraint system to the single
  transversality condition p . psi = 0 at k = 1,
* the three column-times-row factorizations of p p^T.

Factors with a 1/c prefactor are cleared to the polynomial ring by
multiplying each identity through by the minimal power of c, so every
check happens in exact integer/rational arithmetic.

A parallel numeric path evaluates the *unexpanded* factors at rational
sample points and multiplies them as plain matrices, guarding the symbolic
expansion code itself.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exact import I_UNIT, Poly, PolyMatrix, num_is_zero, num_matmul, num_sub, variables
from .spin import PAULI_EXACT, SPIN1_EXACT, check_spin_algebra

_V = variables()
_E = _V["E"]
_PX = _V["px"]
_PY = _V["py"]
_PZ = _V["pz"]
_M = _V["m"]
_C = _V["c"]
_PT = _V["pt"]
_P = (_PX, _PY, _PZ)


def _const_matrix(entries):
    return PolyMatrix([[Poly.constant(z) for z in row] for row in entries])


def pauli_matrices():
    """The three sigma matrices as constant polynomial matrices."""
    return tuple(_const_matrix(m) for m in PAULI_EXACT)


def spin1_matrices():
    """The Cartesian spin-1 matrices as constant polynomial matrices."""
    return tuple(_const_matrix(m) for m in SPIN1_EXACT)


def momentum_dot(matrices):
    """px*Mx + py*My + pz*Mz."""
    acc = PolyMatrix.zeros(matrices[0].nrows)
    for p, m in zip(_P, matrices):
        acc = acc + m * p
    return acc


def momentum_outer():
    """The 3x3 matrix with entries p_i p_j."""
    return PolyMatrix([[pi * pj for pj in _P] for pi in _P])


def momentum_column(slot):
    """3x3 matrix whose column ``slot`` is (px, py, pz), zero elsewhere."""
    zero = Poly.zero()
    return PolyMatrix(
        [[p if j == slot else zero for j in range(3)] for p in _P]
    )


def momentum_row(slot):
    """3x3 matrix whose row ``slot`` is (px, py, pz), zero elsewhere."""
    zero = Poly.zero()
    return PolyMatrix(
        [list(_P) if i == slot else [zero, zero, zero] for i in range(3)]
    )


def _block4(tl, tr, bl, br):
    rows = []
    for i in range(2):
        rows.append(list(tl.rows()[i]) + list(tr.rows()[i]))
    for i in range(2):
        rows.append(list(bl.rows()[i]) + list(br.rows()[i]))
    return PolyMatrix(rows)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of a single exact identity check."""

    name: str
    description: str
    ok: bool
    residual_terms: int
    expanded_terms: int

    def kv_line(self):
        return (
            f"identity={self.name} ok={'true' if self.ok else 'false'} "
            f"residual_terms={self.residual_terms} expanded_terms={self.expanded_terms}"
        )


@dataclass(frozen=True)
class _Conjunct:
    factors: tuple      # matrices multiplied left to right
    subtract: tuple     # matrices subtracted from the product
    expected: PolyMatrix


@dataclass(frozen=True)
class _Spec:
    name: str
    description: str
    conjuncts: tuple


def _dirac_spec():
    i2 = PolyMatrix.identity(2)
    i4 = PolyMatrix.identity(4)
    sx, sy, sz = pauli_matrices()
    p_sigma = momentum_dot((sx, sy, sz))
    mc2 = _M * _C * _C
    block = _block4(mc2 * i2, _C * p_sigma, _C * p_sigma, -(mc2) * i2)
    plus = _E * i4 + block
    minus = _E * i4 - block
    mass_shell = _E * _E - _C * _C * (_PX**2 + _PY**2 + _PZ**2) - (_M * _C * _C) ** 2
    return _Spec(
        name="dirac-decomposition",
        description="4x4 electron factorization of the relativistic energy relation",
        conjuncts=(_Conjunct((plus, minus), (), mass_shell * i4),),
    )


def _neutrino_spec():
    i2 = PolyMatrix.identity(2)
    p_sigma = momentum_dot(pauli_matrices())
    minus = _E * i2 - _C * p_sigma
    plus = _E * i2 + _C * p_sigma
    shell = _E * _E - _C * _C * (_PX**2 + _PY**2 + _PZ**2)
    return _Spec(
        name="neutrino-decomposition",
        description="2x2 two-component factorization of E^2 - c^2 p^2",
        conjuncts=(_Conjunct((minus, plus), (), shell * i2),),
    )


def _photon_factors():
    i3 = PolyMatrix.identity(3)
    p_s = momentum_dot(spin1_matrices())
    minus = _E * i3 - _C * p_s
    plus = _E * i3 + _C * p_s
    return i3, minus, plus


def _photon_spec():
    i3, minus, plus = _photon_factors()
    shell = _E * _E - _C * _C * (_PX**2 + _PY**2 + _PZ**2)
    c2 = _C * _C
    # cleared of 1/c by multiplying the whole identity by c^2
    main = _Conjunct((minus, plus), (c2 * momentum_outer(),), shell * i3)
    # the outer product really is column(p) times row(p)
    col = PolyMatrix([[p] for p in _P])
    row = PolyMatrix([list(_P)])
    outer = _Conjunct((col, row), (), momentum_outer())
    return _Spec(
        name="photon-decomposition",
        description="3x3 photon factorization with the p p^T correction (c-cleared)",
        conjuncts=(main, outer),
    )


def _photon_conjugate_spec():
    i3, minus, plus = _photon_factors()
    shell = _E * _E - _C * _C * (_PX**2 + _PY**2 + _PZ**2)
    c2 = _C * _C
    return _Spec(
        name="photon-conjugate-decomposition",
        description="photon factorization with the factor order reversed",
        conjuncts=(_Conjunct((plus, minus), (c2 * momentum_outer(),), shell * i3),),
    )


def _photon_alternative_spec():
    i3, minus, plus = _photon_factors()
    shell = _E * _E - _C * _C * (_PX**2 + _PY**2 + _PZ**2)
    c2 = _C * _C
    # rearranged so the outer product is the object being produced
    return _Spec(
        name="photon-alternative-decomposition",
        description="rearranged photon identity isolating c^2 p p^T",
        conjuncts=(_Conjunct((minus, plus), (shell * i3,), c2 * momentum_outer()),),
    )


def dirac_constraint_matrices(triple):
    """The evolution operator and three constraint matrices of the massless
    spin-k system, with the time momentum eliminated from the constraints.

    Eliminating pt pairs the evolution equation
    ``(k pt + S.p) psi = 0`` with, per axis j, the combination obtained by
    multiplying the evolution equation by S_j and the j-th companion
    equation by k and subtracting, e.g. for x:

        (k^2 - Sx^2) px + (i k Sz - Sx Sy) py - (i k Sy + Sx Sz) pz.

    Requires a triple with exact entries whose algebra checks pass.
    """
    if triple.exact is None:
        raise ValueError("constraint construction needs exact spin-matrix entries")
    report = check_spin_algebra(triple)
    if not report.passed:
        raise ValueError(f"spin algebra violated:\n{report}")
    scale = Fraction(triple.scale)
    mats = tuple(
        _const_matrix(m).map_entries(lambda p: p * Poly.constant(1 / scale))
        for m in triple.exact
    )
    sx, sy, sz = mats
    k = Poly.constant(triple.k)
    k2 = Poly.constant(triple.k * triple.k)
    i_unit = Poly.constant(I_UNIT)
    dim = triple.dim
    eye = PolyMatrix.identity(dim)

    evolution = k * _PT * eye + momentum_dot(mats)
    cx = (k2 * eye - sx * sx) * _PX + (i_unit * k * sz - sx * sy) * _PY \
        - (i_unit * k * sy + sx * sz) * _PZ
    cy = (k2 * eye - sy * sy) * _PY + (i_unit * k * sx - sy * sz) * _PZ \
        - (i_unit * k * sz + sy * sx) * _PX
    cz = (k2 * eye - sz * sz) * _PZ + (i_unit * k * sy - sz * sx) * _PX \
        - (i_unit * k * sx + sz * sy) * _PY
    return evolution, cx, cy, cz


def _constraint_reduction_specs():
    from .spin import spin1_cartesian

    _, cx, cy, cz = dirac_constraint_matrices(spin1_cartesian())
    specs = []
    for axis, matrix, slot in (("x", cx, 0), ("y", cy, 1), ("z", cz, 2)):
        specs.append(
            _Spec(
                name=f"constraint-reduction-{axis}",
                description=(
                    f"spin-1 {axis}-constraint collapses to the row matrix "
                    "encoding p . psi = 0"
                ),
                conjuncts=(_Conjunct((matrix,), (), momentum_row(slot)),),
            )
        )
    return specs


def _rank1_specs():
    specs = []
    for axis, slot in (("x", 0), ("y", 1), ("z", 2)):
        specs.append(
            _Spec(
                name=f"rank1-factorization-{axis}",
                description=f"p p^T = (column {slot} of p) times (row {slot} of p)",
                conjuncts=(
                    _Conjunct((momentum_column(slot), momentum_row(slot)), (), momentum_outer()),
                ),
            )
        )
    return specs


_SPEC_CACHE = None


def _all_specs():
    # specs are immutable, so building them once is safe
    global _SPEC_CACHE
    if _SPEC_CACHE is None:
        specs = [
            _dirac_spec(),
            _neutrino_spec(),
            _photon_spec(),
            _photon_conjugate_spec(),
            _photon_alternative_spec(),
        ]
        specs.extend(_constraint_reduction_specs())
        specs.extend(_rank1_specs())
        _SPEC_CACHE = tuple(specs)
    return _SPEC_CACHE


def identity_names():
    return tuple(s.name for s in _all_specs())


def _expand(conjunct):
    acc = conjunct.factors[0]
    for f in conjunct.factors[1:]:
        acc = acc * f
    for s in conjunct.subtract:
        acc = acc - s
    return acc


def _check_spec(spec):
    residual_terms = 0
    expanded_terms = 0
    ok = True
    for conj in spec.conjuncts:
        expanded = _expand(conj)
        expanded_terms += expanded.nterms
        residual = expanded - conj.expected
        if not residual.is_zero:
            ok = False
        residual_terms += residual.nterms
    return IdentityCheck(
        name=spec.name,
        description=spec.description,
        ok=ok,
        residual_terms=residual_terms,
        expanded_terms=expanded_terms,
    )


def verify_identity(name):
    for spec in _all_specs():
        if spec.name == name:
            return _check_spec(spec)
    raise KeyError(f"unknown identity {name!r}; choose from {identity_names()}")


def verify_all():
    """Run every identity check in canonical order."""
    return [_check_spec(spec) for spec in _all_specs()]


def verify_dirac_decomposition():
    return verify_identity("dirac-decomposition")


def verify_neutrino_decomposition():
    return verify_identity("neutrino-decomposition")


def verify_photon_decomposition():
    return verify_identity("photon-decomposition")


def verify_alternative_decomposition():
    return verify_identity("photon-alternative-decomposition")


def verify_spin1_constraint_reduction():
    return [_check_spec(s) for s in _constraint_reduction_specs()]


def verify_rank1_factorizations():
    return [_check_spec(s) for s in _rank1_specs()]


def numeric_identity_holds(name, point):
    """Evaluate the identity's factors at a rational point and multiply them
    as plain matrices; True iff the result matches the expected side exactly.

    Independent of the symbolic expansion: products are taken after
    evaluation, not before.
    """
    for spec in _all_specs():
        if spec.name != name:
            continue
        for conj in spec.conjuncts:
            acc = conj.factors[0].evaluate(point)
            for f in conj.factors[1:]:
                acc = num_matmul(acc, f.evaluate(point))
            for s in conj.subtract:
                acc = num_sub(acc, s.evaluate(point))
            acc = num_sub(acc, conj.expected.evaluate(point))
            if not num_is_zero(acc):
                return False
        return True
    raise KeyError(f"unknown identity {name!r}")
