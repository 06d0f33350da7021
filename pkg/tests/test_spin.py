from fractions import Fraction

import numpy as np
import pytest

from rswave.spin import (
    SpinTriple,
    cartesian_spherical_transform,
    check_spin_algebra,
    pauli_triple,
    spin1_cartesian,
    spin_triple,
)


class TestPauli:
    def test_sz_diagonal(self):
        assert np.array_equal(pauli_triple().sz, np.diag([1.0 + 0j, -1.0]))

    def test_sx_squares_to_identity(self):
        t = pauli_triple()
        assert np.array_equal(t.sx @ t.sx, np.eye(2, dtype=complex))

    def test_scale_and_label(self):
        t = pauli_triple()
        assert t.k == Fraction(1, 2)
        assert t.scale == 2

    def test_exact_algebra_residual_zero(self):
        report = check_spin_algebra(pauli_triple())
        assert report.passed
        assert report.max_residual == 0.0


class TestSpin1Cartesian:
    def test_sz_literal(self):
        expected = np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]])
        assert np.array_equal(spin1_cartesian().sz, expected)

    def test_casimir_is_two(self):
        t = spin1_cartesian()
        total = t.sx @ t.sx + t.sy @ t.sy + t.sz @ t.sz
        assert np.array_equal(total, 2.0 * np.eye(3))

    def test_exact_residual_zero(self):
        assert check_spin_algebra(spin1_cartesian()).max_residual == 0.0

    def test_z_eigenvector(self):
        t = spin1_cartesian()
        v = np.array([1.0, 1.0j, 0.0])
        assert np.allclose(t.sz @ v, v, atol=0, rtol=0)

    def test_cross_product_action(self):
        # (a.S) v = i a x v for arbitrary real a and complex v
        t = spin1_cartesian()
        rng = np.random.default_rng(42)
        for _ in range(50):
            a = rng.standard_normal(3)
            v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            m = a[0] * t.sx + a[1] * t.sy + a[2] * t.sz
            assert np.linalg.norm(m @ v - 1j * np.cross(a, v)) < 1e-14


class TestLadderConstruction:
    def test_half_matches_scaled_pauli(self):
        t = spin_triple(Fraction(1, 2))
        p = pauli_triple()
        assert np.allclose(t.sx, p.sx / 2, atol=1e-15)
        assert np.allclose(t.sy, p.sy / 2, atol=1e-15)
        assert np.allclose(t.sz, p.sz / 2, atol=1e-15)

    def test_spin1_sz_spectrum(self):
        assert np.array_equal(spin_triple(1).sz, np.diag([1.0 + 0j, 0.0, -1.0]))

    def test_spin2_casimir(self):
        t = spin_triple(2)
        total = t.sx @ t.sx + t.sy @ t.sy + t.sz @ t.sz
        assert np.linalg.norm(total - 6.0 * np.eye(5)) < 1e-13

    @pytest.mark.parametrize("k", [Fraction(1, 2), 1, Fraction(3, 2), 2,
                                   Fraction(5, 2), 3, Fraction(7, 2), 4])
    def test_algebra_up_to_spin_four(self, k):
        report = check_spin_algebra(spin_triple(k))
        assert report.passed, str(report)

    @pytest.mark.parametrize("bad", [-1, Fraction(-1, 2), 0.3, Fraction(1, 3)])
    def test_rejects_bad_spin(self, bad):
        with pytest.raises(ValueError):
            spin_triple(bad)


class TestAlgebraReport:
    def test_corrupted_triple_fails(self):
        t = spin1_cartesian()
        sz = t.sz.copy()
        sz[0, 0] += 0.1
        bad = SpinTriple(k=t.k, sx=t.sx, sy=t.sy, sz=sz)
        report = check_spin_algebra(bad)
        assert not report.passed
        failing = {c.name for c in report.checks if c.residual > report.tolerance}
        assert "commutator-xy" in failing

    def test_report_names(self):
        names = {c.name for c in check_spin_algebra(spin1_cartesian()).checks}
        assert names == {
            "hermitian-x", "hermitian-y", "hermitian-z",
            "commutator-xy", "commutator-zx", "commutator-yz", "casimir",
        }


class TestBasisTransform:
    def test_unitary(self):
        u = cartesian_spherical_transform()
        assert np.linalg.norm(u @ u.conj().T - np.eye(3)) < 1e-15
        assert abs(abs(np.linalg.det(u)) - 1.0) < 1e-15

    def test_diagonalizes_sz(self):
        # oracle: the Cartesian Sz has eigenvalues {1, 0, -1}
        u = cartesian_spherical_transform()
        sz = spin1_cartesian().sz
        eigs = np.sort(np.linalg.eigvalsh(sz))
        assert np.allclose(eigs, [-1.0, 0.0, 1.0], atol=1e-14)
        assert np.linalg.norm(u @ sz @ u.conj().T - np.diag([1.0, 0.0, -1.0])) < 1e-14

    def test_conjugates_all_three_simultaneously(self):
        u = cartesian_spherical_transform()
        cart = spin1_cartesian()
        ladder = spin_triple(1)
        for a, b in zip((cart.sx, cart.sy, cart.sz), (ladder.sx, ladder.sy, ladder.sz)):
            assert np.linalg.norm(u @ a @ u.conj().T - b) < 1e-13
