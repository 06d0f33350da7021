import numpy as np
import pytest

from rswave import Grid3, RSField
from rswave.helicity import (
    FREQUENCY_HELICITY_SIGN,
    PlaneWaveMode,
    WaveVector,
    apply_k_dot_S,
    conjugate_wave_operator_residual,
    helicity_basis,
    helicity_spectrum,
    mode_frequency,
    plane_wave_rs,
    wave_operator_residual,
)
from rswave.propagator import project_transverse

from field_helpers import random_field, single_mode_field


def random_wavevectors(n, seed=3):
    rng = np.random.default_rng(seed)
    vs = rng.standard_normal((n, 3)) * 3.0
    # sprinkle in near-pole and axis-aligned directions
    vs[0] = (0.0, 0.0, 2.0)
    vs[1] = (0.0, 0.0, -1.5)
    vs[2] = (1e-6, 0.0, 1.0)
    vs[3] = (2.0, 0.0, 0.0)
    return [WaveVector(*v) for v in vs]


class TestBasis:
    def test_z_axis_frozen_values(self):
        b = helicity_basis(WaveVector(0.0, 0.0, 1.0))
        rt = 1.0 / np.sqrt(2.0)
        assert np.allclose(b.e_plus, [rt, 1j * rt, 0.0], atol=1e-15)
        assert np.allclose(b.e_zero, [0.0, 0.0, 1.0], atol=0)
        assert np.allclose(b.e_minus, [rt, -1j * rt, 0.0], atol=1e-15)

    def test_zero_wavevector_rejected(self):
        with pytest.raises(ValueError):
            helicity_basis(WaveVector(0.0, 0.0, 0.0))

    @pytest.mark.parametrize("k", random_wavevectors(40))
    def test_orthonormal_eigen_correct(self, k):
        b = helicity_basis(k)
        vs = (b.e_plus, b.e_zero, b.e_minus)
        for i, u in enumerate(vs):
            for j, v in enumerate(vs):
                expected = 1.0 if i == j else 0.0
                assert abs(np.vdot(u, v) - expected) < 1e-13
        assert max(b.eigen_residuals()) < 1e-13 * max(1.0, k.norm)
        # longitudinal vector is parallel to k
        khat = k.as_array() / k.norm
        assert np.linalg.norm(np.cross(khat, b.e_zero)) < 1e-13
        # transverse vectors are orthogonal to k
        assert abs(np.dot(khat, b.e_plus)) < 1e-13
        assert abs(np.dot(khat, b.e_minus)) < 1e-13


class TestSpinAction:
    def test_z_eigenvalue_plus_one(self):
        out = apply_k_dot_S(WaveVector(0.0, 0.0, 1.0), np.array([1.0, 1.0j, 0.0]))
        assert np.allclose(out, [1.0, 1.0j, 0.0], atol=1e-15)

    def test_longitudinal_annihilated(self):
        out = apply_k_dot_S(WaveVector(0.0, 0.0, 1.0), np.array([0.0, 0.0, 1.0]))
        assert np.allclose(out, 0.0, atol=0)

    def test_matches_cross_product(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            k = rng.standard_normal(3)
            v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            assert np.linalg.norm(
                apply_k_dot_S(WaveVector(*k), v) - 1j * np.cross(k, v)
            ) < 1e-14 * max(1.0, np.linalg.norm(k) * np.linalg.norm(v))


class TestPlaneWave:
    def test_phase_one_at_origin(self):
        mode = PlaneWaveMode(WaveVector(0.3, -1.2, 0.7), 1, 2.0 - 1.0j)
        b = helicity_basis(mode.k)
        out = plane_wave_rs(mode, np.zeros(3), 0.0)
        assert np.allclose(out, mode.amplitude * b.e_plus, atol=1e-15)

    def test_periodicity(self):
        mode = PlaneWaveMode(WaveVector(1.0, 2.0, -2.0), -1, 1.5)
        c = 2.0
        period = 2.0 * np.pi / (c * mode.k.norm)
        x = np.array([0.4, -0.1, 0.2])
        f0 = plane_wave_rs(mode, x, 0.0, c)
        f1 = plane_wave_rs(mode, x, period, c)
        assert np.linalg.norm(f1 - f0) < 1e-12 * np.linalg.norm(f0)

    def test_transversality(self):
        mode = PlaneWaveMode(WaveVector(1.0, 1.0, 1.0), 1, 1.0)
        out = plane_wave_rs(mode, np.array([0.1, 0.2, 0.3]), 0.5)
        assert abs(np.dot(mode.k.as_array(), out)) < 1e-14

    def test_longitudinal_mode_rejected(self):
        with pytest.raises(ValueError):
            PlaneWaveMode(WaveVector(0.0, 0.0, 1.0), 0, 1.0)

    def test_grid_shaped_positions(self):
        grid = Grid3.cubic(4)
        mode = PlaneWaveMode(WaveVector(1.0, 0.0, 0.0), 1, 1.0)
        out = plane_wave_rs(mode, grid.position_mesh(), 0.0)
        assert out.shape == (3, 4, 4, 4)

    def test_satisfies_first_order_equation(self):
        # dPsi/dt = i c curl Psi, checked with the analytic time derivative
        mode = PlaneWaveMode(WaveVector(0.0, 2.0, 1.0), -1, 1.0 + 0.5j)
        c = 1.3
        x = np.array([0.2, 0.1, -0.4])
        omega = mode_frequency(mode, c)
        psi = plane_wave_rs(mode, x, 0.7, c)
        dpsi_dt = -1j * omega * psi
        curl = 1j * np.cross(mode.k.as_array(), psi)
        assert np.linalg.norm(dpsi_dt - 1j * c * curl) < 1e-13 * np.linalg.norm(psi)


class TestHelicityAssignment:
    def test_negative_helicity_positive_frequency(self):
        # the module default pairs sigma = -1 with omega = +c|k|
        assert FREQUENCY_HELICITY_SIGN == -1
        k = (0.0, 3.0, 4.0)
        mode = PlaneWaveMode(WaveVector(*k), -1, 1.0)
        assert mode_frequency(mode, 1.0) == pytest.approx(5.0)
        assert wave_operator_residual(k, sigma=-1) < 1e-12
        assert conjugate_wave_operator_residual(k, sigma=-1) < 1e-12

    def test_wrong_pairing_not_annihilated(self):
        k = (0.0, 3.0, 4.0)
        kn = 5.0
        assert wave_operator_residual(k, sigma=1, omega=kn) > 0.5
        assert conjugate_wave_operator_residual(k, sigma=1, omega=kn) > 0.5


class TestSpectrum:
    def test_single_mode_single_entry(self):
        grid = Grid3.cubic(8)
        amp = 0.7 - 0.2j
        f = single_mode_field(grid, (1, 2, 0), sigma=1, amplitude=amp)
        spec = helicity_spectrum(f)
        a_plus, a_zero, a_minus = spec.amplitudes((1, 2, 0))
        assert abs(a_plus - amp) < 1e-13
        assert abs(a_zero) < 1e-13 and abs(a_minus) < 1e-13
        total = spec.total_power()
        assert abs(total - abs(amp) ** 2) < 1e-12

    def test_two_modes_recovered(self):
        grid = Grid3.cubic(8)
        f1 = single_mode_field(grid, (1, 0, 0), sigma=1, amplitude=1.0)
        f2 = single_mode_field(grid, (0, 0, 2), sigma=-1, amplitude=0.5j)
        f = RSField(grid, f1.psi + f2.psi)
        spec = helicity_spectrum(f)
        assert abs(spec.amplitudes((1, 0, 0))[0] - 1.0) < 1e-13
        assert abs(spec.amplitudes((0, 0, 2))[2] - 0.5j) < 1e-13
        modes = list(spec.nonzero_modes(threshold=1e-10))
        assert len(modes) == 2

    def test_parseval(self):
        grid = Grid3.cubic(8)
        f = random_field(grid, seed=9)
        spec = helicity_spectrum(f)
        mean_sq = float(np.mean(np.sum(np.abs(f.psi) ** 2, axis=0)))
        assert abs(spec.total_power() - mean_sq) < 1e-12 * mean_sq

    def test_projected_field_has_no_longitudinal_content(self):
        # zero-mean field: the k = 0 slot is untouched by projection and
        # carries no helicity label, so remove it first
        grid = Grid3.cubic(8)
        raw = random_field(grid, seed=10)
        psi = raw.psi - raw.psi.mean(axis=(1, 2, 3), keepdims=True)
        f = project_transverse(RSField(grid, psi))
        spec = helicity_spectrum(f)
        scale = np.sqrt(spec.total_power())
        assert float(np.max(np.abs(spec.a_zero))) < 1e-12 * scale
