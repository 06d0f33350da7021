import numpy as np
import pytest

from rswave import (
    EMField,
    Grid3,
    RSField,
    curl_spectral,
    curl_via_spin_matrices,
    dispersion_check,
    energy,
    fdtd_reference_step,
    fdtd_stable_dt,
    from_rs,
    gauss_residual,
    helicity_basis,
    helicity_invariant,
    l2_norm,
    maxwell_residual,
    project_transverse,
    step_exact,
    to_rs,
)

from field_helpers import random_field, resolved_random_field, single_mode_field


def rel_diff(a, b):
    return float(np.linalg.norm(a.psi - b.psi)) / float(np.linalg.norm(b.psi))


class TestCurl:
    def test_uniform_field_curl_free(self):
        grid = Grid3.cubic(8)
        f = RSField(grid, np.ones((3, *grid.shape), dtype=complex))
        assert l2_norm(curl_spectral(f)) < 1e-14

    def test_eigenrelation_on_helicity_mode(self):
        grid = Grid3.cubic(8)
        for sigma in (1, -1):
            f = single_mode_field(grid, (1, 2, 0), sigma=sigma)
            kmag = float(np.linalg.norm(grid.wavevector((1, 2, 0))))
            expected = RSField(grid, sigma * kmag * f.psi)
            assert rel_diff(curl_spectral(f), expected) < 1e-13

    def test_longitudinal_mode_curl_free(self):
        grid = Grid3.cubic(8)
        f = single_mode_field(grid, (0, 1, 1), sigma=0)
        assert l2_norm(curl_spectral(f)) < 1e-13 * l2_norm(f)

    def test_matches_spin_matrix_route(self):
        # the same operator through the 3x3 matrix contraction k.S
        grid = Grid3.cubic(16)
        for seed in range(20):
            f = random_field(grid, seed=seed)
            a = curl_spectral(f)
            b = curl_via_spin_matrices(f)
            assert rel_diff(a, b) < 1e-13


class TestProjection:
    def test_idempotent_and_stable_on_transverse(self):
        grid = Grid3.cubic(8)
        f = single_mode_field(grid, (1, 0, 0), sigma=1)
        assert rel_diff(project_transverse(f), f) < 1e-14
        g = project_transverse(random_field(grid, seed=1))
        assert rel_diff(project_transverse(g), g) < 1e-14

    def test_kills_longitudinal_mode(self):
        grid = Grid3.cubic(8)
        f = single_mode_field(grid, (0, 0, 2), sigma=0)
        assert l2_norm(project_transverse(f)) < 1e-13 * l2_norm(f)

    def test_divergence_after_projection(self):
        grid = Grid3.cubic(8)
        f = project_transverse(random_field(grid, seed=2))
        ge, gb = gauss_residual(f)
        assert ge < 1e-12 and gb < 1e-12

    def test_uniform_mode_untouched(self):
        grid = Grid3.cubic(8)
        f = RSField(grid, np.full((3, *grid.shape), 2.0 - 1.0j))
        assert rel_diff(project_transverse(f), f) == 0.0


class TestStepExact:
    def test_zero_step_is_identity(self):
        grid = Grid3.cubic(8)
        f = random_field(grid, seed=3)
        assert rel_diff(step_exact(f, 0.0), f) == 0.0

    def test_full_period_return(self):
        grid = Grid3.cubic(8)
        f0 = single_mode_field(grid, (1, 0, 0), sigma=1)
        kmag = float(np.linalg.norm(grid.wavevector((1, 0, 0))))
        c = 2.0
        period = 2.0 * np.pi / (c * kmag)
        f = f0
        for _ in range(32):
            f = step_exact(f, period / 32, c)
        assert rel_diff(f, f0) < 1e-12

    def test_uniform_field_static(self):
        grid = Grid3.cubic(8)
        f = RSField(grid, np.full((3, *grid.shape), 1.0 + 2.0j))
        assert rel_diff(step_exact(f, 0.7), f) == 0.0

    def test_unitary_per_step(self):
        grid = Grid3.cubic(8)
        f = random_field(grid, seed=4)
        stepped = step_exact(f, 0.31, 1.7)
        assert abs(l2_norm(stepped) / l2_norm(f) - 1.0) < 1e-13

    def test_helicity_phases(self):
        # sigma modes pick up exp(i sigma c |k| dt) exactly
        grid = Grid3.cubic(8)
        dt, c = 0.21, 1.3
        for sigma in (1, -1):
            f = single_mode_field(grid, (0, 1, 1), sigma=sigma)
            kmag = float(np.linalg.norm(grid.wavevector((0, 1, 1))))
            expected = RSField(grid, np.exp(1j * sigma * c * kmag * dt) * f.psi)
            assert rel_diff(step_exact(f, dt, c), expected) < 1e-13

    def test_helicity_route_cross_check(self):
        # rotation result == decompose-into-helicity, phase, reassemble
        from rswave.helicity import basis_arrays

        grid = Grid3.cubic(8)
        f = random_field(grid, seed=5)
        dt, c = 0.17, 1.0
        hat = np.fft.fftn(f.psi, axes=(1, 2, 3)).reshape(3, -1)
        ep, e0, em = basis_arrays(grid)
        phases = np.exp(1j * c * grid.kmag_flat * dt)
        rebuilt = (
            (np.einsum("cn,cn->n", ep.conj(), hat) * phases) * ep
            + np.einsum("cn,cn->n", e0.conj(), hat) * e0
            + (np.einsum("cn,cn->n", em.conj(), hat) / phases) * em
        )
        via_basis = np.fft.ifftn(rebuilt.reshape(3, *grid.shape), axes=(1, 2, 3))
        direct = step_exact(f, dt, c)
        assert np.linalg.norm(via_basis - direct.psi) < 1e-12 * l2_norm(f)

    def test_constraint_preserved(self):
        grid = Grid3.cubic(8)
        f = project_transverse(random_field(grid, seed=6))
        before = max(gauss_residual(f))
        stepped = step_exact(f, 0.45)
        after = max(gauss_residual(stepped))
        assert after < before + 1e-14


class TestGaussResidual:
    def test_transverse_wave(self):
        grid = Grid3.cubic(8)
        ge, gb = gauss_residual(single_mode_field(grid, (1, 1, 0), sigma=1))
        assert ge < 1e-12 and gb < 1e-12

    def test_longitudinal_order_one(self):
        grid = Grid3.cubic(8)
        ge, gb = gauss_residual(single_mode_field(grid, (1, 0, 0), sigma=0))
        assert max(ge, gb) > 0.5

    def test_zero_field(self):
        grid = Grid3.cubic(4)
        f = RSField(grid, np.zeros((3, *grid.shape), dtype=complex))
        assert gauss_residual(f) == (0.0, 0.0)


class TestMaxwellResidual:
    def test_static_uniform(self):
        grid = Grid3.cubic(8)
        f = RSField(grid, np.full((3, *grid.shape), 1.0 - 0.5j))
        assert maxwell_residual(f, step_exact(f, 0.1), 0.1) == (0.0, 0.0)

    def test_second_order_in_dt(self):
        grid = Grid3.cubic(8)
        f0 = single_mode_field(grid, (1, 0, 0), sigma=1)
        kmag = float(np.linalg.norm(grid.wavevector((1, 0, 0))))
        period = 2.0 * np.pi / kmag
        res = []
        for dt in (period / 64, period / 128, period / 256):
            r1, r2 = maxwell_residual(f0, step_exact(f0, dt), dt)
            res.append((r1, r2))
        for fine, coarse in zip(res[1:], res[:-1]):
            for i in range(2):
                assert coarse[i] / fine[i] == pytest.approx(4.0, abs=0.3)
        # monotone decrease toward zero
        assert res[2][0] < res[1][0] < res[0][0]

    def test_grid_mismatch_rejected(self):
        a = RSField(Grid3.cubic(4), np.zeros((3, 4, 4, 4), dtype=complex))
        b = RSField(Grid3.cubic(8), np.zeros((3, 8, 8, 8), dtype=complex))
        with pytest.raises(ValueError):
            maxwell_residual(a, b, 0.1)

    def test_real_fields_satisfy_curl_laws(self):
        # start from real (E, B): the evolved splits stay real and the
        # discrete curl laws hold to O(dt^2) on a resolved field
        grid = Grid3.cubic(8)
        f = project_transverse(resolved_random_field(grid, seed=7))
        em = from_rs(f)
        assert np.isrealobj(em.e) and np.isrealobj(em.b)
        dt = 1e-3
        r1, r2 = maxwell_residual(f, step_exact(f, dt), dt)
        assert r1 < 1e-5 and r2 < 1e-5

    def test_nyquist_content_flagged(self):
        # energy parked at the Nyquist edge cannot satisfy the split curl
        # laws; the diagnostic must report it rather than hide it
        grid = Grid3.cubic(8)
        f = project_transverse(single_mode_field(grid, (2, 4, 0), sigma=1))
        dt = 1e-3
        r1, r2 = maxwell_residual(f, step_exact(f, dt), dt)
        assert max(r1, r2) > 0.1


class TestDispersion:
    def test_lowest_mode_frozen_value(self):
        # k = 2 pi / L (1,0,0) on L = 2 pi gives omega = c |k| = 1
        grid = Grid3.cubic(16)
        r = dispersion_check(grid, (1, 0, 0), steps=32, dt=0.05)
        assert r.omega_expected == pytest.approx(1.0)
        assert r.rel_error < 1e-10

    def test_linear_in_k_and_c(self):
        grid = Grid3.cubic(16)
        r1 = dispersion_check(grid, (1, 0, 0), steps=32, dt=0.05)
        r2 = dispersion_check(grid, (2, 0, 0), steps=32, dt=0.05)
        assert r2.omega_measured == pytest.approx(2.0 * r1.omega_measured, rel=1e-12)
        r3 = dispersion_check(grid, (1, 0, 0), steps=32, dt=0.05, c=2.0)
        assert r3.omega_measured == pytest.approx(2.0 * r1.omega_measured, rel=1e-12)

    def test_rejects_nyquist_and_aliased(self):
        grid = Grid3.cubic(8)
        with pytest.raises(ValueError):
            dispersion_check(grid, (4, 0, 0), steps=16, dt=0.01)
        with pytest.raises(ValueError):
            dispersion_check(grid, (9, 0, 0), steps=16, dt=0.01)

    def test_rejects_zero_mode_and_coarse_dt(self):
        grid = Grid3.cubic(8)
        with pytest.raises(ValueError):
            dispersion_check(grid, (0, 0, 0), steps=16, dt=0.01)
        with pytest.raises(ValueError):
            dispersion_check(grid, (1, 0, 0), steps=16, dt=10.0)


class TestConservation:
    def test_energy_over_thousand_steps(self):
        grid = Grid3.cubic(8)
        f = single_mode_field(grid, (1, 1, 0), sigma=1, amplitude=1.3)
        e0 = energy(f)
        for _ in range(1000):
            f = step_exact(f, 0.05)
        assert abs(energy(f) - e0) < 1e-12 * e0

    def test_helicity_invariant_values(self):
        grid = Grid3.cubic(8)
        f = single_mode_field(grid, (1, 0, 0), sigma=1, amplitude=2.0)
        assert helicity_invariant(f) == pytest.approx(4.0, rel=1e-12)
        g = single_mode_field(grid, (1, 0, 0), sigma=-1, amplitude=2.0)
        mix = RSField(grid, f.psi + g.psi)
        assert abs(helicity_invariant(mix)) < 1e-12

    def test_helicity_conserved(self):
        grid = Grid3.cubic(8)
        f = project_transverse(random_field(grid, seed=8))
        h0 = helicity_invariant(f)
        g = f
        for _ in range(300):
            g = step_exact(g, 0.07, 1.1)
        assert abs(helicity_invariant(g) - h0) < 1e-12 * max(abs(h0), 1.0)


class TestFDTDReference:
    def test_zero_and_static_fields(self):
        grid = Grid3.cubic(8, length=1.0)
        zero = EMField(grid, np.zeros((3, *grid.shape)), np.zeros((3, *grid.shape)))
        out = fdtd_reference_step(zero, 0.01)
        assert np.array_equal(out.e, zero.e) and np.array_equal(out.b, zero.b)
        e = np.zeros((3, *grid.shape))
        e[1] = 0.7
        static = EMField(grid, e, np.zeros((3, *grid.shape)))
        out = fdtd_reference_step(static, 0.01)
        assert np.allclose(out.e, static.e, atol=1e-15)
        assert np.allclose(out.b, static.b, atol=1e-15)

    def test_stability_bound_enforced(self):
        grid = Grid3.cubic(8, length=1.0)
        f = EMField(grid, np.zeros((3, *grid.shape)), np.zeros((3, *grid.shape)))
        dt_max = fdtd_stable_dt(grid, c=1.0)
        with pytest.raises(ValueError):
            fdtd_reference_step(f, 1.01 * dt_max)
        fdtd_reference_step(f, 0.99 * dt_max)

    def test_second_order_against_exact(self):
        errs = []
        for n in (8, 16):
            grid = Grid3.cubic(n, length=1.0)
            f0 = single_mode_field(grid, (1, 0, 0), sigma=1)
            dt = 0.2 / n
            nsteps = n // 2
            em = from_rs(f0)
            for _ in range(nsteps):
                em = fdtd_reference_step(em, dt)
            exact = step_exact(f0, nsteps * dt)
            errs.append(rel_diff(to_rs(em), exact))
        assert errs[0] / errs[1] == pytest.approx(4.0, abs=0.6)
