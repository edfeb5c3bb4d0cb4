import math

import numpy as np
import pytest

from splitspin.errors import DomainError, UndefinedAngle
from splitspin.states import (
    DICKE_FAMILY_9,
    DickeParams,
    Direction,
    SplitConfig,
    cos_power,
    dicke_operator_tables,
    optimal_directions,
    split_dicke_quadratic_moments,
    split_dicke_spin_moments,
    split_squeezed_moments,
    squeezing_angle,
    twist_coeffs,
)


class TestConfigTypes:
    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(DomainError):
            SplitConfig.probabilistic(4, (0.5, 0.4))

    def test_probabilities_must_be_positive(self):
        with pytest.raises(DomainError):
            SplitConfig.probabilistic(4, (1.2, -0.2))

    def test_counts_must_sum(self):
        with pytest.raises(DomainError):
            SplitConfig(4, counts=(1, 2))

    def test_exactly_one_split_kind(self):
        with pytest.raises(DomainError):
            SplitConfig(4, probabilities=(0.5, 0.5), counts=(2, 2))

    def test_partition_noise_flag(self):
        assert SplitConfig.probabilistic(4, (0.5, 0.5)).partition_noise
        assert not SplitConfig.deterministic((2, 2)).partition_noise

    def test_mean_counts(self):
        cfg = SplitConfig.probabilistic(10, (0.3, 0.7))
        assert np.allclose(cfg.mean_counts(), [3.0, 7.0])

    def test_dicke_parity(self):
        with pytest.raises(DomainError):
            DickeParams.from_jm(2, 0.5)
        with pytest.raises(DomainError):
            DickeParams.from_jm(2, 3)
        d = DickeParams.from_jm(2.5, -1.5)
        assert d.two_j == 5 and d.two_m == -3

    def test_direction_unit_norm(self):
        with pytest.raises(DomainError):
            Direction.of(1.0, 1.0, 0.0)
        assert np.allclose(Direction.squeezed(0.3).components,
                           [0.0, -math.sin(0.3), math.cos(0.3)])


class TestCosPower:
    def test_small_exponent_exact(self):
        assert cos_power(0.3, 3) == math.cos(0.3) ** 3

    def test_large_exponent_matches_high_precision(self):
        # Reference computed with 60-digit arithmetic.
        assert cos_power(0.15, 998) == pytest.approx(1.2751553101339936e-05, rel=1e-12)

    def test_sign_tracking_odd_power(self):
        val = cos_power(3.0, 101)
        assert val < 0
        assert val == pytest.approx(math.cos(3.0) ** 101, rel=1e-10)

    def test_fractional_exponent_negative_base_rejected(self):
        with pytest.raises(DomainError):
            cos_power(3.0, 100.5)

    def test_zero_exponent(self):
        assert cos_power(1.0, 0) == 1.0


class TestTwistCoeffs:
    def test_untwisted_is_zero(self):
        assert twist_coeffs(100, 0.0) == (0.0, 0.0)

    def test_two_particles_closed_form(self):
        # For N = 2 the pair coefficients reduce to -+ sin(mu/2).
        fm, fp = twist_coeffs(2, math.pi / 3)
        assert fm == pytest.approx(-0.5, abs=1e-14)
        assert fp == pytest.approx(0.5, abs=1e-14)

    def test_high_precision_reference(self):
        # 60-digit evaluation of the same expressions at N=500, mu=0.02.
        fm, fp = twist_coeffs(500, 0.02)
        assert fm == pytest.approx(-0.0019285459626690995357, abs=1e-12)
        assert fp == pytest.approx(0.049331838835472088062, abs=1e-12)

    def test_sign_ordering_everywhere(self):
        rng = np.random.default_rng(0)
        for _ in range(300):
            n = int(rng.integers(2, 2000))
            mu = float(rng.uniform(0.0, 2.0 * math.pi - 1e-9))
            fm, fp = twist_coeffs(n, mu)
            assert fm <= 0.0 <= fp

    def test_reflection_symmetry(self):
        for n in (2, 7, 64, 501):
            for mu in (0.3, 1.0, 2.5):
                assert twist_coeffs(n, mu) == pytest.approx(
                    twist_coeffs(n, 2.0 * math.pi - mu), abs=1e-13)

    def test_requires_two_particles(self):
        with pytest.raises(DomainError):
            twist_coeffs(1, 0.5)


class TestSqueezingAngle:
    def test_small_mu_limit(self):
        for n in (3, 10, 250):
            assert squeezing_angle(n, 1e-8) == pytest.approx(math.pi / 4, abs=1e-6)

    def test_matches_covariance_diagonalization(self):
        # Independent route: diagonalize the exact transverse covariance of
        # the twisted state (brute-force matrix algebra) at N=3, mu=pi.
        from splitspin.oracle import j_op, oat_state, split_state, sym_cov

        n, mu = 3, math.pi
        state = split_state(oat_state(n, mu), (1.0,))
        jy, jz = j_op("y", 0), j_op("z", 0)
        cov = np.array([
            [sym_cov(state, jy, jy), sym_cov(state, jy, jz)],
            [sym_cov(state, jy, jz), sym_cov(state, jz, jz)],
        ])
        vals, vecs = np.linalg.eigh(cov)
        vmin = vecs[:, 0]
        theta = squeezing_angle(n, mu)
        s = np.array([-math.sin(theta), math.cos(theta)])
        assert abs(abs(float(s @ vmin)) - 1.0) <= 1e-12

    def test_returned_axis_minimizes_variance(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            n = int(rng.integers(3, 400))
            mu = float(rng.uniform(1e-4, 2.0 * math.pi - 1e-4))
            theta = squeezing_angle(n, mu)
            cfg = SplitConfig.probabilistic(n, (1.0,))
            var = {}
            for tag, th in (("s", theta), ("r", theta + math.pi / 2)):
                d = Direction.squeezed(th)
                ms = split_squeezed_moments(cfg, mu, [(Direction.anti_squeezed(th), d)])
                var[tag] = ms.cov_ss[0, 0]
            assert var["s"] <= var["r"] + 1e-12

    def test_degenerate_at_zero(self):
        with pytest.raises(UndefinedAngle):
            squeezing_angle(10, 0.0)

    def test_needs_three_particles(self):
        with pytest.raises(DomainError):
            squeezing_angle(2, 0.3)


class TestSplitSqueezedMoments:
    def test_coherent_split(self):
        ms = split_squeezed_moments(SplitConfig.probabilistic(4, (0.5, 0.5)), 0.0)
        assert np.allclose(ms.mean_x, [1.0, 1.0])
        assert np.allclose(ms.cov_ss.array, 0.5 * np.eye(2))
        assert np.allclose(ms.comm, np.diag(ms.mean_x))

    def test_squeezed_variance_direct_substitution(self):
        # Diagonal covariance p^2 N(N-1)/4 f^- + p N/4 at N=10, p=1/2, mu=0.3.
        fm, _ = twist_coeffs(10, 0.3)
        ms = split_squeezed_moments(SplitConfig.probabilistic(10, (0.5, 0.5)), 0.3)
        assert ms.cov_ss[0, 0] == pytest.approx(0.25 * 10 * 9 / 4 * fm + 0.5 * 10 / 4,
                                                rel=1e-14)

    def test_matches_oracle_pn(self):
        from splitspin.oracle import moment_set_from_state, oat_state, split_state

        n, mu, p = 6, 0.7, (0.3, 0.7)
        ms = split_squeezed_moments(SplitConfig.probabilistic(n, p), mu)
        r, s = optimal_directions(n, mu)
        oracle = moment_set_from_state(split_state(oat_state(n, mu), p), [r, r], [s, s])
        assert np.max(np.abs(ms.cov_ss.array - oracle.cov_ss.array)) < 1e-10
        assert np.max(np.abs(ms.cov_rr.array - oracle.cov_rr.array)) < 1e-10
        assert np.max(np.abs(ms.mean_x - oracle.mean_x)) < 1e-10
        assert np.max(np.abs(ms.comm - oracle.comm)) < 1e-10

    def test_npn_no_cross_mode_correlation_untwisted(self):
        ms = split_squeezed_moments(SplitConfig.deterministic((3, 5)), 0.0)
        assert np.allclose(ms.cov_ss.array, np.diag([3 / 4, 5 / 4]))

    def test_npn_mean_direct_substitution(self):
        ms = split_squeezed_moments(SplitConfig.deterministic((3, 5)), 0.5)
        assert ms.mean_x[0] == pytest.approx(1.5 * cos_power(0.25, 7), rel=1e-14)

    def test_matches_oracle_npn(self):
        from splitspin.oracle import moment_set_from_state, npn_state

        cfg = SplitConfig.deterministic((3, 3))
        ms = split_squeezed_moments(cfg, 0.7)
        r, s = optimal_directions(6, 0.7)
        oracle = moment_set_from_state(npn_state(cfg, 0.7), [r, r], [s, s])
        assert np.max(np.abs(ms.cov_ss.array - oracle.cov_ss.array)) < 1e-10
        assert np.max(np.abs(ms.cov_rr.array - oracle.cov_rr.array)) < 1e-10

    def test_pn_and_npn_means_agree(self):
        # With p_k = N_k / N the mean spins coincide; the covariances differ
        # only in their delta_kl structure.
        pn = split_squeezed_moments(SplitConfig.probabilistic(8, (0.25, 0.75)), 0.4)
        npn = split_squeezed_moments(SplitConfig.deterministic((2, 6)), 0.4)
        assert np.allclose(pn.mean_x, npn.mean_x, rtol=1e-14)
        assert not np.allclose(pn.cov_ss.array, npn.cov_ss.array)
        # Cross-mode pair weights are p_k p_l N(N-1) vs N_k N_l = p_k p_l N^2.
        assert pn.cov_rr[0, 1] / npn.cov_rr[0, 1] == pytest.approx(7 / 8, rel=1e-12)
        assert pn.cov_ss[0, 1] / npn.cov_ss[0, 1] == pytest.approx(7 / 8, rel=1e-12)

    def test_mode_permutation_symmetry(self):
        p = (0.2, 0.3, 0.5)
        ms = split_squeezed_moments(SplitConfig.probabilistic(7, p), 0.6)
        perm = (2, 0, 1)
        msp = split_squeezed_moments(
            SplitConfig.probabilistic(7, tuple(p[i] for i in perm)), 0.6)
        idx = np.argsort(perm)  # mapping new index -> old
        assert np.allclose(msp.mean_x, ms.mean_x[list(perm)])
        assert np.allclose(msp.cov_ss.array, ms.cov_ss.array[np.ix_(perm, perm)])

    def test_custom_directions_need_one_pair_per_mode(self):
        with pytest.raises(DomainError):
            split_squeezed_moments(SplitConfig.probabilistic(4, (0.5, 0.5)), 0.3,
                                   [(Direction.y(), Direction.z())])


class TestSplitDickeSpinMoments:
    def test_mean_along_z(self):
        cfg = SplitConfig.probabilistic(4, (0.5, 0.5))
        d = DickeParams.from_jm(2, 1)
        mean, _, _ = split_dicke_spin_moments(cfg, d, Direction.z(), Direction.z(), 0, 1)
        assert mean == pytest.approx(0.5)

    def test_polar_state_has_no_cross_correlation(self):
        cfg = SplitConfig.probabilistic(4, (0.5, 0.5))
        d = DickeParams.from_jm(2, 2)
        _, _, pair = split_dicke_spin_moments(cfg, d, Direction.x(), Direction.x(), 0, 1)
        mean_k, _, _ = split_dicke_spin_moments(cfg, d, Direction.x(), Direction.x(), 0, 0)
        assert pair - mean_k * mean_k == pytest.approx(0.0, abs=1e-14)

    def test_matches_oracle(self):
        from splitspin.oracle import expect, expect_real, j_vec_op, split_dicke_state

        d = DickeParams.from_jm(2, 0)
        p = (0.5, 0.5)
        cfg = SplitConfig.probabilistic(4, p)
        state = split_dicke_state(d, p)
        rng = np.random.default_rng(8)
        for _ in range(10):
            u = rng.normal(size=3)
            u /= np.linalg.norm(u)
            v = rng.normal(size=3)
            v /= np.linalg.norm(v)
            k, l = int(rng.integers(2)), int(rng.integers(2))
            mean, second, pair = split_dicke_spin_moments(
                cfg, d, Direction(u), Direction(v), k, l)
            assert mean == pytest.approx(expect_real(state, j_vec_op(u, k)), abs=1e-10)
            assert second == pytest.approx(
                expect(state, j_vec_op(u, k) * j_vec_op(u, k)).real, abs=1e-10)
            sym = 0.5 * (expect(state, j_vec_op(u, k) * j_vec_op(v, l))
                         + expect(state, j_vec_op(v, l) * j_vec_op(u, k))).real
            assert pair == pytest.approx(sym, abs=1e-10)

    def test_requires_probabilistic_split(self):
        with pytest.raises(DomainError):
            split_dicke_spin_moments(SplitConfig.deterministic((2, 2)),
                                     DickeParams.from_jm(2, 0),
                                     Direction.x(), Direction.x(), 0, 1)


class TestDickeOperatorTables:
    def test_linear_commutator_is_m(self):
        cov, comm = dicke_operator_tables(DickeParams.from_jm(2, 1))
        assert comm[("Jx", "Jy")] == 1.0

    def test_z_variance_vanishes(self):
        for m in (-2, 0, 1):
            cov, _ = dicke_operator_tables(DickeParams.from_jm(2, m))
            assert cov[("Jz", "Jz")] == 0.0

    def test_all_entries_against_dense_algebra(self):
        from splitspin.oracle import dense_spin_matrices

        d = DickeParams.from_jm(5, 2)
        cov, comm = dicke_operator_tables(d)
        jx, jy, jz = dense_spin_matrices(d.two_j)
        ops = {
            "Jx": jx, "Jy": jy, "Jz": jz,
            "{Jx,Jz}/2": (jx @ jz + jz @ jx) / 2, "{Jx,Jy}/2": (jx @ jy + jy @ jx) / 2,
            "{Jy,Jz}/2": (jy @ jz + jz @ jy) / 2,
            "Jx2": jx @ jx, "Jy2": jy @ jy, "Jz2": jz @ jz,
        }
        vec = np.zeros(d.two_j + 1)
        vec[(d.two_j + d.two_m) // 2] = 1.0

        def ex(mat):
            return complex(np.vdot(vec, mat @ vec))

        for a in DICKE_FAMILY_9:
            for b in DICKE_FAMILY_9:
                dense = (ex(ops[a] @ ops[b] + ops[b] @ ops[a]) / 2
                         - ex(ops[a]) * ex(ops[b])).real
                assert cov[(a, b)] == pytest.approx(dense, abs=1e-11)
        for (a, b), val in comm.items():
            dense = (-1j * ex(ops[a] @ ops[b] - ops[b] @ ops[a])).real
            assert val == pytest.approx(dense, abs=1e-11)


class TestSplitDickeQuadraticMoments:
    def test_linear_variance_substitution(self):
        # Var(J_x) = (p/2)(j + (j^2 - m^2) p) = 325 at j=50, m=0, p=1/2.
        cfg = SplitConfig.probabilistic(100, (0.5, 0.5))
        ms = split_dicke_quadratic_moments(cfg, DickeParams.from_jm(50, 0))
        assert ms.cov_rr[0, 0] == pytest.approx(325.0)

    def test_polar_state_cross_blocks_vanish(self):
        cfg = SplitConfig.probabilistic(6, (0.4, 0.6))
        ms = split_dicke_quadratic_moments(cfg, DickeParams.from_jm(3, 3))
        assert ms.cov_ss[0, 1] == pytest.approx(0.0, abs=1e-14)
        assert ms.cov_rr[0, 1] == pytest.approx(0.0, abs=1e-14)

    def test_matches_oracle(self):
        from splitspin.oracle import quadratic_moment_set_from_state, split_dicke_state

        d = DickeParams.from_jm(2, 0)
        p = (0.4, 0.6)
        ms = split_dicke_quadratic_moments(SplitConfig.probabilistic(4, p), d)
        oracle = quadratic_moment_set_from_state(split_dicke_state(d, p), d)
        assert np.max(np.abs(ms.cov_ss.array - oracle.cov_ss.array)) < 1e-10
        assert np.max(np.abs(ms.cov_rr.array - oracle.cov_rr.array)) < 1e-10
        assert np.max(np.abs(ms.comm - oracle.comm)) < 1e-10
        assert np.max(np.abs(ms.mean_x - oracle.mean_x)) < 1e-10

    def test_covariances_are_psd(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            two_j = int(rng.integers(2, 30))
            two_m = int(rng.integers(-two_j, two_j + 1))
            if (two_j - two_m) % 2:
                two_m += 1 if two_m < two_j else -1
            p = rng.dirichlet(np.ones(3))
            p = np.clip(p, 0.05, None)
            p /= p.sum()
            cfg = SplitConfig.probabilistic(two_j, tuple(p))
            # Construction enforces PSD of both covariance blocks.
            split_dicke_quadratic_moments(cfg, DickeParams(two_j, two_m))
