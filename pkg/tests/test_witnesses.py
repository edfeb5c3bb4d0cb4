import json
import math

import numpy as np
import pytest

from splitspin import closed_forms as cf
from splitspin.errors import DomainError
from splitspin.linalg import SymMatrix
from splitspin.matrices import (
    EstimationConfig,
    MatrixKind,
    TaggedMatrix,
    mode_separability_matrix,
    qfi_gain_matrix,
    qfi_mode_gain_matrix,
    squeezing_matrix,
)
from splitspin.states import DickeParams, SplitConfig, split_squeezed_moments
from splitspin.witnesses import (
    hierarchy_check,
    k_producibility_witness,
    qfi_depth_witness,
    shot_noise_witness,
    witness_report,
)


def tagged(kind, array):
    return TaggedMatrix(kind, SymMatrix(array))


def pn_matrices(n, p, mu, eta=1):
    cfg = SplitConfig.probabilistic(n, p)
    ms = split_squeezed_moments(cfg, mu)
    est = EstimationConfig.for_split(cfg, eta)
    return (squeezing_matrix(ms, est), mode_separability_matrix(ms),
            qfi_gain_matrix(ms, est, pure_state=True),
            qfi_mode_gain_matrix(ms, pure_state=True))


class TestShotNoiseWitness:
    def test_coherent_not_flagged(self):
        xi, *_ = pn_matrices(8, (0.5, 0.5), 0.0)
        assert not shot_noise_witness(xi)

    def test_two_particle_example(self):
        # lambda_min = (1 * (-1/2) + 1) / cos^2(pi/6) = 2/3 < 1.
        xi, *_ = pn_matrices(2, (0.5, 0.5), math.pi / 3)
        assert xi.lambda_min() == pytest.approx(2.0 / 3.0, rel=1e-12)
        assert shot_noise_witness(xi)

    def test_optimally_squeezed_large_ensemble(self):
        from splitspin.experiments import optimal_mu

        mu_star, val = optimal_mu("lambda_min_xi2", 100)
        xi, *_ = pn_matrices(100, (0.5, 0.5), mu_star)
        assert val < 1.0
        assert shot_noise_witness(xi)

    def test_kind_checked(self):
        with pytest.raises(DomainError):
            shot_noise_witness(tagged(MatrixKind.XI2_MS, np.eye(2)))


class TestKProducibilityWitness:
    def test_no_violation_at_unity(self):
        cert = k_producibility_witness(tagged(MatrixKind.XI2_MS, np.eye(3)))
        assert cert.certified_depth == 1
        assert cert.genuine_parties is None
        assert cert.thresholds_crossed == ()

    def test_threshold_arithmetic(self):
        cert = k_producibility_witness(tagged(MatrixKind.XI2_MS, 0.45 * np.eye(4)))
        assert cert.largest_violated_k == 2
        assert cert.genuine_parties == 3
        assert [k for k, _ in cert.thresholds_crossed] == [1, 2]

    def test_bounds_capped_at_mode_count(self):
        cert = k_producibility_witness(tagged(MatrixKind.XI2_MS, 0.05 * np.eye(3)))
        assert cert.largest_violated_k == 2
        assert cert.genuine_parties == 3

    def test_monotone_thresholds(self):
        cert = k_producibility_witness(tagged(MatrixKind.XI2_MS, 0.18 * np.eye(8)))
        ks = [k for k, _ in cert.thresholds_crossed]
        assert ks == list(range(1, max(ks) + 1))

    def test_genuine_multipartite_crossing_no_pn(self):
        # Deterministically split ensemble at its optimal twisting crosses
        # the 1/(M-1) line for N = 500, M = 4.
        from splitspin.experiments import optimal_mu

        n, modes = 500, 4
        mu_star, val = optimal_mu("lambda_min_xi2_ms", n, modes, partition_noise=False)
        assert val < 1.0 / (modes - 1)
        cfg = SplitConfig.deterministic((n // modes,) * modes)
        ms = split_squeezed_moments(cfg, mu_star)
        cert = k_producibility_witness(mode_separability_matrix(ms))
        assert cert.largest_violated_k == modes - 1
        assert cert.genuine_parties == modes

    def test_borderline_value_not_certified(self):
        lam = 0.5 - 1e-13  # inside the certification margin of the k=2 bound
        cert = k_producibility_witness(tagged(MatrixKind.XI2_MS, lam * np.eye(3)))
        assert cert.largest_violated_k == 1


class TestQfiDepthWitness:
    def test_identity_gives_depth_one(self):
        cert = qfi_depth_witness(tagged(MatrixKind.CHI_INV2_MS, np.eye(4)))
        assert cert.certified_depth == 1
        assert cert.genuine_parties is None

    def test_split_dicke_two_modes(self):
        # 1/lambda_max = 1300/2550: the k=1 bound is violated (the two modes
        # are entangled) but the value stays above 1/2, consistent with the
        # cap of two certifiable parties at M = 2.
        d = DickeParams.from_jm(50, 0)
        mat = cf.chi_inv2_ms_split_dicke(d, (0.5, 0.5)).to_sym()
        cert = qfi_depth_witness(TaggedMatrix(MatrixKind.CHI_INV2_MS, mat))
        assert 1.0 / cf.lambda_max_chi_inv2_ms_dicke(d, 2) > 0.5
        assert cert.largest_violated_k == 1
        assert cert.genuine_parties == 2

    def test_depth_grows_with_mode_count(self):
        d = DickeParams.from_jm(50, 0)
        depths = []
        for modes in (2, 10, 40):
            mat = cf.chi_inv2_ms_split_dicke(d, (1.0 / modes,) * modes).to_sym()
            cert = qfi_depth_witness(TaggedMatrix(MatrixKind.CHI_INV2_MS, mat))
            depths.append(cert.certified_depth)
        assert depths == sorted(depths) and depths[-1] > depths[0]
        # In the many-mode limit the bound approaches j/(j(j+1)) = 1/51.
        assert 1.0 / cf.lambda_max_chi_inv2_dicke(d) == pytest.approx(50.0 / 2550.0)


class TestHierarchyCheck:
    def test_equality_at_zero_twisting(self):
        xi, xims, chi, chims = pn_matrices(10, (0.5, 0.5), 0.0)
        assert hierarchy_check(xi, chi, "standard")
        assert hierarchy_check(xims, chims, "mode_sep")
        assert xi.lambda_min() == pytest.approx(1.0 / chi.lambda_max(), abs=1e-10)

    def test_grid_sweep(self):
        for mu in np.linspace(0.02, 1.2, 12):
            xi, xims, chi, chims = pn_matrices(24, (0.25, 0.75), float(mu))
            assert hierarchy_check(xi, chi, "standard")
            assert hierarchy_check(xims, chims, "mode_sep")

    def test_kind_mismatch_rejected(self):
        xi, _, chi, _ = pn_matrices(6, (0.5, 0.5), 0.2)
        with pytest.raises(DomainError):
            hierarchy_check(chi, xi, "standard")
        with pytest.raises(DomainError):
            hierarchy_check(xi, chi, "bogus")


class TestWitnessReport:
    def test_report_fields_and_json(self):
        xi, xims, chi, chims = pn_matrices(60, (0.5, 0.5), 0.06)
        report = witness_report(xi, xims, chi, chims)
        assert report.particle_entangled
        assert report.lambda_min_xi2 >= report.inv_lambda_max_chi2 - 1e-9
        payload = json.loads(report.to_json())
        assert set(payload) == {
            "lambda_min_xi2", "lambda_min_xi2_ms", "inv_lambda_max_chi2",
            "inv_lambda_max_chi2_ms", "particle_entangled", "certified_depth",
            "genuine_parties", "thresholds_crossed",
        }
        assert payload["particle_entangled"] is True

    def test_report_without_fisher_matrices(self):
        xi, xims, *_ = pn_matrices(6, (0.5, 0.5), 0.3)
        report = witness_report(xi, xims)
        assert report.inv_lambda_max_chi2 is None
        assert report.inv_lambda_max_chi2_ms is None
