"""Model fitting, moment estimation, and information-criterion helpers.

Recovery checks draw from known generators with fixed seeds. The household
study triples (loglik, AIC, BIC) reported for the three candidate models are
used purely as arithmetic probes for aic()/bic(): each pair must reproduce
from its loglik, k, and n = 7957.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

import ebbdist as ebb
from ebbdist import DomainError, EbbParams, RngSeed


# (loglik, k, expected_aic, expected_bic) at n = 7957
CRITERIA_TRIPLES = [
    (7832.86, 2, -15661.72, -15647.76),
    (7795.81, 2, -15587.63, -15573.66),
    (7922.92, 3, -15839.84, -15818.90),
]


class TestCriteria:
    def test_arithmetic(self):
        assert ebb.aic(-10.0, 3) == 26.0
        assert_allclose(ebb.bic(-10.0, 3, 100), 20.0 + 3 * np.log(100))

    @pytest.mark.parametrize("loglik, k, want_aic, want_bic", CRITERIA_TRIPLES)
    def test_household_study_triples(self, loglik, k, want_aic, want_bic):
        assert abs(ebb.aic(loglik, k) - want_aic) < 0.02
        assert abs(ebb.bic(loglik, k, 7957) - want_bic) < 0.02

    def test_bic_rejects_nonpositive_n(self):
        with pytest.raises(DomainError):
            ebb.bic(-10.0, 3, 0)


class TestFitBeta:
    def test_uniform_sample(self):
        z = RngSeed(101).generator().random(20000)
        r = ebb.fit_beta(z)
        assert r.model_name == "beta"
        assert r.converged
        assert abs(r.params[0] - 1.0) < 0.05
        assert abs(r.params[1] - 1.0) < 0.05

    def test_recovers_beta_parameters(self):
        rng = RngSeed(103).generator()
        z = rng.beta(2.0, 5.0, 50000)
        r = ebb.fit_beta(z)
        assert abs(r.params[0] - 2.0) < 0.1
        assert abs(r.params[1] - 5.0) < 0.25

    def test_criteria_consistent(self):
        z = RngSeed(107).generator().beta(3.0, 2.0, 500)
        r = ebb.fit_beta(z)
        assert_allclose(r.aic, ebb.aic(r.loglik, 2), rtol=1e-14)
        assert_allclose(r.bic, ebb.bic(r.loglik, 2, 500), rtol=1e-14)
        assert r.n == 500

    def test_rejects_boundary_values(self):
        with pytest.raises(DomainError):
            ebb.fit_beta(np.array([0.2, 0.5, 1.0]))
        with pytest.raises(DomainError):
            ebb.fit_beta(np.array([0.0, 0.5]))

    def test_rejects_tiny_sample(self):
        with pytest.raises(DomainError):
            ebb.fit_beta(np.array([0.4]))


class TestFitKumaraswamy:
    def test_recovers_parameters(self):
        # inverse-CDF draws: z = (1 - (1 - u)^(1/b))^(1/a)
        u = RngSeed(109).generator().random(100000)
        z = (1.0 - (1.0 - u) ** (1.0 / 5.0)) ** (1.0 / 2.0)
        r = ebb.fit_kumaraswamy(z)
        assert r.model_name == "kumaraswamy"
        assert abs(r.params[0] - 2.0) < 0.1
        assert abs(r.params[1] - 5.0) < 0.1

    def test_loglik_matches_density_sum(self):
        u = RngSeed(113).generator().random(400)
        z = (1.0 - (1.0 - u) ** (1.0 / 3.0)) ** (1.0 / 1.5)
        r = ebb.fit_kumaraswamy(z)
        a, b = r.params
        direct = np.sum(np.log(a * b) + (a - 1) * np.log(z)
                        + (b - 1) * np.log1p(-z ** a))
        assert_allclose(r.loglik, direct, rtol=1e-10)


class TestEbbLoglik:
    def test_matches_log_pdf_sum(self):
        p = EbbParams(2.0, 3.0, 0.5)
        z = ebb.sample_z(p, 300, RngSeed(127))
        assert_allclose(ebb.ebb_loglik(p, z), float(np.sum(ebb.log_pdf(p, z))),
                        rtol=1e-12)

    def test_rejects_boundary(self):
        with pytest.raises(DomainError):
            ebb.ebb_loglik(EbbParams(2.0, 3.0, 0.5), np.array([0.5, 1.0]))


class TestFitEbb:
    def test_profile_stage_one_is_beta_fit(self):
        # the two-stage fit takes (alpha, beta) from the beta likelihood and
        # only then searches rho, so its margin estimates match fit_beta
        z = ebb.sample_z(EbbParams(2.0, 3.0, 0.5), 5000, RngSeed(131))
        r = ebb.fit_ebb_profile(z)
        rb = ebb.fit_beta(z)
        assert r.model_name == "ebb"
        assert r.converged
        assert r.params[0] == rb.params[0]
        assert r.params[1] == rb.params[1]
        assert -1.0 <= r.params[2] <= 1.0

    def test_profile_consistent_under_independence(self):
        # with rho = 0 the beta stage is correctly specified
        z = RngSeed(229).generator().beta(2.0, 3.0, 20000)
        r = ebb.fit_ebb_profile(z)
        a, b, rho = r.params
        assert abs(a - 2.0) / 2.0 < 0.05
        assert abs(b - 3.0) / 3.0 < 0.05
        assert abs(rho) < 0.35

    def test_full_recovers_parameters(self):
        p = EbbParams(2.0, 3.0, -0.5)
        z = ebb.sample_z(p, 8000, RngSeed(137))
        r = ebb.fit_ebb_full(z)
        assert r.converged
        a, b, rho = r.params
        assert abs(a - 2.0) / 2.0 < 0.10
        assert abs(b - 3.0) / 3.0 < 0.10
        assert abs(rho + 0.5) < 0.40

    def test_full_dominates_profile(self):
        z = ebb.sample_z(EbbParams(2.0, 3.0, 0.5), 2000, RngSeed(139))
        lp = ebb.fit_ebb_profile(z).loglik
        lf = ebb.fit_ebb_full(z).loglik
        assert lf >= lp - 1e-6

    def test_loglik_field_consistent(self):
        z = ebb.sample_z(EbbParams(2.0, 3.0, 0.5), 1000, RngSeed(149))
        r = ebb.fit_ebb_profile(z)
        assert_allclose(r.loglik, ebb.ebb_loglik(EbbParams(*r.params), z),
                        rtol=1e-10)

    def test_near_uniform_data(self):
        z = RngSeed(151).generator().random(5000)
        r = ebb.fit_ebb_profile(z)
        a, b, _ = r.params
        assert abs(a - 1.0) < 0.1
        assert abs(b - 1.0) < 0.1


class TestGammaShape:
    def test_recovers_shape(self):
        x = RngSeed(157).generator().gamma(2.5, size=50000)
        assert abs(ebb.fit_gamma_shape(x) - 2.5) < 0.05

    def test_scale_invariant(self):
        x = RngSeed(163).generator().gamma(1.7, size=2000)
        assert_allclose(ebb.fit_gamma_shape(x), ebb.fit_gamma_shape(x * 37.0),
                        rtol=1e-9)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            ebb.fit_gamma_shape(np.array([1.0, -2.0, 3.0]))


class TestMeanCdfSurvival:
    def test_exponential_closed_form(self):
        # G(1-G) integrates to 1/2 for the unit exponential
        assert_allclose(ebb.mean_cdf_survival(1.0), 0.5, rtol=1e-9)

    def test_shape_two_closed_form(self):
        assert_allclose(ebb.mean_cdf_survival(2.0), 0.75, rtol=1e-9)

    def test_rejects_nonpositive_shape(self):
        with pytest.raises(DomainError):
            ebb.mean_cdf_survival(0.0)


class TestRhoMoment:
    def test_recovers_copula_rho(self):
        d = ebb.BivGammaFgm(1.0, 1.0, 1.0, 0.8)
        x, y = ebb.sample_pair(d, RngSeed(167).generator(), 100000)
        est = ebb.estimate_rho_moment(x, y, 1.0, 1.0)
        assert not est.clipped
        assert abs(est.value - 0.8) < 0.05

    def test_independent_margins(self):
        rng = RngSeed(173).generator()
        x = rng.gamma(2.0, size=100000)
        y = rng.gamma(3.0, size=100000)
        est = ebb.estimate_rho_moment(x, y, 2.0, 3.0)
        assert abs(est.value) < 0.05

    def test_clips_out_of_range(self):
        # identical exponential margins have corr 1 >> max attainable rho/4
        x = RngSeed(179).generator().gamma(1.0, size=5000)
        est = ebb.estimate_rho_moment(x, x, 1.0, 1.0)
        assert est.clipped
        assert est.value == 1.0

    def test_rejects_length_mismatch(self):
        with pytest.raises(DomainError):
            ebb.estimate_rho_moment(np.ones(5) * 2, np.ones(4) * 2, 1.0, 1.0)


class TestCompareAndLr:
    def test_compare_orders_by_aic(self):
        z = ebb.sample_z(EbbParams(2.0, 3.0, 0.7), 4000, RngSeed(181))
        rows = ebb.compare_models(z)
        assert [r.aic for r in rows] == sorted(r.aic for r in rows)
        assert {r.model_name for r in rows} == {"beta", "kumaraswamy", "ebb"}

    def test_ebb_wins_on_dependent_data(self):
        z = ebb.sample_z(EbbParams(2.0, 3.0, 0.9), 20000, RngSeed(191))
        rows = ebb.compare_models(z)
        assert rows[0].model_name == "ebb"

    def test_compare_rejects_bad_mode(self):
        with pytest.raises(DomainError):
            ebb.compare_models(np.array([0.2, 0.4, 0.6]), ebb_fit="map")

    def test_lr_statistic_properties(self):
        z = ebb.sample_z(EbbParams(2.0, 3.0, 0.5), 3000, RngSeed(193))
        r = ebb.lr_test(z)
        assert r.statistic >= 0.0
        assert r.df == 1
        assert 0.0 <= r.p_value <= 1.0

    def test_lr_small_under_null(self):
        z = RngSeed(197).generator().beta(2.0, 3.0, 2000)
        r = ebb.lr_test(z)
        assert r.statistic < 10.0
        assert r.p_value > 1e-4
