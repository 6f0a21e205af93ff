"""Distribution object: density, log-density, CDF, quantile, moments, MGF,
component densities, and grids.

Frozen reference values come from an mpmath implementation of the closed
forms at 40 digits; scipy.stats.beta covers every rho = 0 reduction.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate, special, stats

import ebbdist as ebb
from ebbdist import (DomainError, EbbParams, EvaluationError, SeriesControl)

# (alpha, beta, rho) -> {z: pdf}, mpmath 40-digit
PDF_CASES = {
    (2.0, 3.0, 0.5): {
        0.05: 0.41768339118, 0.3: 1.90154200895,
        0.55: 1.38997512973, 0.9: 0.0706854213878,
    },
    (2.0, 3.0, -0.5): {
        0.05: 0.66531660882, 0.3: 1.62645799105,
        0.55: 1.28302487027, 0.9: 0.145314578612,
    },
    (1.1, 1.5, -0.99): {
        0.05: 1.58443480294, 0.3: 1.04240356431,
        0.55: 0.897650235075, 0.9: 0.7566506578,
    },
    (16.1, 12.84, 0.78): {
        0.3: 0.032530182718, 0.55: 4.97071176084, 0.9: 4.08279640296e-05,
    },
    (0.5, 0.5, 1.0): {
        0.3: 0.819720897117, 0.55: 0.785213998037, 0.9: 1.0401179845,
    },
}

# (alpha, beta, rho) -> {z: cdf}
CDF_CASES = {
    (2.0, 3.0, 0.5): {
        1e-4: 4.3589581909061504e-08, 5e-4: 1.0893246250059131e-06,
        0.1: 0.0415224159533, 0.5: 0.705754284015, 0.55: 0.780959119577,
    },
    (1.1, 1.5, -0.99): {
        0.1: 0.153854780306, 0.5: 0.59098095712, 0.55: 0.635917620914,
    },
    (2.0, 2.0, 0.7): {0.1: 0.0178038155833, 0.5: 0.5},
    (16.1, 12.84, 0.78): {
        0.1: 1.66453106785e-10, 0.15: 6.3362670770307386e-08,
        0.5: 0.236413508762, 0.55: 0.461878079955,
    },
    (0.5, 0.5, -0.99): {1e-5: 0.002834701433650595},
}


class TestEbbParams:
    def test_coercion(self):
        p = EbbParams(2, 3, 0)
        assert p.alpha == 2.0 and isinstance(p.alpha, float)

    @pytest.mark.parametrize("args", [
        (0.0, 3.0, 0.5), (-1.0, 3.0, 0.5), (2.0, 0.0, 0.5),
        (2.0, 3.0, 1.5), (2.0, 3.0, -1.01), (np.nan, 3.0, 0.5),
        (2.0, np.inf, 0.5),
    ])
    def test_rejects(self, args):
        with pytest.raises(DomainError):
            EbbParams(*args)

    def test_rho_endpoints_allowed(self):
        EbbParams(2.0, 3.0, 1.0)
        EbbParams(2.0, 3.0, -1.0)


class TestPdf:
    @pytest.mark.parametrize("params", sorted(PDF_CASES))
    def test_frozen_values(self, params):
        p = EbbParams(*params)
        table = PDF_CASES[params]
        zs = np.array(sorted(table))
        want = np.array([table[z] for z in sorted(table)])
        assert_allclose(ebb.pdf(p, zs), want, rtol=1e-10)

    def test_beta_reduction(self):
        z = np.linspace(0.01, 0.99, 99)
        for a, b in [(1.0, 1.0), (2.0, 3.0), (16.1, 12.84)]:
            got = ebb.pdf(EbbParams(a, b, 0.0), z)
            assert_allclose(got, stats.beta.pdf(z, a, b), atol=1e-10)

    def test_scalar_and_shape_handling(self):
        p = EbbParams(2.0, 3.0, 0.5)
        v = ebb.pdf(p, 0.3)
        assert isinstance(v, float)
        grid = np.array([[0.2, 0.3], [0.4, 0.5]])
        out = ebb.pdf(p, grid)
        assert out.shape == grid.shape

    def test_domain_errors(self):
        p = EbbParams(2.0, 3.0, 0.5)
        for z in (0.0, 1.0, -0.2, 1.1):
            with pytest.raises(DomainError):
                ebb.pdf(p, z)

    def test_underflow_raises_evaluation_error(self):
        # at z this deep in the tail every component underflows to zero
        with pytest.raises(EvaluationError):
            ebb.pdf(EbbParams(16.1, 12.84, 0.78), 1e-300)

    def test_series_cap_raises(self):
        tight = SeriesControl(1e-12, 100, 3)
        with pytest.raises(ebb.ConvergenceError):
            ebb.pdf(EbbParams(16.1, 12.84, 0.78), 0.999, tight)
        # the same point converges under the default budget
        assert ebb.pdf(EbbParams(16.1, 12.84, 0.78), 0.999) > 0.0

    def test_log_pdf_consistent(self):
        p = EbbParams(1.1, 1.5, -0.99)
        z = np.linspace(0.05, 0.95, 7)
        assert_allclose(ebb.log_pdf(p, z), np.log(ebb.pdf(p, z)), rtol=1e-13)

    def test_rho_linearity(self):
        # f(z; rho) is affine in rho: f = f(0-part) + rho * (slope)
        p0 = EbbParams(2.0, 3.0, 0.0)
        pp = EbbParams(2.0, 3.0, 0.6)
        pm = EbbParams(2.0, 3.0, -0.6)
        z = np.linspace(0.1, 0.9, 9)
        assert_allclose(ebb.pdf(pp, z) + ebb.pdf(pm, z),
                        2.0 * ebb.pdf(p0, z), rtol=1e-11)


class TestCdf:
    @pytest.mark.parametrize("params", sorted(CDF_CASES))
    def test_frozen_values(self, params):
        p = EbbParams(*params)
        table = CDF_CASES[params]
        zs = np.array(sorted(table))
        want = np.array([table[z] for z in sorted(table)])
        assert_allclose(ebb.cdf(p, zs), want, rtol=1e-8)

    def test_endpoints_exact(self):
        p = EbbParams(2.0, 3.0, 0.5)
        assert ebb.cdf(p, 0.0) == 0.0
        assert ebb.cdf(p, 1.0) == 1.0

    def test_beta_reduction(self):
        z = np.linspace(0.01, 0.99, 99)
        for a, b in [(1.0, 1.0), (2.0, 3.0), (16.1, 12.84)]:
            got = ebb.cdf(EbbParams(a, b, 0.0), z)
            assert_allclose(got, special.betainc(a, b, z), atol=1e-10)

    def test_median_at_half_when_symmetric(self):
        for a in (0.7, 1.0, 2.0, 5.0):
            for r in (-0.75, 0.3, 1.0):
                assert_allclose(ebb.cdf(EbbParams(a, a, r), 0.5), 0.5,
                                rtol=1e-10)

    def test_monotone_and_bounded(self):
        z = np.linspace(0.0, 1.0, 999)
        for params in [(2.0, 3.0, 0.5), (1.1, 1.5, -0.99), (0.5, 0.5, 1.0)]:
            f = ebb.cdf(EbbParams(*params), z)
            assert np.all(np.diff(f) >= -1e-13)
            assert f.min() >= 0.0 and f.max() <= 1.0

    def test_matches_pdf_by_finite_difference(self):
        h = 1e-6
        for params in [(2.0, 3.0, 0.5), (1.1, 1.5, -0.99), (5.0, 5.0, 0.75)]:
            p = EbbParams(*params)
            z = np.linspace(0.02, 0.98, 50)
            deriv = (ebb.cdf(p, z + h) - ebb.cdf(p, z - h)) / (2 * h)
            dens = ebb.pdf(p, z)
            assert np.all(np.abs(deriv - dens)
                          <= np.maximum(1e-5, 1e-4 * dens))

    def test_domain(self):
        p = EbbParams(2.0, 3.0, 0.5)
        with pytest.raises(DomainError):
            ebb.cdf(p, -0.01)
        with pytest.raises(DomainError):
            ebb.cdf(p, 1.01)


class TestQuantile:
    def test_round_trip(self):
        for params in [(2.0, 3.0, 0.5), (1.1, 1.5, -0.99), (16.1, 12.84, 0.78)]:
            p = EbbParams(*params)
            for q in np.linspace(0.025, 0.975, 20):
                z = ebb.quantile(p, float(q))
                assert abs(ebb.cdf(p, z) - q) < 1e-9

    def test_symmetric_median(self):
        for r in (-0.9, 0.0, 0.6):
            assert abs(ebb.quantile(EbbParams(3.0, 3.0, r), 0.5) - 0.5) < 1e-8

    def test_beta_reduction(self):
        p = EbbParams(2.0, 3.0, 0.0)
        for q in (0.1, 0.5, 0.9):
            assert_allclose(ebb.quantile(p, q), stats.beta.ppf(q, 2.0, 3.0),
                            rtol=1e-7)

    def test_quantile_cdf_identity_on_probes(self):
        p = EbbParams(2.0, 3.0, 0.5)
        z = ebb.quantile(p, 0.25)
        assert abs(ebb.cdf(p, z) - 0.25) < 1e-9

    def test_domain(self):
        p = EbbParams(2.0, 3.0, 0.5)
        for q in (0.0, 1.0, -0.1):
            with pytest.raises(DomainError):
                ebb.quantile(p, q)


class TestMomentsAndMgf:
    def test_frozen_values(self):
        p = EbbParams(2.0, 3.0, 0.5)
        assert_allclose(ebb.moment(p, 1), 0.39743403429200546, rtol=1e-9)
        assert_allclose(ebb.moment(p, 2), 0.19298692035380934, rtol=1e-9)
        assert_allclose(ebb.mgf(p, 0.7), 1.3322709087222912, rtol=1e-9)
        assert_allclose(ebb.moment(EbbParams(1.1, 1.5, -0.99), 1),
                        0.42954684617149575, rtol=1e-9)

    def test_mean_half_when_symmetric(self):
        for a in (0.7, 2.0, 5.0):
            for r in (-0.75, 0.5, 1.0):
                assert_allclose(ebb.moment(EbbParams(a, a, r), 1), 0.5,
                                atol=1e-6)

    def test_beta_reduction_moments(self):
        # Beta(a,b) raw moments: E[Z^n] = prod_{j<n} (a+j)/(a+b+j)
        for a, b in [(2.0, 3.0), (0.5, 1.5)]:
            p = EbbParams(a, b, 0.0)
            for n in (1, 2, 3):
                want = 1.0
                for j in range(n):
                    want *= (a + j) / (a + b + j)
                assert_allclose(ebb.moment(p, n), want, rtol=1e-8)

    def test_mgf_at_zero_is_one(self):
        assert_allclose(ebb.mgf(EbbParams(2.0, 3.0, -0.7), 0.0), 1.0,
                        rtol=1e-8)

    def test_mgf_beta_reduction(self):
        # Beta MGF is the confluent hypergeometric 1F1(a; a+b; t)
        for t in (-1.3, 0.4, 2.0):
            got = ebb.mgf(EbbParams(2.0, 3.0, 0.0), t)
            assert_allclose(got, special.hyp1f1(2.0, 5.0, t), rtol=1e-8)

    def test_moment_domain(self):
        p = EbbParams(2.0, 3.0, 0.5)
        with pytest.raises(DomainError):
            ebb.moment(p, 0)
        with pytest.raises(DomainError):
            ebb.moment(p, -1)
        with pytest.raises(DomainError):
            ebb.mgf(p, np.inf)


class TestComponents:
    # component densities at (2,3), z, mpmath 40-digit
    FROZEN = {
        0.3: (1.764, 1.4814305169315794, 2.1360200634659653,
              2.1285345982950896),
        0.7: (0.756, 1.1862671144720498, 0.30960026838562575,
              0.55735570321535105),
    }

    def test_frozen_values(self):
        p = EbbParams(2.0, 3.0, 0.0)
        for z, want in self.FROZEN.items():
            got = [ebb.component_density(p, i, z) for i in (1, 2, 3, 4)]
            assert_allclose(got, want, rtol=1e-10)

    def test_half_shape_case(self):
        p = EbbParams(0.5, 0.5, 0.0)
        got = [ebb.component_density(p, i, 0.25) for i in (1, 2, 3, 4)]
        want = (0.73510519389572273, 0.65749807366559979,
                0.96247862708066832, 0.9945751832427235)
        assert_allclose(got, want, rtol=1e-10)

    def test_first_component_is_beta(self):
        z = np.linspace(0.05, 0.95, 10)
        got = [ebb.component_density(EbbParams(2.0, 3.0, 0.9), 1, zi)
               for zi in z]
        assert_allclose(got, stats.beta.pdf(z, 2.0, 3.0), rtol=1e-12)

    def test_signed_mixture_reassembles_pdf(self):
        z = np.linspace(0.1, 0.9, 9)
        for rho in (0.7, -0.7):
            p = EbbParams(2.0, 3.0, rho)
            f = [tuple(ebb.component_density(p, i, zi) for i in (1, 2, 3, 4))
                 for zi in z]
            mix = np.array([(1 + rho) * a - rho * b - rho * c + rho * d
                            for a, b, c, d in f])
            assert_allclose(mix, ebb.pdf(p, z), rtol=1e-10)

    def test_each_component_has_unit_mass(self):
        p = EbbParams(2.0, 3.0, 0.5)
        for i in (1, 2, 3, 4):
            mass, _ = integrate.quad(
                lambda z: ebb.component_density(p, i, z), 0.0, 1.0,
                limit=200)
            assert_allclose(mass, 1.0, atol=1e-6)

    def test_index_domain(self):
        p = EbbParams(2.0, 3.0, 0.5)
        for i in (0, 5, 2.5):
            with pytest.raises(DomainError):
                ebb.component_density(p, i, 0.3)


class TestPdfGrid:
    def test_uniform_grid(self):
        out = ebb.pdf_grid(EbbParams(1.0, 1.0, 0.0), 3)
        assert_allclose(out, [[0.25, 1.0], [0.5, 1.0], [0.75, 1.0]],
                        rtol=1e-12)

    def test_trapezoid_mass(self):
        out = ebb.pdf_grid(EbbParams(2.0, 3.0, 0.5), 2001)
        mass = np.trapezoid(out[:, 1], out[:, 0])
        assert abs(mass - 1.0) < 1e-3

    def test_bimodal_case_has_two_maxima(self):
        out = ebb.pdf_grid(EbbParams(1.1, 1.5, -0.99), 2001)
        d = np.diff(out[:, 1])
        peaks = np.sum((d[:-1] > 0) & (d[1:] <= 0))
        assert peaks == 2

    def test_rejects_small_grid(self):
        with pytest.raises(DomainError):
            ebb.pdf_grid(EbbParams(2.0, 3.0, 0.5), 1)
