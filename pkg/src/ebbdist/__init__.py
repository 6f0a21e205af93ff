"""ebbdist: the extended bimodal beta distribution.

The law of Z = X/(X+Y) for gamma variables X, Y with shapes (alpha, beta),
a common rate, and Morgenstern-copula dependence rho in [-1, 1]. The package
provides the density/CDF/quantile/moment machinery, copula-exact sampling,
maximum-likelihood and moment estimators with model comparison, a seeded
Monte Carlo harness for estimator studies, and a command-line interface
(`ebbdist`).
"""

from .distribution import (EbbParams, cdf, component_density, log_pdf, mgf,
                           moment, pdf, pdf_grid, quantile)
from .errors import (ConvergenceError, DataFormatError, DomainError,
                     EvaluationError)
from .estimation import (FitResult, LrTestResult, RhoMomentEstimate, aic,
                         bic, compare_models, ebb_loglik, estimate_rho_moment,
                         fit_beta, fit_ebb_full, fit_ebb_profile,
                         fit_gamma_shape, fit_kumaraswamy, lr_test,
                         mean_cdf_survival)
from .montecarlo import (McScenario, McSummary, emit_histogram_data, rb,
                         rmse, run_scenario)
from .sampling import (BivGammaFgm, RngSeed, conditional_inverse, copula_cdf,
                       joint_pdf, sample_component, sample_pair, sample_z)
from .specfun import (DEFAULT_QUAD, DEFAULT_SERIES, QuadratureControl,
                      SeriesControl, appell_f2, gauss_2f1, log_gamma,
                      reg_inc_beta, reg_lower_inc_gamma, verify_prop_a1,
                      verify_prop_a2, verify_prop_a3)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # distribution
    "EbbParams", "pdf", "log_pdf", "cdf", "quantile", "moment", "mgf",
    "component_density", "pdf_grid",
    # special functions and controls
    "SeriesControl", "QuadratureControl", "DEFAULT_SERIES", "DEFAULT_QUAD",
    "log_gamma", "reg_lower_inc_gamma", "reg_inc_beta", "gauss_2f1",
    "appell_f2", "verify_prop_a1", "verify_prop_a2", "verify_prop_a3",
    # sampling
    "BivGammaFgm", "RngSeed", "copula_cdf", "conditional_inverse",
    "sample_pair", "sample_z", "sample_component", "joint_pdf",
    # estimation
    "FitResult", "LrTestResult", "RhoMomentEstimate", "aic", "bic",
    "fit_beta", "fit_kumaraswamy", "ebb_loglik", "fit_ebb_profile",
    "fit_ebb_full", "fit_gamma_shape", "mean_cdf_survival",
    "estimate_rho_moment", "compare_models", "lr_test",
    # Monte Carlo harness
    "McScenario", "McSummary", "run_scenario", "rb", "rmse",
    "emit_histogram_data",
    # errors
    "DomainError", "ConvergenceError", "EvaluationError", "DataFormatError",
]
