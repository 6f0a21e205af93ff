"""Seeded Monte Carlo evaluation of the EBB estimators.

A scenario fixes true parameters, a sample-size grid, a replication count,
and a master seed. Replicate j draws its sample from the Philox stream
(master seed, master stream + j), so replicates are independent,
embarrassingly parallel, and bit-reproducible; the same stream ids are reused
across sample sizes as common random numbers. Each replicate is fitted, and
per-parameter relative bias and the squared-error summary are accumulated
with compensated summation so the result is independent of completion order.

The bias summary follows the printed simulation-study conventions: relative
bias is the mean of (estimate - truth)/truth, and the quantity reported under
the squared-error name is the mean of (estimate - truth)^2 without a square
root; its square root is carried alongside under a distinct name.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distribution import EbbParams
from .errors import ConvergenceError, DomainError, EvaluationError
from .estimation import fit_ebb_full, fit_ebb_profile
from .sampling import RngSeed, sample_z

__all__ = [
    "McScenario",
    "McSummary",
    "run_scenario",
    "rb",
    "rmse",
    "emit_histogram_data",
]

_PARAM_LABELS = ("alpha", "beta", "rho")

_FITTERS = {"ml": fit_ebb_full, "profile": fit_ebb_profile}


@dataclass(frozen=True)
class McScenario:
    """One simulation study: truth, sample sizes, replication count, seed.

    estimator selects the fit applied to each replicate: "ml" is the full
    three-parameter likelihood maximization, "profile" the two-stage
    procedure. workers > 1 distributes replicates across processes.
    """

    params: EbbParams
    sample_sizes: tuple
    replications: int
    master_seed: RngSeed
    estimator: str = "ml"
    workers: int = 1

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.sample_sizes)
        if not sizes or any(n < 1 for n in sizes):
            raise DomainError("sample_sizes must be positive integers")
        object.__setattr__(self, "sample_sizes", sizes)
        if isinstance(self.master_seed, (int, np.integer)) \
                and not isinstance(self.master_seed, bool):
            object.__setattr__(self, "master_seed",
                               RngSeed(int(self.master_seed)))
        if not isinstance(self.master_seed, RngSeed):
            raise DomainError("master_seed must be an RngSeed or an integer")
        if isinstance(self.replications, bool) \
                or not isinstance(self.replications, (int, np.integer)) \
                or self.replications < 1:
            raise DomainError("replications must be a positive integer")
        object.__setattr__(self, "replications", int(self.replications))
        if self.estimator not in _FITTERS:
            raise DomainError(
                f"estimator must be one of {sorted(_FITTERS)}, "
                f"got {self.estimator!r}")
        if isinstance(self.workers, bool) \
                or not isinstance(self.workers, (int, np.integer)) \
                or self.workers < 1:
            raise DomainError("workers must be a positive integer")


@dataclass(frozen=True, eq=False)
class McSummary:
    """Per-sample-size results of a scenario.

    bias holds relative bias where the true parameter is nonzero; for a true
    parameter of exactly zero it holds the absolute bias instead, and the
    matching bias_kind entry says so. rmse is the mean squared error exactly
    as the simulation-study tables print it (no square root); root_rmse is
    its square root. estimates retains the successful replicates' fitted
    (alpha, beta, rho) rows for histogram emission.
    """

    n: int
    replications: int
    failure_count: int
    truth: tuple
    labels: tuple = field(default=_PARAM_LABELS)
    bias: tuple = ()
    bias_kind: tuple = ()
    rmse: tuple = ()
    root_rmse: tuple = ()
    estimates: np.ndarray = field(default_factory=lambda: np.empty((0, 3)))


def rb(estimates, truth: float) -> float:
    """Relative bias: mean of (estimate - truth)/truth."""
    est = np.asarray(estimates, dtype=np.float64).ravel()
    if est.size == 0:
        raise DomainError("estimates must be nonempty")
    truth = float(truth)
    if truth == 0.0:
        raise DomainError(
            "relative bias is undefined at truth 0; use an absolute summary")
    return math.fsum((e - truth) / truth for e in est) / est.size


def rmse(estimates, truth: float) -> float:
    """Mean squared error: mean of (estimate - truth)^2, no square root."""
    est = np.asarray(estimates, dtype=np.float64).ravel()
    if est.size == 0:
        raise DomainError("estimates must be nonempty")
    truth = float(truth)
    return math.fsum((e - truth) ** 2 for e in est) / est.size


def _run_replicate(task):
    """One replicate: draw, fit, return (j, ok, alpha, beta, rho).

    Top-level so process pools can pickle it; failures of any estimation
    flavor are reported as ok=False rather than raised.
    """
    alpha, beta, rho, n, seed, stream, estimator = task
    try:
        z = sample_z(EbbParams(alpha, beta, rho), n, RngSeed(seed, stream))
        fit = _FITTERS[estimator](z)
        if not fit.converged:
            return stream, False, 0.0, 0.0, 0.0
        a, b, r = fit.params
        return stream, True, a, b, r
    except (ConvergenceError, EvaluationError, DomainError):
        return stream, False, 0.0, 0.0, 0.0


def _summarize(n, replications, truth, rows):
    ok = [r for r in rows if r[1]]
    failures = replications - len(ok)
    if failures > 0.2 * replications:
        raise ConvergenceError(
            f"{failures} of {replications} replicates failed at n={n}; "
            "scenario abandoned")
    est = np.array([[r[2], r[3], r[4]] for r in ok], dtype=np.float64)
    bias = []
    kind = []
    mse = []
    for k, t in enumerate(truth):
        col = est[:, k]
        if t == 0.0:
            bias.append(math.fsum(col - t) / col.size)
            kind.append("absolute")
        else:
            bias.append(rb(col, t))
            kind.append("relative")
        mse.append(rmse(col, t))
    return McSummary(
        n=n, replications=replications, failure_count=failures, truth=truth,
        bias=tuple(bias), bias_kind=tuple(kind), rmse=tuple(mse),
        root_rmse=tuple(math.sqrt(v) for v in mse), estimates=est)


def run_scenario(s: McScenario) -> dict:
    """Execute a scenario; returns {sample size: McSummary}.

    Replicate j of every sample size uses stream master.stream_id + j.
    Failed replicates are excluded from the averages and counted; more than
    20% failures at any sample size abort the scenario. Results are reduced
    in stream order, so the summary is identical however workers interleave.
    """
    if not isinstance(s, McScenario):
        raise DomainError("run_scenario expects an McScenario")
    p = s.params
    out = {}
    for n in s.sample_sizes:
        tasks = [(p.alpha, p.beta, p.rho, n, s.master_seed.seed,
                  s.master_seed.stream_id + j, s.estimator)
                 for j in range(s.replications)]
        if s.workers == 1:
            rows = [_run_replicate(t) for t in tasks]
        else:
            with ProcessPoolExecutor(max_workers=s.workers) as pool:
                rows = list(pool.map(_run_replicate, tasks, chunksize=8))
        rows.sort(key=lambda r: r[0])
        out[n] = _summarize(n, s.replications, (p.alpha, p.beta, p.rho), rows)
    return out


def emit_histogram_data(summary: McSummary, bins: int) -> dict:
    """Binned counts of each parameter's estimates, CSV-ready.

    Returns {label: (edges, counts)} with len(edges) = len(counts) + 1.
    """
    if isinstance(bins, bool) or not isinstance(bins, (int, np.integer)) \
            or bins < 1:
        raise DomainError(f"bins must be a positive integer, got {bins!r}")
    if summary.estimates.shape[0] < 1:
        raise DomainError("summary holds no successful replicates")
    out = {}
    for k, label in enumerate(summary.labels):
        counts, edges = np.histogram(summary.estimates[:, k], bins=int(bins))
        out[label] = (edges, counts)
    return out
