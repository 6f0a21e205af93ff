"""The extended bimodal beta (EBB) distribution on the unit interval.

This is the law of Z = X / (X + Y) where X and Y are gamma variables with
shapes alpha and beta, a common rate, and Morgenstern-copula dependence with
parameter rho in [-1, 1]. At rho = 0 it reduces to Beta(alpha, beta); away
from zero the density is a signed combination of four proper densities,

    pdf = (1 + rho) f1 - rho f2 - rho f3 + rho f4,

where f1 is the Beta(alpha, beta) density, f2 and f3 are Gauss-2F1 forms,
and f4 is an Appell-F2 form. The combination can be bimodal even when every
component is unimodal.

Density and CDF evaluation run in compiled kernels; moments and the MGF use
adaptive quadrature of the density with endpoint-inset corrections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceError, DomainError, EvaluationError
from .specfun import (DEFAULT_QUAD, QuadratureControl, SeriesControl, _quad,
                      _series_args)

__all__ = [
    "EbbParams",
    "pdf",
    "log_pdf",
    "cdf",
    "quantile",
    "moment",
    "mgf",
    "component_density",
    "pdf_grid",
]

# a positive density value this far below the magnitude of the four terms has
# lost essentially all significant digits to cancellation
_CANCEL_TOL = 1e-12


@dataclass(frozen=True)
class EbbParams:
    """Parameter triple (alpha, beta, rho).

    alpha and beta are the gamma shapes of the numerator and the complement;
    rho is the copula dependence parameter in [-1, 1]. The margins' common
    rate cancels out of Z = X/(X+Y) and therefore does not appear here.
    """

    alpha: float
    beta: float
    rho: float

    def __post_init__(self):
        for name in ("alpha", "beta", "rho"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise DomainError(f"{name} must be a real number") from None
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.alpha <= 0.0 or self.beta <= 0.0:
            raise DomainError(
                f"shapes must be positive, got alpha={self.alpha}, "
                f"beta={self.beta}")
        if not (-1.0 <= self.rho <= 1.0):
            raise DomainError(f"rho must lie in [-1, 1], got {self.rho}")


def _as_array(z, name="z"):
    arr = np.asarray(z, dtype=np.float64)
    if arr.size and not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return np.atleast_1d(arr).ravel(), arr.ndim == 0, arr.shape


def _raise_series(p: EbbParams, z: float):
    raise ConvergenceError(
        f"series for (alpha={p.alpha}, beta={p.beta}) did not converge "
        f"at z={z!r}; raise max_terms or loosen rel_tol")


def _pdf_raw(p: EbbParams, zf: np.ndarray, ctl: SeriesControl | None):
    """Density values for a flat array of z in (0,1), with cancellation and
    convergence failures raised."""
    rt, mt, cs = _series_args(ctl)
    val = np.empty(zf.shape[0])
    scale = np.empty(zf.shape[0])
    status, idx = _kernels._pdf_batch(p.alpha, p.beta, p.rho, zf,
                                      rt, mt, cs, val, scale)
    if status == _kernels.STATUS_SERIES_CAP:
        _raise_series(p, zf[idx])
    if status == _kernels.STATUS_BAD_BRACKET:
        raise EvaluationError(
            f"density bracket evaluated to {float(val[idx]):.3e} <= 0 at "
            f"z={float(zf[idx])!r} for (alpha={p.alpha}, beta={p.beta}, "
            f"rho={p.rho})")
    bad = val <= _CANCEL_TOL * scale
    if np.any(bad):
        i = int(np.argmax(bad))
        raise EvaluationError(
            f"density at z={float(zf[i])!r} lost all significant digits to "
            f"cancellation (value {float(val[i]):.3e} against terms of size "
            f"{float(scale[i]):.3e})")
    return val


def pdf(p: EbbParams, z, ctl: SeriesControl | None = None):
    """Density at z (scalar or array-like), each point in the open interval.

    Evaluated by the four-term closed form with all gamma prefactors in log
    space. Points at or beyond the endpoints are domain errors because the
    density diverges there whenever a shape is below 1.
    """
    zf, scalar, shape = _as_array(z)
    if zf.size and (zf.min() <= 0.0 or zf.max() >= 1.0):
        off = float(zf[(zf <= 0.0) | (zf >= 1.0)][0])
        raise DomainError(f"pdf requires 0 < z < 1, got {off!r}")
    val = _pdf_raw(p, zf, ctl)
    return float(val[0]) if scalar else val.reshape(shape)


def log_pdf(p: EbbParams, z, ctl: SeriesControl | None = None):
    """Natural log of the density.

    The four signed terms are combined in linear space (their magnitudes are
    assembled in log space first) and the logarithm is taken once;
    a log-sum-exp across all four is impossible because terms 2 and 3 enter
    negatively for rho > 0.
    """
    zf, scalar, shape = _as_array(z)
    if zf.size and (zf.min() <= 0.0 or zf.max() >= 1.0):
        off = float(zf[(zf <= 0.0) | (zf >= 1.0)][0])
        raise DomainError(f"log_pdf requires 0 < z < 1, got {off!r}")
    val = np.log(_pdf_raw(p, zf, ctl))
    return float(val[0]) if scalar else val.reshape(shape)


def cdf(p: EbbParams, z, ctl: SeriesControl | None = None):
    """Distribution function at z (scalar or array-like) in [0, 1].

    Uses the incomplete-beta term plus component CDFs in series form where
    those series are cheap, and falls back to tanh-sinh quadrature of the
    density near the left endpoint where they degenerate. Values are clipped
    to [0, 1] only when within 1e-10 of the boundary; anything further out is
    reported as an evaluation error.
    """
    zf, scalar, shape = _as_array(z)
    if zf.size and (zf.min() < 0.0 or zf.max() > 1.0):
        off = float(zf[(zf < 0.0) | (zf > 1.0)][0])
        raise DomainError(f"cdf requires 0 <= z <= 1, got {off!r}")
    rt, mt, cs = _series_args(ctl)
    out = np.empty(zf.shape[0])
    status, idx = _kernels._cdf_batch(p.alpha, p.beta, p.rho, zf,
                                      rt, mt, cs, out)
    if status == _kernels.STATUS_SERIES_CAP:
        _raise_series(p, zf[idx])
    if status != _kernels.STATUS_OK:
        raise EvaluationError(
            f"cdf value {float(out[idx])!r} outside [0, 1] beyond tolerance "
            f"at z={float(zf[idx])!r}")
    return float(out[0]) if scalar else out.reshape(shape)


def quantile(p: EbbParams, q, ctl: SeriesControl | None = None) -> float:
    """Quantile z in (0, 1) with |cdf(z) - q| < 1e-9.

    Bisection narrows the bracket to width 1e-3, then secant steps finish,
    falling back to bisection whenever a step leaves the bracket. The CDF is
    monotone so the bracket never breaks.
    """
    q = float(q)
    if not (0.0 < q < 1.0):
        raise DomainError(f"quantile requires 0 < q < 1, got {q}")
    rt, mt, cs = _series_args(ctl)

    def f(z):
        v, st = _kernels._cdf_scalar(p.alpha, p.beta, p.rho, z, rt, mt, cs)
        if st == _kernels.STATUS_SERIES_CAP:
            _raise_series(p, z)
        if st != _kernels.STATUS_OK:
            raise EvaluationError(f"cdf evaluation failed at z={z!r}")
        return v - q

    lo, hi = 0.0, 1.0
    flo, fhi = -q, 1.0 - q
    budget = 200
    while hi - lo > 1e-3 and budget > 0:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        budget -= 1
        if abs(fm) < 1e-9:
            return mid
        if fm < 0.0:
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    x0, f0 = lo, flo
    x1, f1 = hi, fhi
    while budget > 0:
        if f1 != f0:
            x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        else:
            x2 = 0.5 * (lo + hi)
        if not (lo < x2 < hi):
            x2 = 0.5 * (lo + hi)
        f2 = f(x2)
        budget -= 1
        if abs(f2) < 1e-9:
            return x2
        if f2 < 0.0:
            lo = x2
        else:
            hi = x2
        x0, f0 = x1, f1
        x1, f1 = x2, f2
    raise ConvergenceError(
        f"quantile iteration did not reach 1e-9 at q={q} for "
        f"(alpha={p.alpha}, beta={p.beta}, rho={p.rho})")


def moment(p: EbbParams, n: int, qctl: QuadratureControl | None = None,
           ctl: SeriesControl | None = None) -> float:
    """Raw moment E[Z^n] by adaptive quadrature of z^n pdf(z).

    The integral runs over the full (0, 1); the adaptive rule never
    evaluates the endpoints themselves, and its extrapolation absorbs the
    integrable endpoint singularities that appear when a shape is below 1.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"moment order must be a positive integer, got {n!r}")
    n = int(n)
    qctl = qctl or DEFAULT_QUAD

    def f(z):
        return z ** n * pdf(p, z, ctl)

    return _quad(f, 0.0, 1.0, qctl)


def mgf(p: EbbParams, t: float, qctl: QuadratureControl | None = None,
        ctl: SeriesControl | None = None) -> float:
    """Moment generating function E[exp(t Z)] by adaptive quadrature."""
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"t must be finite, got {t!r}")
    qctl = qctl or DEFAULT_QUAD

    def f(z):
        return math.exp(t * z) * pdf(p, z, ctl)

    return _quad(f, 0.0, 1.0, qctl)


def component_density(p: EbbParams, i: int, z,
                      ctl: SeriesControl | None = None):
    """Density of mixture component i in {1, 2, 3, 4} at z in (0, 1).

    Component 1 is Beta(alpha, beta); components 2 and 3 are the laws of
    max-of-two-copies constructions on the X and Y margins respectively;
    component 4 applies the max to both margins. None of them depends on rho;
    rho only sets the signed weights (1+rho, -rho, -rho, rho).
    """
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) \
            or not 1 <= int(i) <= 4:
        raise DomainError(f"component index must be in 1..4, got {i!r}")
    i = int(i)
    zf, scalar, shape = _as_array(z)
    if zf.size and (zf.min() <= 0.0 or zf.max() >= 1.0):
        off = float(zf[(zf <= 0.0) | (zf >= 1.0)][0])
        raise DomainError(f"component_density requires 0 < z < 1, got {off!r}")
    rt, mt, cs = _series_args(ctl)
    out = np.empty(zf.shape[0])
    for j in range(zf.shape[0]):
        parts = _kernels._components(p.alpha, p.beta, zf[j], rt, mt, cs)
        if parts[4] != _kernels.STATUS_OK:
            _raise_series(p, zf[j])
        out[j] = parts[i - 1]
    return float(out[0]) if scalar else out.reshape(shape)


def pdf_grid(p: EbbParams, n_points: int,
             ctl: SeriesControl | None = None) -> np.ndarray:
    """Density on the evenly spaced interior grid k/(n_points+1), k=1..n_points.

    Returns an array of shape (n_points, 2) with columns (z, pdf). Endpoints
    are excluded by construction since the density may diverge there.
    """
    if isinstance(n_points, bool) or not isinstance(n_points, (int, np.integer)) \
            or n_points < 2:
        raise DomainError(f"n_points must be an integer >= 2, got {n_points!r}")
    n_points = int(n_points)
    z = np.arange(1, n_points + 1, dtype=np.float64) / (n_points + 1.0)
    return np.column_stack((z, pdf(p, z, ctl)))
