"""Bivariate gamma sampling under a Morgenstern copula, and the ratio
transform Z = X/(X+Y) that produces EBB draws.

The copula layer is sampled by conditional inversion: draw U2 and V uniform,
then solve F(u1 | u2) = u1 [1 + rho (1 - u1)(1 - 2 u2)] = v for u1, which is
a monotone quadratic with a closed-form root. Gamma margins are attached by
quantile inversion, so the whole sampler is a deterministic function of the
uniform stream. That gives bit-reproducible output per (seed, stream_id) and
makes Z draws invariant to the margins' common rate, which only rescales X
and Y.

Auxiliary draws from the four signed-mixture components use the fact that a
variable with density 2 f F is the maximum of two independent copies of f;
the maximum is taken on the uniform scale before quantile inversion, which
is the same variable and halves the inversion work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .distribution import EbbParams
from .errors import ConvergenceError, DomainError

__all__ = [
    "BivGammaFgm",
    "RngSeed",
    "copula_cdf",
    "conditional_inverse",
    "sample_pair",
    "sample_z",
    "sample_component",
    "joint_pdf",
]

# keep inverted uniforms strictly inside (0,1): a raw 0.0 from the generator
# would map to a zero gamma draw and put Z on the boundary
_UCLIP_LO = 1e-16
_UCLIP_HI = 1.0 - 1e-16

_U64_MAX = 2 ** 64 - 1


@dataclass(frozen=True)
class BivGammaFgm:
    """Gamma margins with shapes alpha, beta and common rate theta, coupled
    by a Morgenstern copula with dependence parameter rho."""

    alpha: float
    beta: float
    theta: float
    rho: float

    def __post_init__(self):
        for name in ("alpha", "beta", "theta", "rho"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise DomainError(f"{name} must be a real number") from None
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if min(self.alpha, self.beta, self.theta) <= 0.0:
            raise DomainError("alpha, beta, theta must all be positive")
        if not (-1.0 <= self.rho <= 1.0):
            raise DomainError(f"rho must lie in [-1, 1], got {self.rho}")


@dataclass(frozen=True)
class RngSeed:
    """Reproducible stream identity: (seed, stream_id) -> one Philox stream.

    The counter-based Philox generator makes distinct stream_ids independent
    streams under one seed, so replicates can run in parallel and still be
    bit-reproducible. Identical (seed, stream_id) always yields identical
    sequences.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise DomainError(f"{name} must be an integer")
            if not 0 <= int(v) <= _U64_MAX:
                raise DomainError(f"{name} must fit in an unsigned 64-bit int")
            object.__setattr__(self, name, int(v))

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def _check_rho(rho):
    rho = float(rho)
    if not (-1.0 <= rho <= 1.0):
        raise DomainError(f"rho must lie in [-1, 1], got {rho}")
    return rho


def copula_cdf(rho, u1, u2):
    """Morgenstern copula C(u1, u2) = u1 u2 [1 + rho (1-u1)(1-u2)].

    Accepts scalars or broadcastable arrays for u1, u2.
    """
    rho = _check_rho(rho)
    a1 = np.asarray(u1, dtype=np.float64)
    a2 = np.asarray(u2, dtype=np.float64)
    for name, a in (("u1", a1), ("u2", a2)):
        if a.size and (not np.all(np.isfinite(a)) or a.min() < 0.0
                       or a.max() > 1.0):
            raise DomainError(f"{name} must lie in [0, 1]")
    out = a1 * a2 * (1.0 + rho * (1.0 - a1) * (1.0 - a2))
    if a1.ndim == 0 and a2.ndim == 0:
        return float(out)
    return out


def conditional_inverse(rho, u2, v):
    """Solve u1 [1 + c (1 - u1)] = v for u1, where c = rho (1 - 2 u2).

    This inverts the conditional copula distribution given U2 = u2. The
    solution is the smaller root of the quadratic c u^2 - (1+c) u + v, written
    in the rationalized form 2v / [(1+c) + sqrt((1+c)^2 - 4cv)] that stays
    fully accurate as c -> 0, where it reduces to u1 = v exactly. The
    discriminant is bounded below by (1-c)^2 >= 0 on the whole domain.

    Accepts scalars or broadcastable arrays for u2, v.
    """
    rho = _check_rho(rho)
    a2 = np.asarray(u2, dtype=np.float64)
    av = np.asarray(v, dtype=np.float64)
    for name, a in (("u2", a2), ("v", av)):
        if a.size and (not np.all(np.isfinite(a)) or a.min() <= 0.0
                       or a.max() >= 1.0):
            raise DomainError(f"{name} must lie strictly inside (0, 1)")
    c = rho * (1.0 - 2.0 * a2)
    disc = (1.0 + c) ** 2 - 4.0 * c * av
    out = 2.0 * av / ((1.0 + c) + np.sqrt(disc))
    if a2.ndim == 0 and av.ndim == 0:
        return float(out)
    return out


def _gamma_quantiles(shape, u):
    out = np.empty(u.shape[0])
    status, idx = _kernels._gamma_ppf_batch(shape, u, out)
    if status != _kernels.STATUS_OK:
        raise ConvergenceError(
            f"gamma quantile failed for shape {shape} at p={float(u[idx])!r}")
    return out


def sample_pair(d: BivGammaFgm, rng: np.random.Generator, size=None):
    """Draw (X, Y) from the copula-coupled gamma pair.

    rng is a live generator stream, normally RngSeed.generator(). Uniforms
    are consumed as one block for U2 followed by one block for V; X comes
    from the conditional inverse U1 and Y from U2 directly. With size=None a
    single (x, y) float pair is returned, otherwise a pair of arrays.

    The common rate only divides the unit-rate quantiles at the end, so two
    rates under one seed produce proportional draws and the same Z values up
    to last-ulp rounding.
    """
    scalar = size is None
    n = 1 if scalar else int(size)
    if n < 1:
        raise DomainError(f"size must be a positive integer, got {size!r}")
    u2 = np.clip(rng.random(n), _UCLIP_LO, _UCLIP_HI)
    v = np.clip(rng.random(n), _UCLIP_LO, _UCLIP_HI)
    u1 = np.clip(conditional_inverse(d.rho, u2, v), _UCLIP_LO, _UCLIP_HI)
    x = _gamma_quantiles(d.alpha, u1) / d.theta
    y = _gamma_quantiles(d.beta, u2) / d.theta
    if scalar:
        return float(x[0]), float(y[0])
    return x, y


def sample_z(p: EbbParams, n: int, seed: RngSeed) -> np.ndarray:
    """Draw n EBB(alpha, beta, rho) values Z = X/(X+Y), using unit rate."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    d = BivGammaFgm(p.alpha, p.beta, 1.0, p.rho)
    x, y = sample_pair(d, seed.generator(), size=int(n))
    return x / (x + y)


def sample_component(p: EbbParams, i: int, n: int, seed: RngSeed) -> np.ndarray:
    """Draw n values from signed-mixture component i.

    Components replace a margin's gamma draw by the maximum of two
    independent copies: i=2 on the X margin, i=3 on the Y margin, i=4 on
    both. i=1 is accepted as the plain independent ratio, which is
    Beta(alpha, beta). Uniform blocks are consumed margin by margin (both
    X blocks before any Y block), and each maximum is taken on the uniform
    scale before quantile inversion, which is the same random variable.
    """
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) \
            or not 1 <= int(i) <= 4:
        raise DomainError(f"component index must be in 1..4, got {i!r}")
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    i = int(i)
    n = int(n)
    rng = seed.generator()
    u_x = rng.random(n)
    if i in (2, 4):
        u_x = np.maximum(u_x, rng.random(n))
    u_y = rng.random(n)
    if i in (3, 4):
        u_y = np.maximum(u_y, rng.random(n))
    u_x = np.clip(u_x, _UCLIP_LO, _UCLIP_HI)
    u_y = np.clip(u_y, _UCLIP_LO, _UCLIP_HI)
    x = _gamma_quantiles(p.alpha, u_x)
    y = _gamma_quantiles(p.beta, u_y)
    return x / (x + y)


def joint_pdf(d: BivGammaFgm, x, y):
    """Joint density f_X f_Y [1 + rho (2 F_X - 1)(2 F_Y - 1)] at (x, y).

    F_X, F_Y are the gamma margin CDFs. Accepts scalars or broadcastable
    arrays with all entries strictly positive.
    """
    ax = np.asarray(x, dtype=np.float64)
    ay = np.asarray(y, dtype=np.float64)
    for name, a in (("x", ax), ("y", ay)):
        if a.size and (not np.all(np.isfinite(a)) or a.min() <= 0.0):
            raise DomainError(f"{name} must be positive, got {a.min()!r}")
    bx, by = np.broadcast_arrays(ax, ay)
    out = np.empty(bx.shape)
    lga = math.lgamma(d.alpha)
    lgb = math.lgamma(d.beta)
    lth = math.log(d.theta)
    flat_x = bx.ravel()
    flat_y = by.ravel()
    flat_o = out.ravel()
    for j in range(flat_x.shape[0]):
        xv = flat_x[j]
        yv = flat_y[j]
        lfx = (d.alpha * lth + (d.alpha - 1.0) * math.log(xv)
               - d.theta * xv - lga)
        lfy = (d.beta * lth + (d.beta - 1.0) * math.log(yv)
               - d.theta * yv - lgb)
        fx = _kernels._gammainc_p(d.alpha, d.theta * xv)
        fy = _kernels._gammainc_p(d.beta, d.theta * yv)
        flat_o[j] = math.exp(lfx + lfy) * (
            1.0 + d.rho * (2.0 * fx - 1.0) * (2.0 * fy - 1.0))
    if ax.ndim == 0 and ay.ndim == 0:
        return float(out)
    return out
