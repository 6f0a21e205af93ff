"""Special-function layer: log-gamma, regularized incomplete gamma/beta, the
Gauss 2F1 and Appell F2 series, and quadrature checks of three closed-form
integral identities used by the distribution's derivation.

All functions are pure; truncation is governed by an immutable
:class:`SeriesControl` and quadrature by a :class:`QuadratureControl`. Series
either converge within the control's budget or raise
:class:`~ebbdist.errors.ConvergenceError` -- a capped partial sum is never
silently returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from . import _kernels
from .errors import ConvergenceError, DomainError

__all__ = [
    "SeriesControl",
    "QuadratureControl",
    "DEFAULT_SERIES",
    "DEFAULT_QUAD",
    "log_gamma",
    "reg_lower_inc_gamma",
    "reg_inc_beta",
    "gauss_2f1",
    "appell_f2",
    "verify_prop_a1",
    "verify_prop_a2",
    "verify_prop_a3",
]


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for hypergeometric series.

    rel_tol:
        declare a term negligible when |term| <= rel_tol * |partial sum|
    max_terms:
        hard cap per series index
    consecutive_small:
        number of successive negligible terms required before stopping
    """

    rel_tol: float = 1e-12
    max_terms: int = 20000
    consecutive_small: int = 3

    def __post_init__(self):
        if not (isinstance(self.rel_tol, float) and 0.0 < self.rel_tol < 1.0):
            raise DomainError("rel_tol must be a float in (0, 1)")
        if not (isinstance(self.max_terms, int) and self.max_terms >= 100):
            raise DomainError("max_terms must be an integer >= 100")
        if not (isinstance(self.consecutive_small, int)
                and self.consecutive_small >= 1):
            raise DomainError("consecutive_small must be a positive integer")


@dataclass(frozen=True)
class QuadratureControl:
    """Adaptive-quadrature policy (tolerances, subdivision cap, and the inset
    used to keep integrands off open-interval endpoints)."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    endpoint_inset: float = 1e-10

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise DomainError("quadrature tolerances must be positive")
        if not (isinstance(self.max_subdivisions, int)
                and self.max_subdivisions >= 1):
            raise DomainError("max_subdivisions must be a positive integer")
        if not (0.0 < self.endpoint_inset < 1e-3):
            raise DomainError("endpoint_inset must lie in (0, 1e-3)")


DEFAULT_SERIES = SeriesControl()
DEFAULT_QUAD = QuadratureControl()


def _finite(name, v):
    v = float(v)
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")
    return v


def _series_args(ctl: SeriesControl | None):
    c = DEFAULT_SERIES if ctl is None else ctl
    return c.rel_tol, c.max_terms, c.consecutive_small


def log_gamma(a: float) -> float:
    """ln Gamma(a) for a > 0."""
    a = _finite("a", a)
    if a <= 0.0:
        raise DomainError(f"log_gamma requires a > 0, got {a}")
    return math.lgamma(a)


def reg_lower_inc_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) = gamma(a, x)/Gamma(a)."""
    a = _finite("a", a)
    x = _finite("x", x)
    if a <= 0.0:
        raise DomainError(f"shape must be positive, got {a}")
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    return _kernels._gammainc_p(a, x)


def reg_inc_beta(z: float, a: float, b: float) -> float:
    """Regularized incomplete beta I_z(a, b)."""
    z = _finite("z", z)
    a = _finite("a", a)
    b = _finite("b", b)
    if not (0.0 <= z <= 1.0):
        raise DomainError(f"z must lie in [0, 1], got {z}")
    if a <= 0.0 or b <= 0.0:
        raise DomainError("both shape parameters must be positive")
    return _kernels._betainc(z, a, b)


def _check_lower(name, c):
    # 2F1/F2 lower parameters must not be nonpositive integers
    if c <= 0.0 and c == math.floor(c):
        raise DomainError(f"{name} must not be a nonpositive integer, got {c}")


def gauss_2f1(a: float, b: float, c: float, x: float,
              ctl: SeriesControl | None = None) -> float:
    """Gauss hypergeometric 2F1(a, b; c; x) for |x| < 1."""
    a = _finite("a", a)
    b = _finite("b", b)
    c = _finite("c", c)
    x = _finite("x", x)
    _check_lower("c", c)
    if abs(x) >= 1.0:
        raise DomainError(f"gauss_2f1 requires |x| < 1, got x={x}")
    rt, mt, cs = _series_args(ctl)
    val, status = _kernels._hyp2f1(a, b, c, x, rt, mt, cs)
    if status != _kernels.STATUS_OK:
        raise ConvergenceError(
            f"2F1({a},{b};{c};{x}) did not converge within {mt} terms")
    return val


def appell_f2(a: float, b1: float, b2: float, c1: float, c2: float,
              x: float, y: float, ctl: SeriesControl | None = None) -> float:
    """Appell F2(a; b1, b2; c1, c2; x, y) on the strict region |x|+|y| < 1."""
    a = _finite("a", a)
    b1 = _finite("b1", b1)
    b2 = _finite("b2", b2)
    c1 = _finite("c1", c1)
    c2 = _finite("c2", c2)
    x = _finite("x", x)
    y = _finite("y", y)
    _check_lower("c1", c1)
    _check_lower("c2", c2)
    if abs(x) + abs(y) >= 1.0:
        raise DomainError(
            f"appell_f2 requires |x|+|y| < 1, got {abs(x) + abs(y)}")
    rt, mt, cs = _series_args(ctl)
    val, status = _kernels._appell_f2(a, b1, b2, c1, c2, x, y, rt, mt, cs)
    if status != _kernels.STATUS_OK:
        raise ConvergenceError(
            f"F2 series at (x={x}, y={y}) did not converge within {mt} terms")
    return val


# ---------------------------------------------------------------------------
# adaptive quadrature plumbing
# ---------------------------------------------------------------------------

def _quad(f, lo, hi, qctl: QuadratureControl):
    val, abserr, info = integrate.quad(
        f, lo, hi, epsabs=qctl.abs_tol, epsrel=qctl.rel_tol,
        limit=qctl.max_subdivisions, full_output=True)[:3]
    # accept a noisy error code when the reported error already meets target
    if abserr > 10.0 * max(qctl.abs_tol, qctl.rel_tol * abs(val)):
        raise ConvergenceError(
            f"quadrature error estimate {abserr:.2e} above tolerance")
    return val


def _quad_semi_infinite(f, qctl: QuadratureControl):
    """Integral of f over (0, inf), mapped to (0, 1) by x = t/(1-t)."""

    def g(t):
        x = t / (1.0 - t)
        return f(x) / (1.0 - t) ** 2

    return _quad(g, 0.0, 1.0 - qctl.endpoint_inset, qctl)


def _lower_inc_gamma(b, u):
    # unregularized gamma(b, u) in a form safe for moderate b
    return math.exp(math.lgamma(b)) * _kernels._gammainc_p(b, u)


def verify_prop_a1(beta: float, theta: float, x: float,
                   qctl: QuadratureControl | None = None):
    """Both sides of the finite-interval incomplete-gamma identity

        int_0^x y^(b-1) e^(-t y) gamma(b, t y) dy = gamma(b, t x)^2 / (2 t^b).

    The integrand is the exact derivative of gamma(b, t y)^2 / (2 t^b), which
    is what the right-hand side evaluates. Returns (lhs, rhs) with the lhs by
    adaptive quadrature, for the caller to compare.
    """
    beta = _finite("beta", beta)
    theta = _finite("theta", theta)
    x = _finite("x", x)
    if beta <= 0.0 or theta <= 0.0 or x <= 0.0:
        raise DomainError("beta, theta, x must all be positive")
    qctl = qctl or DEFAULT_QUAD

    def f(y):
        return (y ** (beta - 1.0) * math.exp(-theta * y)
                * _lower_inc_gamma(beta, theta * y))

    lhs = _quad(f, 0.0, x, qctl)
    g = _lower_inc_gamma(beta, theta * x)
    rhs = g * g / (2.0 * theta ** beta)
    return lhs, rhs


def verify_prop_a2(a: float, b: float, c: float, s: float, theta: float,
                   xi: float, qctl: QuadratureControl | None = None):
    """Both sides of the semi-infinite double-incomplete-gamma transform

        int_0^inf x^(a-1) e^(-s x) gamma(b, theta x) gamma(c, xi x) dx
          = theta^b xi^c Gamma(a+b+c) / (b c (s+theta+xi)^(a+b+c))
            * F2(a+b+c, 1, 1; b+1, c+1; theta/(s+theta+xi), xi/(s+theta+xi)).
    """
    vals = [_finite(n, v) for n, v in
            (("a", a), ("b", b), ("c", c), ("s", s),
             ("theta", theta), ("xi", xi))]
    a, b, c, s, theta, xi = vals
    if min(vals) <= 0.0:
        raise DomainError("all arguments must be positive")
    qctl = qctl or DEFAULT_QUAD

    def f(x):
        if x <= 0.0:
            return 0.0
        return (x ** (a - 1.0) * math.exp(-s * x)
                * _lower_inc_gamma(b, theta * x)
                * _lower_inc_gamma(c, xi * x))

    lhs = _quad_semi_infinite(f, qctl)
    tot = s + theta + xi
    lpre = (b * math.log(theta) + c * math.log(xi) + math.lgamma(a + b + c)
            - math.log(b) - math.log(c) - (a + b + c) * math.log(tot))
    f2 = appell_f2(a + b + c, 1.0, 1.0, b + 1.0, c + 1.0,
                   theta / tot, xi / tot)
    return lhs, math.exp(lpre) * f2


def verify_prop_a3(a: float, s: float, theta: float, b: float,
                   qctl: QuadratureControl | None = None):
    """Both sides of the single-incomplete-gamma transform

        int_0^inf x^(a-1) e^(-s x) gamma(b, theta x) dx
          = theta^b Gamma(a+b) / (b (s+theta)^(a+b))
            * 2F1(a+b, 1; b+1; theta/(s+theta)).
    """
    vals = [_finite(n, v) for n, v in
            (("a", a), ("s", s), ("theta", theta), ("b", b))]
    a, s, theta, b = vals
    if min(vals) <= 0.0:
        raise DomainError("all arguments must be positive")
    qctl = qctl or DEFAULT_QUAD

    def f(x):
        if x <= 0.0:
            return 0.0
        return (x ** (a - 1.0) * math.exp(-s * x)
                * _lower_inc_gamma(b, theta * x))

    lhs = _quad_semi_infinite(f, qctl)
    tot = s + theta
    lpre = (b * math.log(theta) + math.lgamma(a + b) - math.log(b)
            - (a + b) * math.log(tot))
    h = gauss_2f1(a + b, 1.0, b + 1.0, theta / tot)
    return lhs, math.exp(lpre) * h
