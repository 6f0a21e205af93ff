"""Exception taxonomy shared across the package.

Every operation rejects NaN/inf inputs with :class:`DomainError` instead of
propagating NaNs; series and iterative routines that hit their caps raise
:class:`ConvergenceError`; mixed-sign density brackets that cancel to zero or
below raise :class:`EvaluationError`.
"""


class DomainError(ValueError):
    """An argument is outside the documented domain (or not finite)."""


class ConvergenceError(RuntimeError):
    """A series, quadrature, or iterative solver hit its cap before converging."""


class EvaluationError(RuntimeError):
    """A result is numerically unusable (e.g. a signed mixture cancelled to <= 0)."""


class DataFormatError(ValueError):
    """Ingested data (CSV/JSON) could not be parsed into the expected shape."""
