"""Exception types shared across the package.

The CLI maps these onto exit codes: SolverError (and subclasses) -> 1,
BoundViolationError -> 2, ConfigError -> 3.
"""


class SolverError(RuntimeError):
    """Numerical procedure failed: no convergence, certification breach, singular system."""


class BracketError(SolverError):
    """A root bracket could not be established."""


class IntegrationError(SolverError):
    """Quadrature aborted, e.g. on a non-finite integrand value."""


class BoundViolationError(RuntimeError):
    """A certified inequality or invariant check failed."""


class ConfigError(ValueError):
    """Bad command-line arguments or config file."""
