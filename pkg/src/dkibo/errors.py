"""Exception hierarchy shared across the package.

Each class maps to a distinct CLI exit code (see ``dkibo.cli``), so a
scripted caller can tell apart bad configuration, a failing objective,
and state-file problems without parsing messages.
"""


class DkiboError(Exception):
    """Base class for all package errors."""


class ConfigError(DkiboError):
    """Invalid experiment configuration or command arguments."""


class ObjectiveError(DkiboError):
    """The objective returned a non-finite value; the message names the point."""


class StateError(DkiboError):
    """Ask/tell state file is missing, corrupted, or has a wrong schema version."""


class DimensionMismatchError(DkiboError):
    """A vector's length does not match the search-space dimension."""


class OutOfBoundsError(DkiboError):
    """A point lies outside the search-space box."""


class NonFiniteValueError(DkiboError):
    """An observed value is NaN or infinite."""


class GpFitError(DkiboError):
    """Cholesky factorization failed even after maximum jitter escalation."""
