"""Exception hierarchy shared by all solver modules."""


class EsrhdError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EsrhdError):
    """An argument lies outside the mathematical domain of an operation."""


class InvariantError(EsrhdError):
    """A state violates an invariant that admissible inputs cannot violate."""


class RecoveryError(EsrhdError):
    """Conservative-to-primitive inversion failed.

    Carries the flat indices of the offending cells so callers can report
    where in the grid the solve broke down.
    """

    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


class RelaxationError(EsrhdError):
    """The relaxation-parameter root solve failed to bracket or converge."""


class ConfigError(EsrhdError):
    """A run configuration failed validation."""
