"""Exception types shared across the toolchain.

Each maps to one failure category (and one CLI exit code, see cli.py):
parse problems carry a line number where available; contract violations mean
the caller handed a function something outside its stated domain.
"""


class AnnealcError(Exception):
    """Base class for all toolchain errors."""


class ParseError(AnnealcError):
    """Malformed input text (polynomial, model, CNF, tree, or embedding file)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class DimensionError(AnnealcError):
    """An assignment vector is shorter than the declared variable count."""


class ContractViolation(AnnealcError):
    """Arguments outside an operation's stated domain (wrong sign, degree, ...)."""


class DomainError(AnnealcError):
    """A value outside its permitted set (non-spin entry, bad qubit id, ...)."""


class SizeError(AnnealcError):
    """Instance too large for an exact method."""


class ScheduleError(AnnealcError):
    """An annealing schedule with unusable parameters."""


class InstanceError(AnnealcError):
    """A structurally invalid problem instance (disconnected tree, cycle, ...)."""


class EmbeddingNotFound(AnnealcError):
    """The embedding search exhausted its attempts without success."""
