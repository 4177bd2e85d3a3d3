"""Exception hierarchy shared by every module."""


class LogsurfError(Exception):
    """Base class for all errors raised by logsurf."""


class InputError(LogsurfError, ValueError):
    """Malformed or unresolvable input (unknown class, bad rational, ...)."""


class PreconditionError(LogsurfError, ValueError):
    """An operation was called outside its domain."""


class ModelInconsistencyError(LogsurfError):
    """The intersection data cannot come from curves on a real surface."""


class InvariantViolation(LogsurfError, AssertionError):
    """A computed result failed its own certificate."""


class InconsistentDatumError(InputError):
    """Resolution data violate the blow-up bookkeeping rules."""
