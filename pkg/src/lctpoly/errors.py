"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class LctpolyError(Exception):
    """Base class for all library errors."""


class PreconditionError(LctpolyError, ValueError):
    """An operation was called outside its documented precondition (exit code 3)."""


class SchemaError(LctpolyError, ValueError):
    """Input data does not parse against the expected JSON schema (exit code 2)."""
