"""Exception hierarchy shared by every module of the toolkit."""

from typing import Optional


class LabError(Exception):
    """Base class for all toolkit errors."""


class DomainError(LabError, ValueError):
    """An input violates a precondition of the operation."""


class PrecisionError(LabError, ValueError):
    """A truncated series or height computation has too little precision."""

    def __init__(self, message: str, required: Optional[int] = None):
        super().__init__(message)
        self.required = required


class BudgetExceeded(LabError, RuntimeError):
    """An enumeration ran past its configured budget."""

    def __init__(self, message: str, bound: Optional[int] = None, key: Optional[str] = None):
        if key:
            message = f"{message} (raise {key} in .lab_env to allow more)"
        super().__init__(message)
        self.bound = bound
        self.key = key


class ConsistencyError(LabError, AssertionError):
    """An internal identity that must hold did not."""


class ConfigError(LabError, ValueError):
    """A configuration value could not be parsed."""
