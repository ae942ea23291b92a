"""Shared exception types."""


class ShiftCoverError(Exception):
    """Base class for package errors."""


class HorizonExceededError(ShiftCoverError):
    """A query needed words longer than the table's horizon."""


class ConstructionError(ShiftCoverError):
    """A generator spec cannot produce the requested object."""


class StabilizationError(ShiftCoverError):
    """A finite surrogate failed to stabilize within its budget."""

    def __init__(self, message, budget=None):
        super().__init__(message)
        self.budget = budget


class ConfigError(ShiftCoverError):
    """A run configuration is malformed or inconsistent."""
