"""Semantic exception hierarchy shared by all filtra modules."""


class FiltraError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FiltraError, ValueError):
    """An input violates a documented precondition or invariant."""


class ModeMismatchError(ValidationError):
    """Exact-rational and float quantities were mixed in one operation."""


class SpaceMismatchError(ValidationError):
    """Two objects that must share a state space do not."""


class TotalOrderError(ValidationError):
    """An operation requiring a totally ordered space got a partial order."""


class MarginMismatchError(ValidationError):
    """Coupling margins do not match the prescribed distributions."""


class ConfigError(FiltraError):
    """Invalid run configuration (CLI exit code 2)."""


class VerificationError(FiltraError):
    """A mathematical identity the artifact must reproduce failed (CLI exit code 3)."""
