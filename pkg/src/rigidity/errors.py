"""Exception types shared across the package."""

from __future__ import annotations


class RigidityError(Exception):
    """Base class for all errors raised by this package."""


class OutOfScopeError(RigidityError):
    """Raised for inputs the engine deliberately does not handle (triality D4)."""


class ContractError(RigidityError):
    """A caller violated an operation contract (wrong shape, wrong place kind)."""


class MissingRealClassError(RigidityError):
    """A real form needs an explicit cohomology class that was not supplied."""


class CapacityError(RigidityError):
    """An enumeration exceeded the configured cap.

    ``partial`` may carry already-found orbit elements, enough to certify
    that an orbit has more than two elements even though the full
    enumeration was abandoned.
    """

    def __init__(self, message: str, partial: tuple = ()):
        super().__init__(message)
        self.partial = partial


class ValidationError(RigidityError):
    """One or more descriptor invariants do not hold."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues))


class DescriptorParseError(RigidityError):
    """Positioned syntax or semantic errors in a descriptor file."""

    def __init__(self, errors):
        # each error is (line, column, message); line/column are 1-based
        self.errors = list(errors)
        super().__init__("\n".join(f"{ln}:{col}: {msg}" for ln, col, msg in self.errors))
