"""Exception hierarchy shared by all ovalkit modules."""


class OvalkitError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OvalkitError):
    """Parameter value lies outside the curve's domain."""


class DegeneratePointError(OvalkitError):
    """Operation needs a regular point but the speed is below the floor."""


class CuspDegenerateError(DegeneratePointError):
    """Offset curvature requested exactly at a cusp parameter."""


class PoleError(OvalkitError):
    """Evaluation at a pole (e.g. a focus of a bifocal oval)."""


class InvalidScenarioError(OvalkitError):
    """Scenario payload failed validation.

    ``field`` is a dotted path into the offending entry, e.g. ``"curve.a"``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


class NumericalError(OvalkitError):
    """A numerical procedure failed to converge; details in ``diagnostics``."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)
