"""Exception types shared across the package."""


class ZenoSimError(Exception):
    """Base class for all package-specific errors."""


class InvalidStateError(ZenoSimError):
    """A density matrix violates a state invariant (e.g. not Hermitian)."""


class NonphysicalStateError(ZenoSimError):
    """A Bloch vector lies outside the unit ball beyond tolerance."""


class ConfigError(ZenoSimError):
    """A configuration value or file is invalid.

    ``field`` holds a dotted path such as ``"schedule.pulse_area"`` when the
    offending entry is known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class IntegrationError(ZenoSimError):
    """The integrator produced a state violating an invariant.

    ``time`` is the simulation time of the offending state.
    """

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.message = message
        self.time = time

    def __str__(self) -> str:
        return f"{self.message} (at t={self.time:.6g})"


class BoundViolationError(ZenoSimError):
    """No admissible measurement count exists for the given parameters."""
