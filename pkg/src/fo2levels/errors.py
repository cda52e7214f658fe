class Fo2Error(Exception):
    """Base class for all errors raised by fo2levels."""


class InputError(Fo2Error, ValueError):
    """Malformed input: bad JSON schema, unknown variable, letter outside alphabet."""


class ResourceCapError(Fo2Error):
    """A configured size or enumeration budget was exceeded."""

    def __init__(self, cap_name, cap, observed):
        self.cap_name = cap_name
        self.cap = cap
        self.observed = observed
        super().__init__(f"{cap_name} exceeded: limit {cap}, observed {observed}")


class InvariantViolation(Fo2Error, AssertionError):
    """An internal consistency check failed; indicates a bug, never bad input."""


class PreconditionError(Fo2Error, ValueError):
    """An operation was called on an input outside its domain."""
