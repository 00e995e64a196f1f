"""Exception types shared across the package."""


class EpcError(Exception):
    """Base class for domain errors raised by this package."""


class DivergenceError(EpcError):
    """An infinite series inside a penalty or transform fails to converge."""


class NotLightTailedError(EpcError):
    """No reduction index satisfies the light-tail conditions."""


class StabilityError(EpcError):
    """The arrival process cannot keep up with any code."""


class ContainerError(EpcError):
    """Malformed or inconsistent container bytes."""
