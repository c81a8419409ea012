"""Exception types shared across the toolkit."""


class GMetricError(Exception):
    """Base class for all toolkit errors."""


class DomainError(GMetricError, ValueError):
    """A point has the wrong kind/dimension or lies outside a carrier."""


class ParameterError(GMetricError, ValueError):
    """A numeric parameter is outside its admissible range."""


class CapExceededError(GMetricError, ValueError):
    """An exhaustive enumeration would exceed the configured size cap."""


class ConfigError(GMetricError, ValueError):
    """A run configuration is malformed or references unknown entries."""
