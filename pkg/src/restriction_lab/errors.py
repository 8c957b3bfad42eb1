"""Shared exception types for the numerical modules."""


class NumericalError(RuntimeError):
    """A quadrature or acceleration failed to reach its accuracy target."""


class ConfigurationError(ValueError):
    """An experiment configuration exceeds its resource budget."""
