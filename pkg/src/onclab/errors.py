"""Exception hierarchy shared across the package."""


class OncError(Exception):
    """Base class for all onclab errors."""


class ParameterError(OncError, ValueError):
    """A numeric argument is outside its admissible range."""


class ConfigurationError(OncError, ValueError):
    """Inconsistent scenario setup (e.g. mismatched interferer counts)."""


class FramingError(OncError, ValueError):
    """Payload or word length does not match the frame layout."""


class NumericalError(OncError, ArithmeticError):
    """A computation is ill-conditioned or underflowed."""
