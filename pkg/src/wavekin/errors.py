"""Exception types shared across the package."""


class WavekinError(Exception):
    """Base class for all package-specific errors."""


class ParameterViolation(WavekinError):
    """Model parameters violate a kernel/dissipation admissibility constraint."""


class DomainError(WavekinError):
    """An argument lies outside the domain where a bound formula is valid."""


class DimensionMismatch(WavekinError):
    """Two states live on grids of different size."""


class SupportTooLarge(WavekinError):
    """State support reaches into the truncation-sensitive upper half of the grid."""


class NonFiniteState(WavekinError):
    """A time step produced NaN or Inf entries."""


class FileParseError(WavekinError):
    """Malformed initial-data file."""


class NegativeValueError(WavekinError):
    """Initial-data file contains a negative cell value."""


class MLOverflowError(WavekinError):
    """A Mittag-Leffler series term exceeded the representable range."""


class ConfigError(WavekinError):
    """Configuration text is syntactically or semantically invalid."""


class NegativityWarning(UserWarning):
    """Explicit time stepping drove a cell value below the negativity tolerance."""
