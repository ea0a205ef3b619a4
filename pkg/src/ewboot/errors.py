"""Exception taxonomy shared across the package.

Everything derives from :class:`EwbootError` so callers can catch the
package's failures in one clause.  Validation failures additionally derive
from ``ValueError`` because that is what most numpy-facing code expects.
"""


class EwbootError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(EwbootError, ValueError):
    """A parameter is outside its documented domain."""


class DataFormatError(EwbootError, ValueError):
    """A data file or record does not match the documented format."""


class ConfigError(EwbootError, ValueError):
    """A run configuration is malformed (unknown key, bad type, bad value)."""


class DegenerateRiskSetError(EwbootError):
    """A risk-set denominator vanished where positive event mass remains."""


class UnfittableDataError(EwbootError):
    """The dataset carries no usable information (e.g. no weighted events)."""


class SingularInformationError(EwbootError):
    """An information or variance matrix is singular past the usable range."""


class InsufficientReplicatesError(EwbootError):
    """Too few usable bootstrap replicates for the requested statistic."""


class UnstableResamplingError(EwbootError):
    """Too many bootstrap replicates were excluded (strict mode only)."""


class DegenerateBootstrapError(EwbootError):
    """A resampling scheme produced zero bootstrap variance where an
    experiment needs a nondegenerate conditional distribution."""
