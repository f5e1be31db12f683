"""Exception hierarchy shared by all wedgemellin modules.

The CLI maps these onto its exit-code contract: configuration problems
exit 2, inadmissible Poisson parameters exit 3, numerical failures exit 4.
"""


class WedgeMellinError(Exception):
    """Base class for all library errors."""


class ConfigError(WedgeMellinError):
    """Invalid configuration value; the message names the offending key."""


class SchemaError(ConfigError):
    """Serialized artifact does not match the expected schema."""


class DomainError(WedgeMellinError, ValueError):
    """Geometric argument outside its domain (angle out of range, origin, ...)."""


class CapabilityError(WedgeMellinError):
    """Operation asked for something the object cannot provide
    (derivative order too high, Mellin norm with p != 2, ...)."""


class SamplingError(WedgeMellinError):
    """Field evaluation produced a non-finite value; message carries the node."""


class IntegrationError(WedgeMellinError):
    """Quadrature encountered a non-finite summand; message carries the node."""


class AdmissibilityError(WedgeMellinError):
    """Poisson parameters violate the admissible range."""


class SingularityError(WedgeMellinError):
    """A contour point landed within tolerance of the Dirichlet spectrum."""


class ProbeError(WedgeMellinError):
    """A diagnostic probe (corner exponent fit, ...) has insufficient signal."""


class InconsistencyError(WedgeMellinError):
    """Mutually contradictory inputs, e.g. zero datum with nonzero solution."""
