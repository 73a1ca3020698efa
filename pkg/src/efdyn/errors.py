"""Exception hierarchy shared across the package."""


class EfdynError(Exception):
    """Base class for all package-specific errors."""


class ZeroDiscriminant(EfdynError):
    """The coupling discriminant D = delta*mu - (p-1-s)(q-1-m) vanishes."""


class DegeneratePoint(EfdynError):
    """A radial state sits outside the phase chart (u, v, u' or v' is zero)."""


class ZeroCoordinate(EfdynError):
    """A phase coordinate required to be nonzero is zero."""


class PreconditionViolated(EfdynError):
    """Arguments violate a documented precondition."""


class UndefinedPoint(EfdynError):
    """Requested fixed point is undefined for these parameters (denominator vanishes)."""


class NotApplicable(EfdynError):
    """The requested object does not exist for these parameters/signs."""


class NotCritical(EfdynError):
    """Parameters are not on the critical curve required by the operation."""


class BoundaryCase(EfdynError):
    """Parameters sit exactly on an excluded equality; no verdict is defined."""


class DegenerateState(EfdynError):
    """State is inadmissible for the requested energy evaluation."""


class StepSizeUnderflow(EfdynError):
    """The integrator step size collapsed (stiffness near blow-up)."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class SeriesInvalid(EfdynError):
    """The regular-solution startup series does not apply (min(p+a, q+b) <= 0)."""


class Inconclusive(EfdynError):
    """Shot classification stayed ambiguous after all horizon extensions."""


class ConfigError(EfdynError):
    """Invalid run configuration; carries the offending field path."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
