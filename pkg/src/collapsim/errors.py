"""Exception types shared across the package."""


class CollapsimError(Exception):
    """Base class for all package-specific errors."""


class ZeroVector(CollapsimError):
    """All amplitudes are (numerically) zero; no state can be normalized."""


class DimensionMismatch(CollapsimError):
    """Operands live in incompatible Hilbert-space dimensions."""


class ForbiddenOutcome(CollapsimError):
    """An outcome outside the Born support was requested.

    This is the weak-compatibility boundary: deviating collapse may
    redistribute probability only among outcomes of nonzero Born probability.
    """


class LengthMismatch(CollapsimError):
    """Sequence arguments that must align have different lengths."""


class InvalidTable(CollapsimError):
    """A ray table violates context-level structure (shape or orthogonality)."""


class TooLarge(CollapsimError):
    """Requested problem size exceeds the dense-simulation cap."""


class BadParameter(CollapsimError):
    """A numeric or string parameter is outside its documented domain."""


class DegenerateSequence(CollapsimError):
    """An interval sequence carries no tail information (e.g. constant top-k)."""


class AllZeroPriorities(CollapsimError):
    """An alternative set has no positive priority to attend to."""


class NoAdmissibleAlternative(CollapsimError):
    """Selection found no alternative with nonzero amplitude."""


class ConfigError(CollapsimError):
    """An experiment configuration does not validate."""
