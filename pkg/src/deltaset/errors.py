"""Exception hierarchy shared by the deltaset modules."""


class DeltasetError(Exception):
    """Base class for every error raised by deltaset."""

    pass


class DimensionMismatchError(DeltasetError, ValueError):
    """Raised when vectors that must share a dimension do not."""

    pass


class DeltaRangeError(DeltasetError, ValueError):
    """Raised when delta lies outside the interval an operation accepts."""

    pass


class DegenerateBallError(DeltasetError, ValueError):
    """Raised when polytope generators do not span the ambient space."""

    pass


class DuplicateInputError(DeltasetError, ValueError):
    """Raised when a vector list that must be distinct contains a repeat."""

    pass


class InstanceError(DeltasetError, ValueError):
    """Raised when an Instance or Witness is malformed."""

    pass


class InvalidWitnessError(DeltasetError, ValueError):
    """Raised when a witness does not satisfy the dual linear system."""

    pass


class InvalidCandidateError(DeltasetError, ValueError):
    """Raised when a search candidate is not a unit vector of the norm."""

    pass


class MalformedProgramError(DeltasetError, ValueError):
    """Raised when a linear program is not well formed."""

    pass


class ParameterError(DeltasetError, ValueError):
    """Raised when construction or search parameters are out of range."""

    pass


class SerializationError(DeltasetError, ValueError):
    """Raised when JSON input cannot be decoded into deltaset values."""

    pass
