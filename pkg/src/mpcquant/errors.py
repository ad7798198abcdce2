"""Exception types shared across the package."""


class MpcquantError(Exception):
    """Base class for all errors raised by this package."""


class NonUnimodularError(MpcquantError, ValueError):
    """An integer matrix expected to have determinant +/-1 does not."""


class RankMismatchError(MpcquantError, ValueError):
    """Vectors of incompatible lengths were combined."""


class NotSymplecticError(MpcquantError, ValueError):
    """A matrix fails the symplectic-form invariance check."""


class StepTooCoarseError(MpcquantError, ValueError):
    """Consecutive determinant samples along a path moved too far to track
    the square-root branch reliably."""


class NotPrequantizableError(MpcquantError, ValueError):
    """The system is not flagged metaplectic-c prequantizable, so the
    equivariance criterion does not apply."""


class NoFixedPointsError(MpcquantError, ValueError):
    """An operation requiring at least one fixed point got none."""


class InconsistentDefectsError(MpcquantError, ValueError):
    """Fixed points demand different momentum shifts; no single constant
    can make the system equivariant, so the input data is not realizable."""


class RankUnsupportedError(MpcquantError, ValueError):
    """Exact hull or rendering is implemented only at low torus rank."""


class UnboundedError(MpcquantError, ValueError):
    """A bounded polyhedron was required."""


class WindowRequiredError(MpcquantError, ValueError):
    """Enumerating an unbounded polyhedron requires an explicit window."""


class NotQuantizedError(MpcquantError, ValueError):
    """The requested level is not a quantized energy level."""


class ActionNotFreeError(MpcquantError, ValueError):
    """The torus action is not flagged free on regular level sets."""


class NotOnLevelSetError(MpcquantError, ValueError):
    """An orbit base point does not lie on the stated momentum level set."""


class NotEquivariantError(MpcquantError, ValueError):
    """The model momentum map does not satisfy the fixed-point equivariance
    condition; apply the solved shift first."""


class DocumentError(MpcquantError, ValueError):
    """An input document violates the schema."""
