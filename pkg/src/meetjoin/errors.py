"""Exception types shared across the package."""


class MeetJoinError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(MeetJoinError):
    """Malformed textual input: scalars, matrices, poset or family files."""


class StructureError(MeetJoinError):
    """An order-theoretic precondition does not hold."""


class CycleError(StructureError):
    """Cover relation contains a directed cycle."""


class DuplicateCoverError(StructureError):
    """The same cover pair was listed twice."""


class UnknownElementError(StructureError):
    """Element identifier is not part of the backend's universe."""


class NotSortedError(StructureError):
    """A listing violates the required ordering x_i <= x_j implies i <= j."""


class NoMeetError(StructureError):
    """A pair has no greatest lower bound in this backend."""


class NoJoinError(StructureError):
    """A pair has no least upper bound in this backend."""


class NotClosedError(StructureError):
    """Operation needs a meet-closed (or join-closed) set and got one that is not."""


class AdmissibilityError(StructureError):
    """Caller-supplied closure set does not contain all required meets/joins."""


class MissingValueError(MeetJoinError):
    """A row function has no value at an element where one is required."""


class DimensionError(MeetJoinError):
    """Matrix dimensions are invalid or incompatible."""


class SingularError(MeetJoinError):
    """Matrix inverse requested for a singular matrix."""


class SingularPsiError(MeetJoinError):
    """Inverse formula requested while some diagonal recursion value is zero."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"diagonal value is zero at row {index + 1}; matrix is singular")


class DomainError(MeetJoinError):
    """Numeric argument outside the function's domain."""


class OracleMismatchError(MeetJoinError):
    """A closed-form result disagrees with the brute-force computation."""
