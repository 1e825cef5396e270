"""Exception hierarchy.

Every validation error carries the name of the violated invariant as its
class name, which is what the command line reports.
"""


class CoverError(Exception):
    """Base class for all errors raised by this package."""


class GroupSpecError(CoverError, ValueError):
    pass


class EmptyGroupSpec(GroupSpecError):
    pass


class OrderLessThanTwo(GroupSpecError):
    pass


class ElementShapeMismatch(CoverError, ValueError):
    pass


class GroupTooLargeForAutEnumeration(CoverError):
    pass


class InvalidDatum(CoverError, ValueError):
    """A monodromy datum violates one of its invariants."""


class IdentityBranchElement(InvalidDatum):
    pass


class MonodromySumNonzero(InvalidDatum):
    pass


class NotGenerating(InvalidDatum):
    pass


class TooFewBranchPoints(InvalidDatum):
    pass


class GenusBelowTwo(InvalidDatum):
    pass


class MalformedDatum(InvalidDatum):
    """The datum JSON does not have the expected shape."""


class MultiplicityInvariantBroken(CoverError, AssertionError):
    """Raised when computed multiplicities break an identity they must satisfy.

    Reaching this is a bug in the arithmetic, never a property of the input.
    """


class InternalNonIntegerMultiplicity(MultiplicityInvariantBroken):
    pass


class InvalidAssertion(CoverError, ValueError):
    pass


class UnknownFormat(CoverError, ValueError):
    pass


class ScanBoundExceeded(CoverError, ValueError):
    """A scan asks for more than the configured group order or branch points."""


class OracleFailure(CoverError):
    """A per-row consistency check failed during a scan."""
