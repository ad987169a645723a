"""Exception hierarchy shared by every module of the package."""


class CollatzError(Exception):
    """Base class for all errors raised by collatz_perms."""


class PowerOfTwoStart(CollatzError, ValueError):
    pass


class GuardExceeded(CollatzError, RuntimeError):
    pass


class DuplicateElements(CollatzError, ValueError):
    pass


class NotCollatzPattern(CollatzError, ValueError):
    pass


class InvalidType(CollatzError, ValueError):
    """A word that is not a legal trace type."""


class ConsecutiveUps(InvalidType):
    pass


class DoesNotEndInD(InvalidType):
    pass


class InvalidExtension(InvalidType):
    pass


class NotAUnit(CollatzError, ValueError):
    pass


class NotAWitness(CollatzError, ValueError):
    pass


class DegenerateWitness(CollatzError, ValueError):
    pass


class NoValidWitnessWithinCap(CollatzError, RuntimeError):
    pass


class SameSlope(CollatzError, ValueError):
    pass


class FamilyTooSmall(CollatzError, ValueError):
    pass


class CheckpointError(CollatzError, ValueError):
    """Checkpoint file is unreadable or does not match the current run."""
