"""Exception hierarchy shared by all shiftdg modules."""


class ShiftdgError(Exception):
    """Base class for every error raised by this package."""


class NotStronglyConnected(ShiftdgError):
    pass


class InvalidWalk(ShiftdgError):
    pass


class DomainMismatch(ShiftdgError):
    pass


class CodomainMismatch(ShiftdgError):
    pass


class NotEpimorphism(ShiftdgError):
    pass


class SearchTooLarge(ShiftdgError):
    pass


class StateFiberMismatch(ShiftdgError):
    pass


class NoProjectingWalk(ShiftdgError):
    pass


class InvalidRange(ShiftdgError):
    pass


class NoAlmostProjectingWalk(ShiftdgError):
    pass


class NotDiligent(ShiftdgError):
    pass


class InvalidPartition(ShiftdgError):
    pass


class NotARefinement(ShiftdgError):
    pass


class ZeroEntry(ShiftdgError):
    pass


class NotIsomorphism(ShiftdgError):
    pass


class BaseMismatch(ShiftdgError):
    pass


class BudgetExceeded(ShiftdgError):
    pass
