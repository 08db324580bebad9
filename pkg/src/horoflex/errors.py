"""Exception hierarchy shared by all modules."""


class HoroflexError(Exception):
    """Base class for library errors."""


class EmptyInput(HoroflexError):
    pass


class ZeroVector(HoroflexError):
    pass


class ShapeMismatch(HoroflexError):
    pass


class NotStrictlyConvex(HoroflexError):
    pass


class BadRay(HoroflexError):
    pass


class BadGroupSpec(HoroflexError):
    pass


class NotDominant(HoroflexError):
    pass


class NotInSemigroup(HoroflexError):
    pass


class NotAWeight(HoroflexError):
    pass


class NoLndExists(HoroflexError):
    pass


class NotWellDefined(HoroflexError):
    pass


class Inconsistent(HoroflexError):
    """Two independent characterizations disagree; always a bug."""
