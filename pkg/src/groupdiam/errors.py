"""Exception hierarchy shared by every module."""


class GroupDiamError(Exception):
    """Base class for all errors raised by groupdiam."""


class ParseError(GroupDiamError, ValueError):
    """Malformed cycle notation, word text or group description."""


class DomainError(GroupDiamError, ValueError):
    """An operation's precondition does not hold for its input."""


class EvaluationError(DomainError):
    """A word mentions a label that the generating set does not define."""


class CapacityError(GroupDiamError, RuntimeError):
    """A configured enumeration or state budget would be exceeded."""
