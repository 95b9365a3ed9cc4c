"""Exception types raised across the package."""


class MoorePackError(Exception):
    pass


class NotPrimePower(MoorePackError, ValueError):
    pass


class NotRegular(MoorePackError):
    pass


class TooLarge(MoorePackError, ValueError):
    pass


class UnknownName(MoorePackError, KeyError):
    pass


class DualMismatch(MoorePackError):
    """Line-side and point-side incidence rules produced different edge sets."""


class EvenCharacteristic(MoorePackError, ValueError):
    pass


class NotAnOvoid(MoorePackError):
    pass


class NotMoore(MoorePackError, ValueError):
    pass


class QTooSmall(MoorePackError, ValueError):
    pass


class OvoidInvalid(MoorePackError, ValueError):
    pass


class NotApplicable(MoorePackError, ValueError):
    pass


class NotDiameter2(NotApplicable):
    pass


class Infeasible(MoorePackError):
    """No packing coloring exists under the requested color cap."""


class BudgetExceeded(MoorePackError):
    """A search ran out of its time or node budget.

    ``best`` carries whatever partial answer the search had when it stopped
    (a vertex set, a coloring, or a ``(lower, upper)`` bracket).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class FileFormatError(MoorePackError, ValueError):
    """A graph, coloring or ovoid file could not be parsed or is inconsistent."""
