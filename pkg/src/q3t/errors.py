"""Exception hierarchy shared by all q3t modules."""


class Q3TError(Exception):
    """Base class for every error raised by q3t."""


class InputError(Q3TError):
    """The caller supplied an invalid graph, face, order or parameter."""


class InternalInvariantError(Q3TError):
    """A structural property guaranteed by the theory failed to hold.

    Raised only on bugs or corrupted input; the CLI maps it to exit code 3.
    """


class TooSmall(InputError):
    pass


class StellationTargetNotAFace(InputError):
    pass


class DuplicateApex(InputError):
    pass


class NotA3Tree(InputError):
    pass


class NotPlanar3Tree(InputError):
    pass


class NotAFace(InputError):
    pass


class UnknownVertex(InputError):
    pass


class IncompleteAssignment(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class UnknownCase(InputError):
    pass


class DepthUnsupported(InputError):
    pass


class InvalidLayout(InputError):
    pass


class BudgetExceeded(Q3TError):
    """The exact solver ran out of its size or time budget.

    ``lower`` and ``upper`` carry the best bounds known when it stopped.
    """

    def __init__(self, message, lower=None, upper=None, order=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.order = order


class InternalStructureViolation(InternalInvariantError):
    pass


class AugmentationConflict(InternalInvariantError):
    pass


class ConstructionExhausted(InternalInvariantError):
    pass


class ChildNotInFace(InternalInvariantError):
    pass
