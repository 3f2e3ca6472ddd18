"""Exception hierarchy shared by every module."""


class OrientedGraphError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraph(OrientedGraphError, ValueError):
    pass


class LoopEdge(InvalidGraph):
    pass


class AntiparallelViolation(InvalidGraph):
    pass


class DuplicateEdge(InvalidGraph):
    pass


class OutOfRange(OrientedGraphError, IndexError):
    pass


class EmptySet(OrientedGraphError, ValueError):
    pass


class ModeError(OrientedGraphError, ValueError):
    """Operation needs an oriented graph but got a general digraph."""


class BadParams(OrientedGraphError, ValueError):
    pass


class EvenOrder(BadParams):
    pass


class OddOrder(BadParams):
    pass


class Infeasible(BadParams):
    pass


class TooLarge(BadParams):
    pass


class PatternTooShort(BadParams):
    pass


class NoPlan(OrientedGraphError, ValueError):
    """The winding decomposition needs ``r <= a`` and it does not hold."""


class BudgetExceeded(OrientedGraphError, RuntimeError):
    """An exact search gave up before deciding.

    Never the same thing as "not found": callers must treat it as unknown.
    """

    def __init__(self, message: str = "search budget exhausted", *, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class EmbeddingNotFound(OrientedGraphError, LookupError):
    """Greedy walk embedding failed; ``element`` names the shape part that failed."""

    def __init__(self, element: str):
        super().__init__(f"could not embed {element}")
        self.element = element


class GraphFormatError(OrientedGraphError, ValueError):
    pass
