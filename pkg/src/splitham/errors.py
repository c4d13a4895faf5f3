"""Exception types shared across the package."""


class MalformedGraph6(ValueError):
    """Input is not a valid graph6 string."""


class MalformedGraphInput(ValueError):
    """A JSON edge list (or other graph input) could not be interpreted."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed. Always indicates a bug."""


class PreconditionViolated(ValueError):
    """An operation was called outside its documented domain."""


class IllegalSurgery(ValueError):
    """A cover transformation was requested whose preconditions do not hold."""


class InvalidCover(ValueError):
    """A cover failed validation against its graph and split partition."""


class OrderCapExceeded(ValueError):
    """The graph (or requested enumeration) is larger than the configured cap."""


class InvalidSpec(ValueError):
    """A generator specification is inconsistent."""


class SearchBudgetExceeded(RuntimeError):
    """A backtracking search ran out of nodes before reaching a decision."""

    def __init__(self, message: str, nodes: int):
        super().__init__(message)
        self.nodes = nodes


class ExistenceFailure(RuntimeError):
    """A structure guaranteed to exist under the stated hypotheses was not found.

    On a graph that really satisfies the hypotheses this is a counterexample
    candidate, so the graph is carried along for triage.
    """

    def __init__(self, message: str, graph6: str = "", stage: str = ""):
        super().__init__(message)
        self.graph6 = graph6
        self.stage = stage


class ConstructionFailure(RuntimeError):
    """A constructor produced output that failed independent verification."""

    def __init__(self, message: str, state: dict | None = None):
        super().__init__(message)
        self.state = state or {}
