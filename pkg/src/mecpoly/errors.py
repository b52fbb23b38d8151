"""Exception hierarchy shared across the package."""


class MecError(Exception):
    """Base class for all package errors."""


class Graph6Error(MecError, ValueError):
    """Malformed graph6 input."""


class Graph6HeaderError(Graph6Error):
    pass


class Graph6TruncatedError(Graph6Error):
    pass


class Graph6TrailingError(Graph6Error):
    pass


class Graph6PaddingError(Graph6Error):
    pass


class NodeCapError(MecError, ValueError):
    """Node count exceeds the configured cap."""


class FamilyError(MecError, ValueError):
    """Invalid parameters for a named graph family."""


class BudgetExceeded(MecError):
    """An enumeration ran past its budget.

    ``reached`` is the number of items produced before giving up, so callers
    can tell "too big" from "done".
    """

    def __init__(self, what: str, budget: int, reached: int):
        self.what = what
        self.budget = budget
        self.reached = reached
        super().__init__(f"{what}: budget of {budget} exceeded (reached {reached})")


class SkeletonMismatch(MecError, ValueError):
    pass


class IncompleteRecord(MecError):
    pass


class NotACover(MecError, ValueError):
    pass


class DagifyError(MecError):
    """Every node left on a directed cycle lies in an excluded neighborhood."""


class HypothesisViolation(MecError, ValueError):
    """A closed-form formula was requested for a graph outside its hypotheses."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        msg = f"hypothesis violated: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotTriangleFree(MecError, ValueError):
    pass


class NotMaximal(MecError, ValueError):
    """The DAG does not attain the immorality number."""
