"""Exception hierarchy shared by every sigkit module."""


class SigkitError(Exception):
    """Base class for all sigkit errors."""


class ZeroTests(SigkitError, ValueError):
    """A confusion matrix with no tests cannot be normalized or evaluated."""


class UnknownMeasure(SigkitError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown measure"


class NotASquare(SigkitError, ValueError):
    pass


class TooShort(SigkitError, ValueError):
    pass


class RankOutOfRange(SigkitError, IndexError):
    pass


class BudgetExceeded(SigkitError, RuntimeError):
    """Raised when exhaustive enumeration would visit more than ``budget`` items."""

    def __init__(self, count, budget):
        self.count = count
        self.budget = budget
        super().__init__(
            f"exact enumeration needs {count} compositions, budget is {budget}; "
            "use the Monte Carlo estimator instead"
        )
