class DomainError(ValueError):
    """
    Exception that is raised when an argument lies outside the domain of an operation, for example a negative horizon
    or a density requested at a point mass.
    """


class ToleranceError(ArithmeticError):
    """
    Exception that is raised when a numerical target (residual, truncation bound) cannot be met.
    """

    def __init__(self, message, achieved=None, target=None, *args):
        self.achieved = achieved
        self.target = target
        super(ToleranceError, self).__init__(message, *args)


class MeasureError(ValueError):
    """
    Exception that is raised when a requested equivalent measure does not exist or is not unique.
    """
    classification: str = 'invalid'


class NotEquivalentError(MeasureError):
    """
    The induced switching intensities are not all positive, so the measure is not equivalent.
    """
    classification = 'arbitrage'


class ArbitrageError(MeasureError):
    """
    The drift conditions have no solution: there is no risk-neutral measure.
    """
    classification = 'arbitrage'


class IncompleteMarketError(MeasureError):
    """
    The drift conditions have infinitely many solutions: the risk-neutral measure is not unique.
    """
    classification = 'incomplete'


class DegenerateVolatilityError(MeasureError):
    """
    A volatility vanishes where the one-asset family divides by it.
    """
