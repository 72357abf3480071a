"""
Exception hierarchy for crankshaft
"""


class CrankshaftError(Exception):
    """
    Base class for every error raised by the package
    """


class UsageError(CrankshaftError, ValueError):
    """
    Invalid call: mismatched series orders, unknown names, empty ranges, bad config
    """


class DomainError(CrankshaftError, ValueError):
    """
    Argument outside the mathematical domain of an operation
    """


class BackendMismatchError(CrankshaftError):
    """
    Enumeration and series backends disagree on a statistic value
    """

    def __init__(self, statistic: str, params: dict, n: int, enum_value: int, series_value: int):
        self.statistic = statistic
        self.params = dict(params)
        self.n = n
        self.enum_value = enum_value
        self.series_value = series_value
        super().__init__(
            f"{statistic}{self.params} at n={n}: enumeration={enum_value}, series={series_value}"
        )
