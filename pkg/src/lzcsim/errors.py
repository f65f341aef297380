"""Exception hierarchy shared across the package."""


class LzcError(Exception):
    """Base class for all lzcsim errors."""


class InvalidModel(LzcError):
    """A model violates one or more structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ZeroSlope(LzcError):
    pass


class IndexOutOfRange(LzcError):
    pass


class MixedSlopeSigns(LzcError):
    pass


class NonPositiveSlope(LzcError):
    pass


class PoleOfGamma(LzcError):
    pass


class InvalidSign(LzcError):
    pass


class NonPositiveTime(LzcError):
    pass


class UnknownProfile(LzcError):
    pass


class DimensionMismatch(LzcError):
    pass


class GridTooLarge(LzcError):
    pass


class NormDriftExceeded(LzcError):
    pass


class UnknownScenario(LzcError):
    pass


class PropagationFailure(LzcError):
    def __init__(self, point, cause):
        self.point = point
        self.cause = cause
        super().__init__(f"propagation failed at sweep point {point!r}: {cause}")


class BadPath(LzcError):
    pass


class MissingAnalytic(LzcError):
    pass
