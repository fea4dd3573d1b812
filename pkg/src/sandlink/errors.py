"""Exception types raised by sandlink."""


class SandlinkError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(SandlinkError, ValueError):
    pass


class NonPositiveInput(InvalidInput):
    pass


class InvalidPermittivity(InvalidInput):
    pass


class EmptySampleSet(InvalidInput):
    pass


class FractionSumMismatch(InvalidInput):
    pass


class NegativeFraction(InvalidInput):
    pass


class HumidityOutOfRange(InvalidInput):
    pass


class ZeroGamma(InvalidInput):
    pass


class EmptyProfile(InvalidInput):
    pass


class NegativeAttenuation(InvalidInput):
    pass


class NonPositiveDistance(InvalidInput):
    pass


class ProfileLengthMismatch(InvalidInput):
    pass


class LinkDownInClearAir(SandlinkError):
    """The link has no positive clear-air margin for a storm to consume."""


class NonPositiveBracket(SandlinkError):
    """A solver could not form a bracket with positive end points."""


class NoPositiveRange(SandlinkError):
    """No distance greater than zero keeps the link above threshold."""


class ScenarioParseError(SandlinkError):
    exit_code = 2


class ScenarioValidationError(SandlinkError):
    exit_code = 3


class ComputeError(SandlinkError):
    exit_code = 4
