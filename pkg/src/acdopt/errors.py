"""Exception types shared across the solver modules."""


class AcdoptError(ValueError):
    """Base class for domain errors raised by this package."""


class UnreachableTargetError(AcdoptError):
    """The requested target share cannot be reached with any admissible control."""


class InadmissibleSingularError(AcdoptError):
    """The singular control (alpha_R - b)/(a - b) falls outside [0, 1]."""


class ConfigError(AcdoptError):
    """A scenario configuration file is malformed or incomplete."""
