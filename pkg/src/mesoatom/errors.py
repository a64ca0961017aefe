"""Exception types shared across the package."""


class MesoatomError(Exception):
    """Base class for all package errors."""


class ConfigError(MesoatomError, ValueError):
    pass


class NotHalfInteger(ConfigError):
    """Charge product e*gm/(hbar*c) is not a half-integer."""


class CouplingTooLarge(ConfigError):
    """Z*alpha >= 1/2."""


class DomainError(MesoatomError, ValueError):
    pass


class InvalidDegree(DomainError):
    pass


class OutOfSpectrum(MesoatomError, ValueError):
    """Principal number at or beyond the cap N0."""


class NoSuchLevel(MesoatomError, LookupError):
    pass


class OutOfChart(DomainError):
    """Harmonic evaluated at the pole excluded from its chart."""


class NoConvergence(MesoatomError, ArithmeticError):
    pass


class DivergentIntegral(MesoatomError, ArithmeticError):
    pass


class OracleError(MesoatomError, RuntimeError):
    pass


class StiffnessFailure(OracleError):
    pass


class BranchError(OracleError):
    pass
