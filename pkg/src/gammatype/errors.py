"""Exception hierarchy shared by every module."""


class GammaTypeError(Exception):
    """Base class for all package errors."""


class DomainError(GammaTypeError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConstructionError(DomainError):
    """A moment specification cannot be built from the given factors."""


class NumericalError(GammaTypeError, ArithmeticError):
    """An evaluation could not meet its accuracy contract."""


class BracketError(GammaTypeError):
    """A bisection bracket does not straddle a sign change."""


class DenominatorPoleWarning(UserWarning):
    """A denominator Gamma factor sits on a pole, so the moment vanishes."""
