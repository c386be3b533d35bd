"""Exception classes raised by browntutte."""


class BrownTutteError(Exception):
    """Base class for all package errors."""


class DomainError(BrownTutteError, ValueError):
    """Argument outside the domain of the requested function."""


class PoleError(DomainError):
    """Gamma function (or a ratio built from it) evaluated at a pole."""


class DivergenceError(BrownTutteError, ArithmeticError):
    """A hypergeometric series was requested outside its disc of convergence."""


class ConvergenceError(BrownTutteError, ArithmeticError):
    """A series or quadrature did not reach the requested tolerance."""


class SpecError(BrownTutteError, ValueError):
    """Meijer-G parameter data that the construction does not support."""
