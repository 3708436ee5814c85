class GeominError(Exception):
    """
    base class of all errors raised by this package
    """
    pass

class DomainError(GeominError, ValueError):
    """
    raised when an argument lies outside the domain of an operation, like an odd degree, 
    gamma at a nonpositive argument or a minimizer outside [-1, -1/2]
    """
    pass

class DimensionError(GeominError, ValueError):
    """
    raised when a sequence argument is shorter than the operation needs
    """
    pass

class UnsupportedDegreeError(GeominError, ValueError):
    """
    raised for the algebraic solution at degrees other than 2 and 4
    """
    pass

class ConfigurationError(GeominError, ValueError):
    """
    raised when a configuration file does not match its schema
    """
    pass

class NonConvergenceError(GeominError, ArithmeticError):
    """
    raised when a series or an iteration reaches its cap without meeting its tolerance
    """
    pass

class PrecisionError(GeominError, ArithmeticError):
    """
    raised when the working precision cannot resolve the requested quantity
    """
    pass

class SeriesOverflowError(GeominError, ArithmeticError):
    """
    raised when an intermediate value of a series is no longer finite
    """
    pass



__all__ = [
    GeominError.__name__,
    DomainError.__name__,
    DimensionError.__name__,
    UnsupportedDegreeError.__name__,
    ConfigurationError.__name__,
    NonConvergenceError.__name__,
    PrecisionError.__name__,
    SeriesOverflowError.__name__
]
