import logging
import typing
from enum import StrEnum, IntEnum
from fractions import Fraction


# types
JSONSerializable = typing.Union[typing.Dict[str, typing.Any], list, str, int, float, None]
JSON = typing.Dict[str, JSONSerializable]

# fitted decay rate of the perturbation error in decimal digits per term, stored exactly
DECAY_DIGITS_PER_TERM : Fraction = Fraction('0.759')
# R_4(n) < BOUND_SCALE * 10^-(BOUND_OFFSET + DECAY_DIGITS_PER_TERM * n)
BOUND_SCALE : int = 5
BOUND_OFFSET : int = 2

MIN_MANTISSA_BITS : int = 64


class Method(StrEnum):
    """
    ways of obtaining the minimizer, used as tag on results and approximations

    - ORACLE : bracketed Newton iteration on the derivative criterion
    - LAGRANGE : partial sum of the Lagrange inversion series
    - HYPERGEOMETRIC : finite sum of generalized hypergeometric functions at unit argument
    - HYPERGEOMETRIC_GROUPED : Lagrange series summed in blocks of m consecutive terms
    - PERTURBATION : partial sum of the perturbation series at epsilon = 1
    - ALGEBRAIC : radicals, only for m = 2 and m = 4
    """
    ORACLE = 'oracle'
    LAGRANGE = 'lagrange'
    HYPERGEOMETRIC = 'hypergeometric'
    HYPERGEOMETRIC_GROUPED = 'hypergeometric_grouped'
    PERTURBATION = 'perturbation'
    ALGEBRAIC = 'algebraic'


class Construction(StrEnum):
    """how perturbation coefficients were obtained"""

    RECURRENCE = 'recurrence'
    CLOSED_FORM = 'closed_form'


class OutputFormat(StrEnum):
    """
    delimited text formats written by the command line

    - CSV : comma separated, header row
    - TSV : tab separated, header row
    - DAT : space separated, header row commented with '#' for plot toolchains
    """
    CSV = 'csv'
    TSV = 'tsv'
    DAT = 'dat'


class ExitCode(IntEnum):
    """process exit codes of the command line"""

    SUCCESS = 0
    USAGE = 2
    CONVERGENCE = 3
    IO = 4


# Logging
class LOGLEVEL(IntEnum):
    """``logging.Logger`` log levels"""
    DEBUG    = logging.DEBUG
    INFO     = logging.INFO
    WARNING  = logging.WARNING
    ERROR    = logging.ERROR
    CRITICAL = logging.CRITICAL



__all__ = [
    Method.__name__,
    Construction.__name__,
    OutputFormat.__name__,
    ExitCode.__name__,
    LOGLEVEL.__name__,
    'DECAY_DIGITS_PER_TERM',
    'BOUND_SCALE',
    'BOUND_OFFSET',
    'MIN_MANTISSA_BITS'
]
