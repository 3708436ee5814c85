"""
command line of the package, ``geomin <subcommand> [options]`` or ``python -m geomin``.

Subcommands:

- minimize : minimizer and minimum of f_m by one method
- table : minimizers and minima for m = 2, 4, ..., m_max from the oracle
- convergence : relative error of the perturbation (and Lagrange) partial sums against n
- sigdigits : significant digits of the perturbation series truncated at n*(q)

Options given after the subcommand take precedence over the same options given before it.
Precision is taken from ``--prec``, then GEOMIN_PREC, then the file named by GEOMIN_CONFIG.
"""
import argparse
import logging
import typing

from ..core.config import global_config
from ..core.constants import ExitCode, LOGLEVEL, Method, OutputFormat
from ..core.exceptions import (ConfigurationError, DomainError, NonConvergenceError, PrecisionError,
                            SeriesOverflowError, UnsupportedDegreeError)
from ..core.numerics import PrecisionContext
from ..core.polynomial import EvenDegree
from ..core.utils import get_default_logger
from .commands import cmd_convergence, cmd_minimize, cmd_sigdigits, cmd_table


def _degree(value : str) -> EvenDegree:
    try:
        return EvenDegree(value)
    except DomainError as ex:
        raise argparse.ArgumentTypeError(str(ex)) from None


def _positive(value : str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, given {value}")
    return number


def _nonnegative(value : str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, given {value}")
    return number


def _add_global_options(parser : argparse.ArgumentParser, default : typing.Any) -> None:
    parser.add_argument('--prec', type=_positive, default=default, metavar='BITS',
                        help='mantissa bits of the working precision')
    parser.add_argument('--log-level', choices=[level.name for level in LOGLEVEL], default=default,
                        help='level of the log messages printed to standard error')
    parser.add_argument('--workers', type=_positive, default=default,
                        help='processes used by the table and sigdigits sweeps')


def _add_output_options(parser : argparse.ArgumentParser) -> None:
    parser.add_argument('--out', default=None, metavar='PATH', help='output file, standard output when omitted')
    parser.add_argument('--format', choices=[fmt.value for fmt in OutputFormat], default=OutputFormat.CSV.value,
                        help='csv, tsv or dat (space separated, header commented with #)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='geomin',
                    description='minimizer of the truncated geometric series f_m(x) = 1 + x + ... + x^m for even m')
    _add_global_options(parser, None)
    # subcommand level options must not overwrite values given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, argparse.SUPPRESS)
    subparsers = parser.add_subparsers(dest='command', required=True)

    minimize = subparsers.add_parser('minimize', parents=[common], help='minimizer of f_m by one method')
    minimize.add_argument('--m', type=_degree, required=True, help='even degree, at least 2')
    minimize.add_argument('--method', choices=[method.value for method in Method], default=Method.ORACLE.value)
    minimize.add_argument('--terms', type=_nonnegative, default=None,
                        help='truncation order of the series methods (lagrange 100, perturbation 60), ' +
                        'number of groups for hypergeometric_grouped (100, at least 1)')
    minimize.add_argument('--digits', type=_positive, default=10, help='decimal places printed')
    minimize.add_argument('--json', action='store_true', help='print the result and its logs as JSON')

    table = subparsers.add_parser('table', parents=[common], help='minimizers and minima for m = 2..m_max')
    table.add_argument('--m-max', type=_degree, required=True)
    table.add_argument('--digits', type=_positive, default=10, help='decimal places, rounded half to even')
    _add_output_options(table)

    convergence = subparsers.add_parser('convergence', parents=[common],
                                    help='relative error of the partial sums against the truncation order')
    convergence.add_argument('--m', type=_degree, nargs='+', required=True)
    convergence.add_argument('--n-max', type=_nonnegative, required=True)
    convergence.add_argument('--lagrange', action='store_true', help='add the error of the Lagrange partial sums')
    convergence.add_argument('--fit', action='store_true', help='print a least squares decay line per m to standard error')
    convergence.add_argument('--strict', action='store_true',
                        help='fail (exit 3) instead of warning when an error is below the working resolution')
    _add_output_options(convergence)

    sigdigits = subparsers.add_parser('sigdigits', parents=[common],
                                    help='significant digits of the perturbation series truncated at n*(q)')
    sigdigits.add_argument('--q', type=_positive, required=True, help='requested significant digits')
    sigdigits.add_argument('--m-max', type=_degree, required=True)
    sigdigits.add_argument('--p-max', type=_positive, default=None, help='largest number of digits tested')
    _add_output_options(sigdigits)
    return parser


def run(args : argparse.Namespace, stream : typing.Optional[typing.TextIO] = None) -> None:
    global_config.load_variables(use_environment=True)
    get_default_logger('geomin', LOGLEVEL[args.log_level or global_config.LOG_LEVEL].value)
    ctx = PrecisionContext(mantissa_bits=args.prec or global_config.PRECISION_BITS,
                        max_series_terms=global_config.MAX_SERIES_TERMS)
    if args.command == 'minimize':
        cmd_minimize(args.m, Method(args.method), ctx, terms=args.terms, digits=args.digits,
                    as_json=args.json, stream=stream)
    elif args.command == 'table':
        cmd_table(args.m_max, args.digits, ctx, format=OutputFormat(args.format), out_path=args.out,
                workers=args.workers, stream=stream)
    elif args.command == 'convergence':
        cmd_convergence(args.m, args.n_max, ctx, format=OutputFormat(args.format), out_path=args.out,
                    lagrange=args.lagrange, fit=args.fit, strict=args.strict, stream=stream)
    elif args.command == 'sigdigits':
        cmd_sigdigits(args.q, args.m_max, ctx, format=OutputFormat(args.format), out_path=args.out,
                    p_max=args.p_max, workers=args.workers, stream=stream)


def main(argv : typing.Optional[typing.Sequence[str]] = None, stream : typing.Optional[typing.TextIO] = None) -> int:
    """
    runs the command line and returns the exit code: 0 on success, 2 on invalid arguments,
    3 on nonconvergence or insufficient precision, 4 when a file cannot be read or written
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else ExitCode.USAGE.value
    logger = logging.getLogger('geomin')
    try:
        run(args, stream)
    except (DomainError, UnsupportedDegreeError, ConfigurationError) as ex:
        logger.error(str(ex))
        return ExitCode.USAGE.value
    except (NonConvergenceError, PrecisionError, SeriesOverflowError) as ex:
        logger.error(str(ex))
        return ExitCode.CONVERGENCE.value
    except OSError as ex:
        logger.error(f"cannot access {ex.filename or args.out}: {ex.strerror or ex}")
        return ExitCode.IO.value
    return ExitCode.SUCCESS.value



__all__ = [
    main.__name__,
    build_parser.__name__
]
