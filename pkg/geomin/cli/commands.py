import sys
import typing
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import repeat

from ..core.analysis import fit_decay_exponent, lagrange_error_curve, relative_error_curve, sigdigits_sweep
from ..core.config import global_config
from ..core.constants import Method, OutputFormat
from ..core.dataklasses import MinimizerResult
from ..core.exceptions import DomainError
from ..core.logger import capture_logs, get_logger
from ..core.numerics import PrecisionContext
from ..core.oracle import result_from_series, solve_algebraic, solve_oracle
from ..core.polynomial import EvenDegree
from ..core.serializers import JSONSerializer
from ..core.series import (grouped_lagrange_partial_sum, hypergeometric_closed_form, lagrange_partial_sum,
                        perturbation_partial_sum)
from ..core.utils import decimal_digits_to_bits, even_range
from .output import OutputTable, fixed, scientific


logger = get_logger('cli')

default_terms = {
    Method.LAGRANGE : 100,
    Method.HYPERGEOMETRIC_GROUPED : 100,
    Method.PERTURBATION : 60
}


def minimize(m : EvenDegree, method : Method, ctx : PrecisionContext, terms : typing.Optional[int] = None) -> MinimizerResult:
    """minimizer of f_m by ``method``, ``terms`` is the truncation order of the series methods"""
    method = Method(method)
    if method == Method.ORACLE:
        return solve_oracle(m, ctx)
    if method == Method.ALGEBRAIC:
        return solve_algebraic(m, ctx)
    if method == Method.HYPERGEOMETRIC:
        return hypergeometric_closed_form(m, ctx)
    if terms is None:
        terms = default_terms[method]
    if method == Method.LAGRANGE:
        return result_from_series(lagrange_partial_sum(m, terms, ctx), ctx)
    if method == Method.HYPERGEOMETRIC_GROUPED:
        return result_from_series(grouped_lagrange_partial_sum(m, terms, ctx), ctx)
    return result_from_series(perturbation_partial_sum(m, terms, ctx), ctx)


def cmd_minimize(m : EvenDegree, method : Method, ctx : PrecisionContext, terms : typing.Optional[int] = None,
                digits : int = 10, as_json : bool = False, stream : typing.Optional[typing.TextIO] = None) -> MinimizerResult:
    """
    prints the minimizer, the minimum, the method, the residual |g_m(x_m)| and for series methods the
    number of addends. With ``as_json`` the result and the logs of the solve are printed as one JSON object.
    """
    stream = stream or sys.stdout
    with capture_logs() as records:
        result = minimize(m, method, ctx, terms)
    if as_json:
        payload = dict(result=result.json(), logs=records)
        stream.write(JSONSerializer().dumps(payload).decode('utf-8') + '\n')
        return result
    lines = [
        ('m', str(int(result.m))),
        ('method', result.method.value),
        ('x_m', fixed(result.x_m, digits)),
        ('f_min', fixed(result.f_min, digits)),
        ('residual', scientific(result.residual, 3)),
        ('terms', str(result.n_terms) if result.n_terms is not None else '-')
    ]
    for name, value in lines:
        stream.write(f"{name:<9} {value}\n")
    return result


def _table_row(m : int, ctx : PrecisionContext, digits : int) -> typing.Tuple[str, str, str]:
    # module level so that process pools can pickle it
    result = solve_oracle(m, ctx)
    return (str(int(m)), fixed(result.x_m, digits), fixed(result.f_min, digits))


def cmd_table(m_max : EvenDegree, digits : int, ctx : PrecisionContext, format : OutputFormat = OutputFormat.CSV,
            out_path : typing.Optional[str] = None, workers : typing.Optional[int] = None,
            stream : typing.Optional[typing.TextIO] = None) -> OutputTable:
    """
    rows (m, x_m, f_min) for m = 2, 4, ..., m_max from the oracle and a last row for the limit
    m -> infinity encoded with m = inf, (-1, 1/2). The oracle runs with at least enough bits for
    ``digits`` + ``TABLE_GUARD_DIGITS`` decimal digits.
    """
    m_max = EvenDegree(m_max)
    if digits < 1:
        raise DomainError(f"digits must be positive, given {digits}")
    workers = workers or global_config.WORKERS
    bits = max(ctx.mantissa_bits, decimal_digits_to_bits(digits + global_config.TABLE_GUARD_DIGITS) + 16)
    table_ctx = PrecisionContext(mantissa_bits=bits, max_series_terms=ctx.max_series_terms)
    degrees = list(even_range(2, m_max))
    if workers > 1 and len(degrees) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(_table_row, degrees, repeat(table_ctx), repeat(digits)))
    else:
        rows = [_table_row(m, table_ctx, digits) for m in degrees]
    rows.append(('inf', fixed(Fraction(-1), digits), fixed(Fraction(1, 2), digits)))
    table = OutputTable(header=('m', 'x_m', 'f_min'), rows=rows, digits=digits, format=OutputFormat(format))
    table.write(out_path, stream)
    return table


def cmd_convergence(m_list : typing.Sequence[EvenDegree], n_max : int, ctx : PrecisionContext,
                format : OutputFormat = OutputFormat.CSV, out_path : typing.Optional[str] = None,
                lagrange : bool = False, fit : bool = False, strict : bool = False,
                stream : typing.Optional[typing.TextIO] = None,
                diagnostics : typing.Optional[typing.TextIO] = None) -> OutputTable:
    """
    rows (m, n, R_m(n)) of the perturbation series for n = 0..n_max and every m, with a second error
    column for the Lagrange series when ``lagrange`` is set. ``fit`` prints the least squares decay
    line of each perturbation curve to ``diagnostics`` (standard error by default).
    """
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, given {n_max}")
    header = ('m', 'n', 'perturbation') + (('lagrange',) if lagrange else ())
    rows = []
    for m in m_list:
        m = EvenDegree(m)
        curve = relative_error_curve(m, n_max, ctx, strict=strict)
        columns = [[scientific(record.relative_error) for record in curve]]
        if lagrange:
            columns.append([scientific(record.relative_error) for record in lagrange_error_curve(m, n_max, ctx, strict=strict)])
        for n in range(n_max + 1):
            rows.append((str(int(m)), str(n)) + tuple(column[n] for column in columns))
        if fit and n_max >= 1:
            intercept, slope = fit_decay_exponent(curve)
            (diagnostics or sys.stderr).write(f"# m = {int(m)}: log10 R = {intercept:.4f} + ({slope:.4f}) n\n")
    table = OutputTable(header=header, rows=rows, format=OutputFormat(format))
    table.write(out_path, stream)
    return table


def cmd_sigdigits(q : int, m_max : EvenDegree, ctx : PrecisionContext, format : OutputFormat = OutputFormat.CSV,
                out_path : typing.Optional[str] = None, p_max : typing.Optional[int] = None,
                workers : typing.Optional[int] = None, stream : typing.Optional[typing.TextIO] = None) -> OutputTable:
    """
    rows (m, n*, p) for m = 4, 6, ..., m_max, p the significant digits of the perturbation partial
    sum of order n*(q)
    """
    m_max = EvenDegree(m_max)
    if m_max < 4:
        raise DomainError(f"significant digits sweep starts at m = 4, m_max must be at least 4, given {m_max}")
    records = sigdigits_sweep(q, 4, m_max, ctx, p_max=p_max, workers=workers)
    rows = [(str(record.m), str(record.n_star), str(record.p)) for record in records]
    table = OutputTable(header=('m', 'n_star', 'p'), rows=rows, format=OutputFormat(format))
    table.write(out_path, stream)
    return table



__all__ = [
    minimize.__name__,
    cmd_minimize.__name__,
    cmd_table.__name__,
    cmd_convergence.__name__,
    cmd_sigdigits.__name__
]
