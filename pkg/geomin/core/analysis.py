"""
Error metrics of the series approximations, the sign test counting significant digits and
the truncation order rule n*(q) = max(0, ceil((q - 2)/0.759)).
"""
import math
import typing
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat

import numpy

from .config import global_config
from .constants import BOUND_OFFSET, BOUND_SCALE, DECAY_DIGITS_PER_TERM
from .dataklasses import ConvergenceRecord, SigDigitsRecord
from .exceptions import DomainError, PrecisionError
from .logger import get_logger
from .numerics import PrecisionContext, Real, to_real
from .oracle import solve_oracle
from .polynomial import EvenDegree, eval_g
from .series import lagrange_partial_sum, perturbation_coeffs_closed, perturbation_partial_sum
from .utils import decimal_digits_to_bits, even_range


logger = get_logger('analysis')


def reference_minimizer(m : EvenDegree, ctx : PrecisionContext):
    """oracle minimizer computed ``ORACLE_GUARD_BITS`` above the precision of ``ctx``"""
    return solve_oracle(m, ctx.extended(global_config.ORACLE_GUARD_BITS)).x_m


def _error_records(m : EvenDegree, terms : typing.Sequence, ctx : PrecisionContext, strict : bool
                ) -> typing.List[ConvergenceRecord]:
    x_ref = reference_minimizer(m, ctx)
    reference = x_ref.context
    running = ctx.extended(32).mp.mpf(0)
    floor = ctx.ulp_tolerance(16)
    unresolved = []
    records = []
    for n, term in enumerate(terms):
        running += term
        approx = ctx.mp.mpf(running)
        relative_error = ctx.mp.mpf(abs(reference.mpf(approx) / x_ref - 1))
        if relative_error < floor:
            if strict:
                raise PrecisionError(f"R_{m}({n}) = {ctx.mp.nstr(relative_error, 5)} is below the resolution " +
                        f"2^-{ctx.mantissa_bits - 16} of {ctx.mantissa_bits} bit arithmetic, increase the precision")
            unresolved.append(n)
        records.append(ConvergenceRecord(m=m, n=n, approx=approx, relative_error=relative_error))
    if unresolved:
        logger.warning(f"m = {m}: relative errors for n >= {unresolved[0]} ({len(unresolved)} values) are below " +
                    f"the resolution of {ctx.mantissa_bits} bit arithmetic and only show rounding noise")
    return records


def relative_error_curve(m : EvenDegree, n_max : int, ctx : typing.Optional[PrecisionContext] = None,
                    strict : bool = True) -> typing.List[ConvergenceRecord]:
    """
    R_m(n) = |x_{m,n}/x_m - 1| of the perturbation partial sums for n = 0..n_max. Coefficients are
    computed once, the reference comes from the oracle at ``ORACLE_GUARD_BITS`` extra bits.

    Parameters
    ----------
    m: EvenDegree
        degree
    n_max: int
        highest truncation order
    ctx: PrecisionContext, optional
        precision of the partial sums, ``PrecisionContext.default()`` when not given
    strict: bool, default True
        raise ``PrecisionError`` when an error falls below 2^-(mantissa_bits - 16), log a warning
        and keep the record otherwise

    Returns
    -------
    List[ConvergenceRecord]
        one record per n, ordered by n
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, given {n_max}")
    coefficients = perturbation_coeffs_closed(m, n_max, ctx)
    return _error_records(m, coefficients.a, ctx, strict)


def lagrange_error_curve(m : EvenDegree, n_max : int, ctx : typing.Optional[PrecisionContext] = None,
                    strict : bool = True) -> typing.List[ConvergenceRecord]:
    """
    same as ``relative_error_curve()`` for the partial sums of the Lagrange inversion series
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, given {n_max}")
    approximation = lagrange_partial_sum(m, n_max, ctx)
    return _error_records(m, approximation.terms, ctx, strict)


def n_star(q : int) -> int:
    """
    truncation order max(0, ceil((q - 2)/0.759)) of the perturbation series sufficient for q
    significant digits when m >= 4
    """
    if q < 1:
        raise DomainError(f"requested digits must be positive, given {q}")
    return max(0, math.ceil((q - 2) / DECAY_DIGITS_PER_TERM))


def empirical_bound(n : int, ctx : typing.Optional[PrecisionContext] = None):
    """5 * 10^-(2 + 0.759 n)"""
    ctx = ctx or PrecisionContext.default()
    mp = ctx.mp
    return BOUND_SCALE * mp.power(10, -to_real(BOUND_OFFSET + DECAY_DIGITS_PER_TERM * n, ctx))


def empirical_bound_check(n_max : int, ctx : typing.Optional[PrecisionContext] = None) -> typing.List[bool]:
    """
    whether R_4(n) < 5 * 10^-(2 + 0.759 n) for n = 0..n_max, one value per n.
    Errors below the resolution of ``ctx`` are compared as computed, with a logged warning.
    """
    ctx = ctx or PrecisionContext.default()
    records = relative_error_curve(4, n_max, ctx, strict=False)
    return [bool(record.relative_error < empirical_bound(record.n, ctx)) for record in records]


def significant_digits(m : EvenDegree, approx : Real, p_max : typing.Optional[int] = None,
                    ctx : typing.Optional[PrecisionContext] = None) -> int:
    """
    largest p in [0, p_max] for which approx -/+ 5 * 10^-(p+1) still brackets the root of g_m,
    i.e. g_m(approx - d) g_m(approx + d) <= 0. All p are tried and the last passing one is returned,
    0 when none passes. The test runs with enough bits to resolve d at p = p_max.

    Parameters
    ----------
    m: EvenDegree
        degree
    approx: Real
        approximation of the minimizer in (-1, -1/4)
    p_max: int, optional
        largest number of digits tried, ``SIGNIFICANT_DIGITS_MAX`` when not given
    ctx: PrecisionContext, optional
        precision the test builds upon, at least the precision of ``approx`` is used
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    p_max = p_max if p_max is not None else global_config.SIGNIFICANT_DIGITS_MAX
    if p_max < 1:
        raise DomainError(f"p_max must be positive, given {p_max}")
    approx_bits = getattr(getattr(approx, 'context', None), 'prec', 0)
    work = PrecisionContext(max(ctx.mantissa_bits, approx_bits) + decimal_digits_to_bits(p_max + 2) + 32)
    mp = work.mp
    x = to_real(approx, work)
    if not (x > -1 and 4 * x < -1):
        raise DomainError(f"approximation {mp.nstr(x, 15)} outside the window (-1, -1/4) around the bracket")
    digits = 0
    for p in range(p_max + 1):
        delta = mp.mpf(5) / mp.mpf(10) ** (p + 1)
        if eval_g(m, x - delta) * eval_g(m, x + delta) <= 0:
            digits = p
    return digits


def _sigdigits_record(m : int, q : int, ctx : PrecisionContext, p_max : typing.Optional[int]) -> SigDigitsRecord:
    # module level so that process pools can pickle it
    truncation = n_star(q)
    approx = perturbation_partial_sum(m, truncation, ctx).partial_sum
    return SigDigitsRecord(m=int(m), q=q, n_star=truncation, p=significant_digits(m, approx, p_max, ctx))


def sigdigits_sweep(q : int, m_min : EvenDegree, m_max : EvenDegree, ctx : typing.Optional[PrecisionContext] = None,
                p_max : typing.Optional[int] = None, workers : typing.Optional[int] = None) -> typing.List[SigDigitsRecord]:
    """
    significant digits p of the perturbation partial sum of order n*(q) for every even m in
    [m_min, m_max]. With ``workers`` > 1 the degrees are spread over a process pool,
    records are returned ordered by m either way.

    Parameters
    ----------
    q: int
        requested digits, positive
    m_min: EvenDegree
        first degree, 4 or more when checking p > q
    m_max: EvenDegree
        last degree
    ctx: PrecisionContext, optional
        precision of the partial sums, ``PrecisionContext.default()`` when not given
    p_max: int, optional
        largest number of digits tried, ``SIGNIFICANT_DIGITS_MAX`` when not given
    workers: int, optional
        process count, ``WORKERS`` when not given
    """
    m_min, m_max = EvenDegree(m_min), EvenDegree(m_max)
    n_star(q)
    ctx = ctx or PrecisionContext.default()
    workers = workers or global_config.WORKERS
    degrees = list(even_range(m_min, m_max))
    if workers > 1 and len(degrees) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(_sigdigits_record, degrees, repeat(q), repeat(ctx), repeat(p_max)))
    return [_sigdigits_record(m, q, ctx, p_max) for m in degrees]


def fit_decay_exponent(records : typing.Sequence[ConvergenceRecord]) -> typing.Tuple[float, float]:
    """
    least squares line log10 R = intercept + slope n through the nonzero errors of ``records``,
    a diagnostic for the decay rate of the error (slope near -0.759 for m = 4)

    Returns
    -------
    Tuple[float, float]
        intercept, slope
    """
    points = [(record.n, float(record.relative_error)) for record in records]
    points = [point for point in points if point[1] > 0]
    if len(points) < 2:
        raise DomainError("fitting the decay needs at least two nonzero errors")
    n = numpy.array([point[0] for point in points], dtype=float)
    log_error = numpy.log10(numpy.array([point[1] for point in points], dtype=float))
    slope, intercept = numpy.polyfit(n, log_error, 1)
    return float(intercept), float(slope)



__all__ = [
    reference_minimizer.__name__,
    relative_error_curve.__name__,
    lagrange_error_curve.__name__,
    n_star.__name__,
    empirical_bound.__name__,
    empirical_bound_check.__name__,
    significant_digits.__name__,
    sigdigits_sweep.__name__,
    fit_decay_exponent.__name__
]
