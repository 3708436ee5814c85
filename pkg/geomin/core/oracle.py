"""
Reference values of the minimizer: bracketed Newton iteration on g_m and the radical
expressions for m = 2 and m = 4. Every series method is tested against these.
"""
import typing

from .constants import Method
from .dataklasses import MinimizerResult, SeriesApproximation
from .exceptions import NonConvergenceError, UnsupportedDegreeError
from .logger import get_logger
from .numerics import PrecisionContext, to_real
from .polynomial import (EvenDegree, eval_f, eval_g, eval_gp, min_value_from_minimizer,
                        unperturbed_root)


logger = get_logger('oracle')


def _in_bracket(x) -> bool:
    return x >= -1 and 2 * x <= -1


def make_result(m : EvenDegree, x, method : Method, ctx : PrecisionContext, error_estimate = 0,
                n_terms : typing.Optional[int] = None) -> MinimizerResult:
    """
    packs a minimizer (or an approximation of it) rounded to ``ctx`` into a ``MinimizerResult``.
    f_min uses (1 + m)/(1 + m (1 - x)) inside [-1, -1/2] and f_m(x) outside, where low order
    truncations of the series can land.
    """
    m = EvenDegree(m)
    mp = ctx.mp
    x = to_real(x, ctx)
    if _in_bracket(x):
        f_min = min_value_from_minimizer(m, x)
    else:
        f_min = eval_f(m, x)
    return MinimizerResult(
        m=m,
        x_m=x,
        f_min=f_min,
        method=method,
        precision_bits=ctx.mantissa_bits,
        error_estimate=abs(to_real(error_estimate, ctx)),
        residual=abs(eval_g(m, x)),
        n_terms=n_terms
    )


def result_from_series(approx : SeriesApproximation, ctx : typing.Optional[PrecisionContext] = None) -> MinimizerResult:
    """
    ``MinimizerResult`` of a series partial sum, with the magnitude of the last addend as error estimate
    """
    ctx = ctx or PrecisionContext.default()
    return make_result(approx.m, approx.partial_sum, approx.method, ctx,
                    error_estimate=abs(approx.last_term), n_terms=approx.n_terms)


def solve_oracle(m : EvenDegree, ctx : typing.Optional[PrecisionContext] = None) -> MinimizerResult:
    """
    minimizer as the root of g_m in [-1, -1/2] by Newton iteration started at the zeroth perturbation
    coefficient -(1 + 2m)^(-1/m), clamped into the bracket. Any Newton step leaving the current
    bracket is replaced by bisection. g_m is increasing for x < 0 with g_m(-1) = -2m < 0, so
    the sign of g_m at each iterate tells which side of the bracket to move.

    Parameters
    ----------
    m: EvenDegree
        degree
    ctx: PrecisionContext, optional
        precision of the result, ``PrecisionContext.default()`` when not given

    Returns
    -------
    MinimizerResult
        x_m within 2^-(mantissa_bits - 8) of the root, f_min from the minimizer formula

    Raises
    ------
    NonConvergenceError
        no convergence within 4 * mantissa_bits steps
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    work = ctx.extended(16)
    mp = work.mp
    tolerance_bits = ctx.mantissa_bits - 4
    low, high = mp.mpf(-1), mp.mpf(-0.5)
    if eval_g(m, high) == 0:
        logger.debug(f"m = {m}: root found at the upper bracket end")
        return make_result(m, high, Method.ORACLE, ctx)
    x = min(max(unperturbed_root(m, work), low), high)
    step = mp.mpf(0)
    bisections = 0
    for iteration in range(4 * ctx.mantissa_bits):
        gx = eval_g(m, x)
        if gx == 0:
            step = mp.mpf(0)
            break
        if gx < 0:
            low = x
        else:
            high = x
        candidate = x - gx / eval_gp(m, x)
        if not low < candidate < high:
            candidate = (low + high) / 2
            bisections += 1
        step = abs(candidate - x)
        x = candidate
        tolerance = mp.ldexp(max(mp.mpf(1), abs(x)), -tolerance_bits)
        if step <= tolerance or high - low <= tolerance:
            break
    else:
        raise NonConvergenceError(f"oracle for m = {m} did not converge within {4 * ctx.mantissa_bits} steps, " +
                            f"last step {mp.nstr(step, 5)}")
    logger.debug(f"m = {m}: oracle converged after {iteration + 1} steps ({bisections} bisections)")
    newton_distance = abs(eval_g(m, x) / eval_gp(m, x))
    return make_result(m, x, Method.ORACLE, ctx, error_estimate=max(step, newton_distance))


def solve_algebraic(m : EvenDegree, ctx : typing.Optional[PrecisionContext] = None) -> MinimizerResult:
    """
    minimizer in radicals, x_2 = -1/2 and
    x_4 = -(1 + (5/9)^(1/3) ((9 + 4 sqrt 6)^(1/3) - (4 sqrt 6 - 9)^(1/3)))/4

    Raises
    ------
    UnsupportedDegreeError
        m >= 6, no general solution in radicals exists
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    mp = ctx.extended(16).mp
    if m == 2:
        x = mp.mpf(-0.5)
    elif m == 4:
        root6 = 4 * mp.sqrt(6)
        x = -(1 + mp.cbrt(mp.mpf(5) / 9) * (mp.cbrt(9 + root6) - mp.cbrt(root6 - 9))) / 4
    else:
        raise UnsupportedDegreeError(f"minimizer in radicals only available for m = 2 and m = 4, given m = {m}")
    return make_result(m, x, Method.ALGEBRAIC, ctx)



__all__ = [
    make_result.__name__,
    result_from_series.__name__,
    solve_oracle.__name__,
    solve_algebraic.__name__
]
