"""
Series and closed-form representations of the minimizer:

- the Lagrange inversion series
  x_m = -((1+m)^(-1/m)/m) sum_k gamma(((m+1)k+1)/m)/gamma((m+k+1)/m) z^k/k!, z = -m (1+m)^(-(m+1)/m),
  summed term by term or in blocks of m consecutive terms,
- the finite sum of m generalized hypergeometric functions at unit argument obtained by summing
  each residue class of that series separately,
- the perturbation series sum_k a_k e^k of the root of g_{m,e} at e = 1, with its coefficients built
  either in closed form or by solving the order-by-order equations (1+2m) c_{k,m} = m (c_{k-1,m} + c_{k-1,m+1}).
"""
import math
import typing
from fractions import Fraction

from .constants import Method, Construction
from .dataklasses import MinimizerResult, PerturbationCoefficients, PowerSeriesCoeffs, SeriesApproximation
from .exceptions import DomainError, NonConvergenceError, SeriesOverflowError
from .logger import get_logger
from .numerics import (PrecisionContext, Real, gamma, k_pochhammer, next_power_coefficient, pfq,
                        rising_factorial, to_real)
from .oracle import make_result
from .polynomial import EvenDegree, unperturbed_root


logger = get_logger('series')


# ---------------------------------------------------------------------------------------------
# Lagrange inversion series
# ---------------------------------------------------------------------------------------------

def _lagrange_terms(m : EvenDegree, count : int, work : PrecisionContext) -> typing.List:
    """first ``count`` addends of the Lagrange series in ``work``"""
    if count > work.max_series_terms:
        raise NonConvergenceError(f"{count} Lagrange terms requested, more than max_series_terms = {work.max_series_terms}")
    mp = work.mp
    scale = 1 / mp.root(mp.mpf(1 + m), m)
    prefactor = -scale / m
    z = -m * scale ** (m + 1)
    z_m = z ** m
    terms = []
    for k in range(min(m, count)):
        upper = Fraction((m + 1) * k + 1, m)
        lower = Fraction(m + k + 1, m)
        terms.append(prefactor * gamma(upper, work) / gamma(lower, work) * z ** k / math.factorial(k))
    # along a residue class mod m: gamma(A + m + 1)/gamma(A) = (A)_{m+1}, gamma(B + 1)/gamma(B) = B
    for k in range(m, count):
        j = k - m
        upper = Fraction((m + 1) * j + 1, m)
        lower = Fraction(m + j + 1, m)
        ratio = rising_factorial(upper, m + 1) / (lower * rising_factorial(j + 1, m))
        term = terms[j] * to_real(ratio, work) * z_m
        if not mp.isfinite(term):
            raise SeriesOverflowError(f"Lagrange term {k} for m = {m} is no longer finite")
        terms.append(term)
    return terms


def lagrange_partial_sum(m : EvenDegree, n : int, ctx : typing.Optional[PrecisionContext] = None) -> SeriesApproximation:
    """
    sum of the addends 0..n of the Lagrange inversion series. The first m addends come from gamma
    ratios, later ones are stepped along their residue class mod m with exact rational factors.
    Terms decay only like k^(-3/2), at m = 2 the partial sum of order 99 is off by about 2.3e-4.

    Parameters
    ----------
    m: EvenDegree
        degree
    n: int
        truncation order, nonnegative
    ctx: PrecisionContext, optional
        precision of the result, ``PrecisionContext.default()`` when not given
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    if n < 0:
        raise DomainError(f"truncation order must be nonnegative, given {n}")
    work = ctx.extended(32 + (n + 1).bit_length())
    terms = _lagrange_terms(m, n + 1, work)
    return SeriesApproximation(
        m=m,
        method=Method.LAGRANGE,
        n_terms=len(terms),
        partial_sum=ctx.mp.mpf(work.mp.fsum(terms)),
        terms=tuple(ctx.mp.mpf(term) for term in terms)
    )


def grouped_lagrange_partial_sum(m : EvenDegree, n_groups : int,
                            ctx : typing.Optional[PrecisionContext] = None) -> SeriesApproximation:
    """
    Lagrange series summed in ``n_groups`` blocks of m consecutive addends, one addend of every
    residue class per block. This is the arrangement that splits into the m hypergeometric
    functions of ``hypergeometric_closed_form()``, its partial sums approach that value.
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    if n_groups < 1:
        raise DomainError(f"at least one group is needed, given {n_groups}")
    work = ctx.extended(32 + (n_groups * m).bit_length())
    terms = _lagrange_terms(m, n_groups * m, work)
    groups = [work.mp.fsum(terms[start:start + m]) for start in range(0, len(terms), m)]
    return SeriesApproximation(
        m=m,
        method=Method.HYPERGEOMETRIC_GROUPED,
        n_terms=len(groups),
        partial_sum=ctx.mp.mpf(work.mp.fsum(groups)),
        terms=tuple(ctx.mp.mpf(group) for group in groups)
    )


# ---------------------------------------------------------------------------------------------
# hypergeometric closed form
# ---------------------------------------------------------------------------------------------

def hypergeometric_parameters(m : EvenDegree, k : int) -> typing.Tuple[typing.List[Fraction], typing.List[Fraction]]:
    """
    exact top and bottom parameters of the k-th hypergeometric function, 1 <= k <= m,
    top {1} + {k/m + (l-1)/(m+1)}_{l=0..m}, bottom {(m+k)/m} + {(k+l)/m}_{l=0..m-1}
    """
    top = [Fraction(1)] + [Fraction(k, m) + Fraction(l - 1, m + 1) for l in range(m + 1)]
    bottom = [Fraction(m + k, m)] + [Fraction(k + l, m) for l in range(m)]
    return top, bottom


def hypergeometric_prefactor(m : EvenDegree, k : int, ctx : PrecisionContext):
    """
    (-m)^(k-2) (1+m)^(1-(m+1)k/m) gamma((m+1)k/m - 1)/(gamma((m+k)/m) gamma(k)),
    the signed power taken exactly as a rational
    """
    mp = ctx.mp
    exponent = Fraction((m + 1) * k, m) - 1
    sign_power = Fraction(-m) ** (k - 2)
    return (to_real(sign_power, ctx) / mp.power(1 + m, to_real(exponent, ctx)) * gamma(exponent, ctx) /
                (gamma(Fraction(m + k, m), ctx) * math.factorial(k - 1)))


def hypergeometric_closed_form(m : EvenDegree, ctx : typing.Optional[PrecisionContext] = None) -> MinimizerResult:
    """
    minimizer as the finite sum over k = 1..m of prefactor times a (m+2)F(m+1) function at unit
    argument. Every function has sum(bottom) - sum(top) = 1/2, so all of them converge.
    At m = 2 the two functions reduce to 2F1(1/6, 5/6; 3/2; 1) and 3F2(1, 2/3, 4/3; 2, 3/2; 1).

    Parameters
    ----------
    m: EvenDegree
        degree
    ctx: PrecisionContext, optional
        precision of the result, ``PrecisionContext.default()`` when not given

    Returns
    -------
    MinimizerResult
        method hypergeometric, error estimate term_epsilon times the sum of |addends|
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    work = ctx.extended(32)
    mp = work.mp
    addends = []
    for k in range(1, m + 1):
        prefactor = hypergeometric_prefactor(m, k, work)
        if prefactor == 0 or not mp.isfinite(prefactor):
            logger.warning(f"m = {m}: prefactor of hypergeometric term k = {k} is {mp.nstr(prefactor, 5)} " +
                        f"at {work.mantissa_bits} bits")
        top, bottom = hypergeometric_parameters(m, k)
        addends.append(prefactor * pfq(top, bottom, 1, work))
    error_estimate = ctx.epsilon * sum(abs(addend) for addend in addends)
    return make_result(m, mp.fsum(addends), Method.HYPERGEOMETRIC, ctx, error_estimate=error_estimate)


# ---------------------------------------------------------------------------------------------
# perturbation series
# ---------------------------------------------------------------------------------------------

def _coefficient_context(ctx : PrecisionContext, n : int) -> PrecisionContext:
    # closed form l-sums alternate in sign and lose a few bits per order
    return ctx.extended(32 + 8 * n)


def perturbation_coeffs_closed(m : EvenDegree, n : int, ctx : typing.Optional[PrecisionContext] = None) -> PerturbationCoefficients:
    """
    a_0 = -(1+2m)^(-1/m) and for k >= 1
    a_k = sum_{l=0}^{k} (l+m+1)_{k-1,m}/(l! (k-l)!) a_0^(mk+l+1)
    with the Pochhammer k-symbol of step m. The powers of a_0 are carried along incrementally,
    a_0^m = 1/(1+2m) per order and a_0 per l-step.

    Parameters
    ----------
    m: EvenDegree
        degree
    n: int
        highest order, nonnegative
    ctx: PrecisionContext, optional
        precision of the coefficients, ``PrecisionContext.default()`` when not given
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    if n < 0:
        raise DomainError(f"coefficient order must be nonnegative, given {n}")
    work = _coefficient_context(ctx, n)
    mp = work.mp
    a0 = unperturbed_root(m, work)
    a0_to_m = mp.mpf(1) / (1 + 2 * m)
    a = [a0]
    leading_power = a0 * a0_to_m # a_0^(mk+1) at k = 1
    for k in range(1, n + 1):
        total = mp.mpf(0)
        power = leading_power
        for l in range(k + 1):
            weight = Fraction(k_pochhammer(l + m + 1, k - 1, m), math.factorial(l) * math.factorial(k - l))
            total += to_real(weight, work) * power
            power *= a0
        a.append(total)
        leading_power *= a0_to_m
    return PerturbationCoefficients(m=m, a=tuple(ctx.mp.mpf(value) for value in a),
                                construction=Construction.CLOSED_FORM, precision_bits=ctx.mantissa_bits)


def _solve_order_by_order(m : EvenDegree, n : int, work : PrecisionContext):
    mp = work.mp
    a0 = unperturbed_root(m, work)
    if a0 == 0:
        raise DomainError("zeroth perturbation coefficient vanished")
    # c_{k,m} = m a_0^(m-1) a_k + (terms in a_1..a_{k-1})
    slope = m * a0 ** (m - 1)
    a = [a0]
    c_m = [a0 ** m]
    c_m1 = [a0 ** (m + 1)]
    for k in range(1, n + 1):
        a.append(mp.mpf(0))
        remainder = next_power_coefficient(a, c_m, m, k)
        target = m * (c_m[k - 1] + c_m1[k - 1]) / (1 + 2 * m)
        a[k] = (target - remainder) / slope
        c_m.append(next_power_coefficient(a, c_m, m, k))
        c_m1.append(next_power_coefficient(a, c_m1, m + 1, k))
    return a, c_m, c_m1


def perturbation_coeffs_recurrence(m : EvenDegree, n : int, ctx : typing.Optional[PrecisionContext] = None) -> PerturbationCoefficients:
    """
    coefficients from the equations (1+2m) c_{k,m} = m (c_{k-1,m} + c_{k-1,m+1}) obtained by
    collecting powers of e in g_{m,e}(sum_k a_k e^k) = 0. Each equation is linear in a_k:
    c_{k,m} = m a_0^(m-1) a_k + r_k where r_k is c_{k,m} evaluated with a_k set to zero.
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    if n < 0:
        raise DomainError(f"coefficient order must be nonnegative, given {n}")
    a, _, _ = _solve_order_by_order(m, n, _coefficient_context(ctx, n))
    return PerturbationCoefficients(m=m, a=tuple(ctx.mp.mpf(value) for value in a),
                                construction=Construction.RECURRENCE, precision_bits=ctx.mantissa_bits)


def perturbation_power_table(m : EvenDegree, n : int, ctx : typing.Optional[PrecisionContext] = None) -> PowerSeriesCoeffs:
    """
    c_{k,p} for p = m and p = m + 1, k = 0..n, as produced while solving for the coefficients
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    _, c_m, c_m1 = _solve_order_by_order(m, n, _coefficient_context(ctx, n))
    mp = ctx.mp
    return PowerSeriesCoeffs(m=m, powers=(int(m), int(m) + 1),
                        table=tuple((mp.mpf(first), mp.mpf(second)) for first, second in zip(c_m, c_m1)))


def perturbation_partial_sum(m : EvenDegree, n : int, ctx : typing.Optional[PrecisionContext] = None,
                        epsilon : Real = 1, coefficients : typing.Optional[PerturbationCoefficients] = None
                    ) -> SeriesApproximation:
    """
    x_{m,n} = sum_{k=0}^{n} a_k e^k with closed form coefficients, at e = 1 an approximation of
    the minimizer and at other e of the root of g_{m,e}.

    Parameters
    ----------
    m: EvenDegree
        degree
    n: int
        truncation order, nonnegative
    ctx: PrecisionContext, optional
        precision of the result, ``PrecisionContext.default()`` when not given
    epsilon: Real, default 1
        deformation parameter
    coefficients: PerturbationCoefficients, optional
        coefficients of order at least n computed before, reused instead of being recomputed
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    if n < 0:
        raise DomainError(f"truncation order must be nonnegative, given {n}")
    if coefficients is None or coefficients.order < n or coefficients.m != m:
        coefficients = perturbation_coeffs_closed(m, n, ctx)
    mp = ctx.mp
    if epsilon == 1:
        terms = [mp.mpf(value) for value in coefficients.a[:n + 1]]
    else:
        epsilon = to_real(epsilon, ctx)
        terms = [mp.mpf(value) * epsilon ** k for k, value in enumerate(coefficients.a[:n + 1])]
    return SeriesApproximation(
        m=m,
        method=Method.PERTURBATION,
        n_terms=len(terms),
        partial_sum=mp.fsum(terms),
        terms=tuple(terms)
    )



__all__ = [
    lagrange_partial_sum.__name__,
    grouped_lagrange_partial_sum.__name__,
    hypergeometric_parameters.__name__,
    hypergeometric_prefactor.__name__,
    hypergeometric_closed_form.__name__,
    perturbation_coeffs_closed.__name__,
    perturbation_coeffs_recurrence.__name__,
    perturbation_power_table.__name__,
    perturbation_partial_sum.__name__
]
