"""
Precision configurable real arithmetic and the special functions used by the series methods.

Every extended precision value belongs to the ``mpmath`` context of a ``PrecisionContext``. Contexts
are cached per bit count and never have their precision changed after creation, wider working
precision is obtained by deriving another ``PrecisionContext`` through ``extended()``.
The exact helpers (rising and falling factorials, Pochhammer k-symbol, partial Bell polynomials,
power series coefficients) are generic and also accept ``int`` and ``fractions.Fraction``.
"""
import functools
import math
import platform
import typing
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath.libmp import NoConvergence

from .constants import MIN_MANTISSA_BITS
from .config import global_config
from .exceptions import DomainError, DimensionError, NonConvergenceError, SeriesOverflowError
from .logger import get_logger


logger = get_logger('numerics')

# extended precision real of some PrecisionContext, or an exact rational
Real = typing.Union[int, Fraction, "mpmath.mpf"]


@functools.lru_cache(maxsize=64)
def _mp_context(mantissa_bits : int) -> mpmath.MPContext:
    context = mpmath.MPContext()
    context.prec = mantissa_bits
    return context


__dataclass_kwargs = dict(frozen=True)
if float('.'.join(platform.python_version().split('.')[0:2])) >= 3.11:
    __dataclass_kwargs["slots"] = True

@dataclass(**__dataclass_kwargs)
class PrecisionContext:
    """
    Governs the mantissa bits of all real arithmetic and the termination of series.
    Instances are immutable, hashable and picklable, so they can be handed to worker processes.

    Attributes
    ----------
    mantissa_bits: int, default 256
        binary precision of all reals, at least 64
    max_series_terms: int, default 10000
        cap on the number of terms any series may sum before raising ``NonConvergenceError``
    term_epsilon: float, optional
        relative tail termination threshold, 8 * 2^-mantissa_bits when not given
    """
    mantissa_bits : int = 256
    max_series_terms : int = 10000
    term_epsilon : typing.Optional[float] = None

    def __post_init__(self):
        if isinstance(self.mantissa_bits, bool) or not isinstance(self.mantissa_bits, int):
            raise DomainError(f"mantissa_bits must be an integer, given {self.mantissa_bits!r}")
        if self.mantissa_bits < MIN_MANTISSA_BITS:
            raise DomainError(f"mantissa_bits must be at least {MIN_MANTISSA_BITS}, given {self.mantissa_bits}")
        if not isinstance(self.max_series_terms, int) or self.max_series_terms < 1:
            raise DomainError(f"max_series_terms must be a positive integer, given {self.max_series_terms!r}")
        if self.term_epsilon is not None and not self.term_epsilon > 0:
            raise DomainError(f"term_epsilon must be positive, given {self.term_epsilon!r}")

    @classmethod
    def default(cls) -> "PrecisionContext":
        """context built from ``global_config``"""
        return cls(mantissa_bits=global_config.PRECISION_BITS,
                max_series_terms=global_config.MAX_SERIES_TERMS)

    @property
    def mp(self) -> mpmath.MPContext:
        """the ``mpmath`` context working at ``mantissa_bits``, shared by equal contexts and never mutated"""
        return _mp_context(self.mantissa_bits)

    @property
    def epsilon(self):
        """relative tail termination threshold as a real of this context"""
        if self.term_epsilon is None:
            return self.mp.ldexp(self.mp.mpf(8), -self.mantissa_bits)
        return self.mp.mpf(self.term_epsilon)

    def ulp_tolerance(self, lost_bits : int):
        """2^-(mantissa_bits - lost_bits), the tolerances stated throughout as 'to working precision'"""
        return self.mp.ldexp(self.mp.mpf(1), -(self.mantissa_bits - lost_bits))

    def extended(self, extra_bits : int) -> "PrecisionContext":
        """a context with ``extra_bits`` more mantissa bits and the same term cap"""
        return PrecisionContext(mantissa_bits=self.mantissa_bits + extra_bits,
                    max_series_terms=self.max_series_terms)

    def json(self) -> typing.Dict[str, typing.Any]:
        return dict(mantissa_bits=self.mantissa_bits, max_series_terms=self.max_series_terms,
                    term_epsilon=self.term_epsilon)


def to_real(value : typing.Any, ctx : PrecisionContext):
    """
    convert an int, str, float, ``Fraction`` or a real of any context to a real of ``ctx``.
    Fractions are divided at the precision of ``ctx`` so that 1/3 is not first rounded to a float.
    """
    mp = ctx.mp
    if isinstance(value, Rational) and not isinstance(value, int):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


def _is_exact(value) -> bool:
    return isinstance(value, Rational)


def _is_nonpositive_integer(value, mp) -> bool:
    if _is_exact(value):
        return value <= 0 and value == int(value)
    return value <= 0 and mp.isint(value)


# ---------------------------------------------------------------------------------------------
# gamma function
# ---------------------------------------------------------------------------------------------

def _stirling_threshold(mantissa_bits : int) -> int:
    # smallest term of the asymptotic series is about exp(-2 pi x)
    return int(0.12 * mantissa_bits) + 8


def _stirling_series(x, mp):
    """log gamma(x) by the asymptotic series, x above the Stirling threshold"""
    total = (x - mp.mpf(0.5)) * mp.log(x) - x + mp.log(2 * mp.pi) / 2
    eps = mp.ldexp(mp.mpf(1), -mp.prec)
    x_squared = x * x
    x_power = x
    previous = None
    for j in range(1, mp.prec + 1):
        term = mp.bernoulli(2 * j) / ((2 * j) * (2 * j - 1) * x_power)
        if previous is not None and abs(term) > abs(previous):
            # asymptotic series started growing before reaching the tolerance
            raise NonConvergenceError(f"Stirling series diverged at x = {mp.nstr(x, 10)} after {j} terms")
        total += term
        if abs(term) <= eps * abs(total):
            return total
        previous = term
        x_power *= x_squared
    raise NonConvergenceError(f"Stirling series did not reach working precision at x = {mp.nstr(x, 10)}")


def log_gamma(s : Real, ctx : PrecisionContext):
    """
    natural logarithm of the gamma function for s > 0. The argument is shifted upward until it
    exceeds a threshold proportional to the working precision, the asymptotic Stirling series
    with Bernoulli number coefficients is summed there, and the shift is divided back out
    through a rising factorial.

    Parameters
    ----------
    s: Real
        positive argument
    ctx: PrecisionContext
        precision of the result

    Returns
    -------
    Real
        log gamma(s) in ``ctx``
    """
    work = ctx.extended(32)
    mp = work.mp
    x = to_real(s, work)
    if not x > 0:
        raise DomainError(f"gamma is only defined here for positive arguments, given {ctx.mp.nstr(x, 15)}")
    threshold = _stirling_threshold(work.mantissa_bits)
    if x >= threshold:
        return ctx.mp.mpf(_stirling_series(x, mp))
    shift = int(math.ceil(threshold - x))
    shifted = _stirling_series(x + shift, mp)
    return ctx.mp.mpf(shifted - mp.log(rising_factorial(x, shift)))


def gamma(s : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    gamma function for s > 0 with relative error below 2^-(mantissa_bits - 8)

    Parameters
    ----------
    s: Real
        positive argument
    ctx: PrecisionContext, optional
        precision of the result, ``PrecisionContext.default()`` when not given

    Returns
    -------
    Real
        gamma(s) in ``ctx``
    """
    ctx = ctx or PrecisionContext.default()
    if not to_real(s, ctx) > 0:
        raise DomainError(f"gamma is only defined here for positive arguments, given {s}")
    try:
        estimate = abs(math.lgamma(float(s)))
    except OverflowError:
        raise SeriesOverflowError(f"gamma argument {s} too large") from None
    # exp() turns absolute error of log gamma into relative error of gamma
    work = ctx.extended(32 + int(estimate).bit_length())
    return ctx.mp.mpf(work.mp.exp(log_gamma(s, work)))


# ---------------------------------------------------------------------------------------------
# factorial like products
# ---------------------------------------------------------------------------------------------

def rising_factorial(s : Real, n : int) -> Real:
    """
    Pochhammer symbol (s)_n = s (s+1) ... (s+n-1) = gamma(s+n)/gamma(s), (s)_0 = 1.
    Exact for ``int`` and ``Fraction`` arguments.
    """
    if n < 0:
        raise DomainError(f"rising factorial needs a nonnegative length, given {n}")
    result = 1
    for k in range(n):
        result *= s + k
    return result


def falling_factorial(s : Real, n : int) -> Real:
    """
    falling factorial s (s-1) ... (s-n+1) = gamma(s+1)/gamma(s-n+1), empty product for n = 0
    """
    if n < 0:
        raise DomainError(f"falling factorial needs a nonnegative length, given {n}")
    result = 1
    for k in range(n):
        result *= s - k
    return result


def k_pochhammer(x : Real, n : int, k : int) -> Real:
    """
    Pochhammer k-symbol (x)_{n,k} = x (x+k) ... (x+(n-1)k) = k^n (x/k)_n

    Parameters
    ----------
    x: Real
        base
    n: int
        number of factors, nonnegative
    k: int
        step, positive
    """
    if n < 0:
        raise DomainError(f"Pochhammer k-symbol needs a nonnegative length, given {n}")
    if k < 1:
        raise DomainError(f"Pochhammer k-symbol needs a positive step, given {k}")
    result = 1
    for j in range(n):
        result *= x + j * k
    return result


def bell_partial(n : int, k : int, x : typing.Sequence[Real]) -> Real:
    """
    partial exponential Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}) by the recurrence
    B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B_{n-i,k-1} with B_{0,0} = 1.

    Parameters
    ----------
    n: int
        total order, positive
    k: int
        number of blocks, 1 <= k <= n
    x: Sequence[Real]
        x_1, x_2, ... (0-based storage), at least n-k+1 long
    """
    if not 1 <= k <= n:
        raise DomainError(f"partial Bell polynomial needs 1 <= k <= n, given n = {n}, k = {k}")
    if len(x) < n - k + 1:
        raise DimensionError(f"partial Bell polynomial B_({n},{k}) needs {n - k + 1} arguments, given {len(x)}")
    # table[j][i] holds B_{i,j}; only i in [j, n-k+j] is ever needed
    table = [[0] * (n + 1) for _ in range(k + 1)]
    table[0][0] = 1
    for j in range(1, k + 1):
        for i in range(j, n - k + j + 1):
            total = 0
            for t in range(1, i - j + 2):
                previous = table[j - 1][i - t]
                if previous != 0:
                    total += math.comb(i - 1, t - 1) * x[t - 1] * previous
            table[j][i] = total
    return table[k][n]


# ---------------------------------------------------------------------------------------------
# powers of power series
# ---------------------------------------------------------------------------------------------

def next_power_coefficient(a : typing.Sequence[Real], c : typing.Sequence[Real], p : int, k : int) -> Real:
    """
    k-th coefficient of (sum a_j e^j)^p from a_0..a_k and the coefficients c_0..c_{k-1} of the power,
    c_k = 1/(a_0 k) sum_{l=1}^{k} ((p+1) l - k) a_l c_{k-l}
    """
    if k == 0:
        return a[0] ** p
    total = 0
    for l in range(1, k + 1):
        if a[l] != 0:
            total += ((p + 1) * l - k) * a[l] * c[k - l]
    return total / (a[0] * k)


def power_coefficients(a : typing.Sequence[Real], p : int, n : int) -> typing.List[Real]:
    """
    coefficients c_0, ..., c_n of the integer power (sum_k a_k e^k)^p, the recurrence for integer
    powers of a power series. a_0 must be nonzero.
    """
    if len(a) < n + 1:
        raise DimensionError(f"power series coefficients up to order {n} need {n + 1} input coefficients, given {len(a)}")
    if a[0] == 0:
        raise DomainError("power series recurrence divides by the constant coefficient, which is zero")
    if isinstance(a[0], int):
        a = [Fraction(value) for value in a]
    c = []
    for k in range(n + 1):
        c.append(next_power_coefficient(a, c, p, k))
    return c


def power_coefficient_bell(a : typing.Sequence[Real], p : int, k : int) -> Real:
    """
    k-th coefficient of (sum a_j e^j)^p by Faa di Bruno's formula,
    c_k = 1/k! sum_{l=1}^{k} p^(l) a_0^(p-l) B_{k,l}(1! a_1, 2! a_2, ...) with falling factorial p^(l)
    """
    if k == 0:
        return a[0] ** p
    if len(a) < k + 1:
        raise DimensionError(f"coefficient of order {k} needs {k + 1} input coefficients, given {len(a)}")
    derivatives = [math.factorial(j) * a[j] for j in range(1, k + 1)]
    total = 0
    for l in range(1, min(k, p) + 1):
        total += falling_factorial(p, l) * a[0] ** (p - l) * bell_partial(k, l, derivatives)
    if isinstance(total, int):
        return Fraction(total, math.factorial(k))
    return total / math.factorial(k)


# ---------------------------------------------------------------------------------------------
# generalized hypergeometric series
# ---------------------------------------------------------------------------------------------

def _cancel_parameters(top : typing.List, bottom : typing.List) -> typing.Tuple[typing.List, typing.List]:
    top, bottom = list(top), list(bottom)
    for value in list(top):
        if value in bottom:
            top.remove(value)
            bottom.remove(value)
    return top, bottom


def pfq(top : typing.Sequence[Real], bottom : typing.Sequence[Real], z : Real,
        ctx : typing.Optional[PrecisionContext] = None):
    """
    generalized hypergeometric series pFq(top; bottom; z) for |z| <= 1.

    Terms are updated by the ratio recurrence
    t_{k+1} = t_k prod(a_i + k) / prod(b_j + k) z / (k + 1) and summation stops when two consecutive
    terms fall below ``term_epsilon`` relative to the partial sum. On the unit circle with p = q + 1
    the terms only decay algebraically and the partial sums are accelerated with the Levin u transform
    at doubled precision instead. Parameters equal in top and bottom are cancelled first, give them as
    ``Fraction`` to make that exact.

    Parameters
    ----------
    top: Sequence[Real]
        numerator parameters a_1, ..., a_p
    bottom: Sequence[Real]
        denominator parameters b_1, ..., b_q, none a nonpositive integer
    z: Real
        argument, |z| <= 1
    ctx: PrecisionContext, optional
        precision of the result, ``PrecisionContext.default()`` when not given

    Returns
    -------
    Real
        the value of the series in ``ctx``

    Raises
    ------
    DomainError
        bad denominator parameter, |z| > 1 or divergence on the unit circle
    NonConvergenceError
        ``max_series_terms`` reached
    """
    ctx = ctx or PrecisionContext.default()
    mp = ctx.mp
    top, bottom = _cancel_parameters(top, bottom)
    for b in bottom:
        if _is_nonpositive_integer(b, mp):
            raise DomainError(f"hypergeometric series undefined for nonpositive integer bottom parameter {b}")
    terminating = any(_is_nonpositive_integer(a, mp) for a in top)
    work = ctx.extended(16)
    z_real = to_real(z, work)
    if not terminating:
        magnitude = abs(z_real)
        if magnitude > 1:
            raise DomainError(f"hypergeometric series diverges for |z| = {mp.nstr(magnitude, 10)} > 1")
        if magnitude == 1 and len(top) > len(bottom):
            if len(top) > len(bottom) + 1:
                raise DomainError(f"{len(top)}F{len(bottom)} series diverges on the unit circle")
            excess = to_real(sum(bottom, 0), work) - to_real(sum(top, 0), work)
            if z_real == 1 and not excess > 0:
                raise DomainError(f"hypergeometric series at z = 1 needs sum(bottom) - sum(top) > 0, given {mp.nstr(excess, 10)}")
            if z_real == -1 and not excess > -1:
                raise DomainError(f"hypergeometric series at z = -1 needs sum(bottom) - sum(top) > -1, given {mp.nstr(excess, 10)}")
            return _pfq_unit_argument(top, bottom, z, ctx)
    return ctx.mp.mpf(_pfq_direct(top, bottom, z_real, work))


def _pfq_direct(top, bottom, z, ctx : PrecisionContext):
    mp = ctx.mp
    top = [to_real(a, ctx) for a in top]
    bottom = [to_real(b, ctx) for b in bottom]
    eps = ctx.epsilon
    term = mp.mpf(1)
    total = mp.mpf(1)
    small = 0
    for k in range(ctx.max_series_terms):
        numerator = z
        for a in top:
            numerator *= a + k
        denominator = k + 1
        for b in bottom:
            denominator *= b + k
        term = term * numerator / denominator
        if term == 0:
            return total
        total += term
        if not mp.isfinite(total):
            raise SeriesOverflowError(f"hypergeometric partial sum no longer finite after {k + 1} terms")
        if abs(term) < eps * abs(total):
            small += 1
            if small == 2:
                return total
        else:
            small = 0
    raise NonConvergenceError(f"hypergeometric series did not converge within {ctx.max_series_terms} terms")


def _pfq_unit_argument(top, bottom, z, ctx : PrecisionContext):
    # levin u transform loses about half the digits it works with
    work = ctx.extended(ctx.mantissa_bits + 64)
    mp = work.mp
    top_real = [to_real(a, work) for a in top]
    bottom_real = [to_real(b, work) for b in bottom]
    z_real = to_real(z, work)
    eps = ctx.epsilon
    cap = min(ctx.max_series_terms, 2 * ctx.mantissa_bits)
    levin = mp.levin(method="levin", variant="u")
    term = mp.mpf(1)
    total = mp.mpf(1)
    settled = 0
    for k in range(cap):
        value, error = levin.step_psum(total)
        if k > 2 and error <= eps * abs(value):
            settled += 1
            if settled == 2:
                return ctx.mp.mpf(value)
        else:
            settled = 0
        numerator = z_real
        for a in top_real:
            numerator *= a + k
        denominator = k + 1
        for b in bottom_real:
            denominator *= b + k
        term = term * numerator / denominator
        total += term
    logger.warning(f"Levin acceleration of {len(top)}F{len(bottom)} at |z| = 1 did not settle within {cap} terms, " +
                "falling back to Euler-Maclaurin tail summation")
    try:
        return ctx.mp.mpf(ctx.mp.hyper([to_real(a, ctx) for a in top], [to_real(b, ctx) for b in bottom],
                                to_real(z, ctx)))
    except (NoConvergence, ZeroDivisionError) as ex:
        raise NonConvergenceError(f"hypergeometric series at |z| = 1 did not converge: {ex}") from ex



__all__ = [
    PrecisionContext.__name__,
    to_real.__name__,
    log_gamma.__name__,
    gamma.__name__,
    rising_factorial.__name__,
    falling_factorial.__name__,
    k_pochhammer.__name__,
    bell_partial.__name__,
    next_power_coefficient.__name__,
    power_coefficients.__name__,
    power_coefficient_bell.__name__,
    pfq.__name__,
    'Real'
]
