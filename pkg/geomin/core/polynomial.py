"""
The polynomial family f_m(x) = 1 + x + ... + x^m for even m, its derivatives, and the auxiliary
polynomials g_m (numerator of f_m') and h_m (sign of f_m'') that characterize the minimizer.

All evaluators take an optional ``PrecisionContext``. Without one, ``int`` and ``Fraction`` arguments
are evaluated exactly and reals keep the precision of their own context.
"""
import operator
import typing
from fractions import Fraction

from .exceptions import DomainError
from .dataklasses import PolyEval
from .numerics import PrecisionContext, Real, to_real



class EvenDegree(int):
    """
    validated even degree m >= 2 indexing the polynomial family. Accepts integers and
    integer strings (so that it can be used as an ``argparse`` type), raises ``DomainError``
    (a ``ValueError``) otherwise.
    """

    def __new__(cls, m : typing.Union[int, str]) -> "EvenDegree":
        if isinstance(m, EvenDegree):
            return m
        if isinstance(m, bool):
            raise DomainError(f"degree must be an integer, given {m!r}")
        if isinstance(m, str):
            value = int(m)
        else:
            try:
                value = operator.index(m)
            except TypeError:
                raise DomainError(f"degree must be an integer, given {m!r}") from None
        if value < 2 or value % 2 != 0:
            raise DomainError(f"degree must be a positive even integer, given {value}")
        return super().__new__(cls, value)

    def __repr__(self) -> str:
        return f"EvenDegree({int(self)})"

    def __reduce__(self):
        return (EvenDegree, (int(self),))


def _operand(x : Real, ctx : typing.Optional[PrecisionContext]):
    if ctx is not None:
        return to_real(x, ctx)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if hasattr(x, '_mpf_'):
        return x
    return to_real(x, PrecisionContext.default())


def _one(x):
    if isinstance(x, Fraction):
        return Fraction(1)
    return x.context.mpf(1)


def _like(value, x):
    if isinstance(x, Fraction):
        return Fraction(value)
    if isinstance(value, Fraction):
        return x.context.mpf(value.numerator) / value.denominator
    return x.context.mpf(value)


def horner(coefficients : typing.Sequence[Real], x : Real):
    """
    evaluates sum_j coefficients[j] x^j by Horner's rule, coefficients in increasing order of power
    """
    result = 0 * x
    for coefficient in reversed(coefficients):
        result = result * x + coefficient
    return result


def eval_f(m : EvenDegree, x : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    f_m(x) = (1 - x^(m+1))/(1 - x), m + 1 at x = 1. Switches to the Horner sum when
    |1 - x| < 2^-(mantissa_bits/2) because the closed form divides by 1 - x.
    """
    m = EvenDegree(m)
    x = _operand(x, ctx)
    one = _one(x)
    if x == 1:
        return one * (m + 1)
    if not isinstance(x, Fraction):
        mp = x.context
        if abs(one - x) < mp.ldexp(one, -(mp.prec // 2)):
            return horner([one] * (m + 1), x)
    return (one - x ** (m + 1)) / (one - x)


def eval_fp(m : EvenDegree, x : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    first derivative f_m'(x) = sum_{j=1}^m j x^(j-1) by term-wise differentiation
    """
    m = EvenDegree(m)
    x = _operand(x, ctx)
    return horner([j + 1 for j in range(m)], x)


def eval_fpp(m : EvenDegree, x : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    second derivative f_m''(x) = sum_{j=2}^m j (j-1) x^(j-2) by term-wise differentiation
    """
    m = EvenDegree(m)
    x = _operand(x, ctx)
    return horner([(j + 2) * (j + 1) for j in range(m - 1)], x)


def eval_g(m : EvenDegree, x : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    g_m(x) = m x^(m+1) - (m+1) x^m + 1, the numerator of f_m'(x) (1 - x)^2.
    Its unique negative root is the minimizer.
    """
    m = EvenDegree(m)
    x = _operand(x, ctx)
    return x ** m * (m * x - (m + 1)) + 1


def eval_gp(m : EvenDegree, x : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    g_m'(x) = m (m+1) x^(m-1) (x - 1), positive for x < 0
    """
    m = EvenDegree(m)
    x = _operand(x, ctx)
    return m * (m + 1) * x ** (m - 1) * (x - 1)


def eval_h(m : EvenDegree, x : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    h_m(x) = (m-1) m x^(m+1) - 2 (m^2-1) x^m + m (m+1) x^(m-1) - 2,
    vanishes exactly where f_m'' does for x < 0
    """
    m = EvenDegree(m)
    x = _operand(x, ctx)
    x_power = x ** (m - 1)
    return x_power * ((m - 1) * m * x * x - 2 * (m * m - 1) * x + m * (m + 1)) - 2


def eval_g_perturbed(m : EvenDegree, x : Real, epsilon : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    g_{m,e}(x) = x^m (2 - (1 + x) e + 1/m) - 1/m, the deformation whose root the perturbation
    series expands in powers of e. At e = 1 it equals -g_m(x)/m, at e = 0 its negative root is
    -(1 + 2m)^(-1/m).
    """
    m = EvenDegree(m)
    x = _operand(x, ctx)
    epsilon = to_real(epsilon, ctx) if ctx is not None else _like(epsilon, x)
    reciprocal = _one(x) / m
    return x ** m * (2 - (1 + x) * epsilon + reciprocal) - reciprocal


def unperturbed_root(m : EvenDegree, ctx : typing.Optional[PrecisionContext] = None):
    """
    a_0 = -(1 + 2m)^(-1/m), the negative root of g_{m,0} and zeroth perturbation coefficient
    """
    m = EvenDegree(m)
    ctx = ctx or PrecisionContext.default()
    mp = ctx.mp
    return -1 / mp.root(mp.mpf(1 + 2 * m), m)


def min_value_from_minimizer(m : EvenDegree, x_m : Real, ctx : typing.Optional[PrecisionContext] = None):
    """
    minimum value f_m(x_m) = (1 + m)/(1 + m (1 - x_m)) from the minimizer, lies in [1/2, 3/4]

    Raises
    ------
    DomainError
        x_m outside [-1, -1/2]
    """
    m = EvenDegree(m)
    x = _operand(x_m, ctx)
    if not (x >= -1 and 2 * x <= -1):
        raise DomainError(f"a minimizer lies in [-1, -1/2], given {x}")
    one = _one(x)
    return one * (1 + m) / (1 + m * (one - x))


def evaluate(m : EvenDegree, x : Real, ctx : typing.Optional[PrecisionContext] = None) -> PolyEval:
    """
    f_m(x) packed with its arguments as ``PolyEval``
    """
    m = EvenDegree(m)
    x = _operand(x, ctx)
    return PolyEval(m=m, x=x, value=eval_f(m, x))



__all__ = [
    EvenDegree.__name__,
    horner.__name__,
    eval_f.__name__,
    eval_fp.__name__,
    eval_fpp.__name__,
    eval_g.__name__,
    eval_gp.__name__,
    eval_h.__name__,
    eval_g_perturbed.__name__,
    unperturbed_root.__name__,
    min_value_from_minimizer.__name__,
    evaluate.__name__
]
