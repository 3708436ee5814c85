"""
The following is a list of all dataclasses that carry results between the engine modules and the
command line. Extended precision reals stay reals inside them, ``json()`` turns them into decimal strings.
"""
import typing
import platform
from dataclasses import dataclass, field, fields

from .constants import Method, Construction
from .serializers import real_to_str



class SerializableDataclass:
    """
    Presents uniform serialization for serializers using getstate and setstate and json
    serialization.
    """
    __slots__ = ()

    def json(self):
        def convert(value):
            if hasattr(value, '_mpf_'):
                return real_to_str(value)
            if isinstance(value, (list, tuple)):
                return [convert(item) for item in value]
            if isinstance(value, int) and not isinstance(value, bool):
                return int(value)
            return value
        return {item.name : convert(getattr(self, item.name)) for item in fields(self)}

    def __getstate__(self):
        return {item.name : getattr(self, item.name) for item in fields(self)}

    def __setstate__(self, values : typing.Dict):
        for key, value in values.items():
            object.__setattr__(self, key, value)


__dataclass_kwargs = dict(frozen=True)
if float('.'.join(platform.python_version().split('.')[0:2])) >= 3.11:
    __dataclass_kwargs["slots"] = True


@dataclass(**__dataclass_kwargs)
class PolyEval(SerializableDataclass):
    """
    f_m evaluated at one point

    Attributes
    ----------
    m : EvenDegree
        degree
    x : Real
        argument
    value : Real
        f_m(x), at least 1/2 whenever x lies in [-1, -1/2]
    """
    m : int
    x : typing.Any
    value : typing.Any


@dataclass(**__dataclass_kwargs)
class MinimizerResult(SerializableDataclass):
    """
    minimizer of f_m obtained by one method

    Attributes
    ----------
    m : EvenDegree
        degree
    x_m : Real
        minimizer (or its approximation for series methods)
    f_min : Real
        f_m(x_m); from (1 + m)/(1 + m (1 - x_m)) when x_m lies in [-1, -1/2], direct evaluation otherwise
    method : Method
        how x_m was obtained
    precision_bits : int
        mantissa bits of x_m
    error_estimate : Real
        nonnegative estimate of |x_m - true minimizer|: last Newton step for the oracle,
        magnitude of the last addend for series, zero for the algebraic values
    residual : Real
        |g_m(x_m)|
    n_terms : int, optional
        number of addends summed, series methods only
    """
    m : int
    x_m : typing.Any
    f_min : typing.Any
    method : Method
    precision_bits : int
    error_estimate : typing.Any
    residual : typing.Any
    n_terms : typing.Optional[int] = None


@dataclass(**__dataclass_kwargs)
class SeriesApproximation(SerializableDataclass):
    """
    partial sum of a series for the minimizer with the history of its addends

    Attributes
    ----------
    m : EvenDegree
        degree
    method : Method
        lagrange, hypergeometric_grouped or perturbation
    n_terms : int
        number of addends, ``len(terms)``
    partial_sum : Real
        sum of ``terms`` at the precision it was requested with
    terms : Tuple[Real]
        individual addends, for the perturbation series terms[0] = -(1+2m)^(-1/m)
    """
    m : int
    method : Method
    n_terms : int
    partial_sum : typing.Any
    terms : typing.Tuple[typing.Any, ...] = field(default=())

    @property
    def last_term(self):
        return self.terms[-1] if self.terms else 0


@dataclass(**__dataclass_kwargs)
class PerturbationCoefficients(SerializableDataclass):
    """
    coefficients a_0, ..., a_n of the perturbation series, computed once and shared by every
    partial sum of order up to n

    Attributes
    ----------
    m : EvenDegree
        degree
    a : Tuple[Real]
        a[0] = -(1+2m)^(-1/m), a[k] for k = 1..n
    construction : Construction
        recurrence or closed_form
    precision_bits : int
        mantissa bits of the coefficients
    """
    m : int
    a : typing.Tuple[typing.Any, ...]
    construction : Construction
    precision_bits : int

    @property
    def order(self) -> int:
        return len(self.a) - 1


@dataclass(**__dataclass_kwargs)
class PowerSeriesCoeffs(SerializableDataclass):
    """
    coefficients c_{k,p} of the powers x^p of the perturbation series for a few integer p

    Attributes
    ----------
    m : EvenDegree
        degree
    powers : Tuple[int]
        the exponents p held, in column order
    table : Tuple[Tuple[Real]]
        table[k][i] = c_{k, powers[i]}, table[0][i] = a_0^powers[i]
    """
    m : int
    powers : typing.Tuple[int, ...]
    table : typing.Tuple[typing.Tuple[typing.Any, ...], ...]

    def c(self, k : int, p : int):
        """c_{k,p}"""
        return self.table[k][self.powers.index(p)]


@dataclass(**__dataclass_kwargs)
class ConvergenceRecord(SerializableDataclass):
    """
    relative error R_m(n) = |approx/x_ref - 1| of one partial sum
    """
    m : int
    n : int
    approx : typing.Any
    relative_error : typing.Any


@dataclass(**__dataclass_kwargs)
class SigDigitsRecord(SerializableDataclass):
    """
    digits p achieved by the perturbation partial sum of order n_star(q)
    """
    m : int
    q : int
    n_star : int
    p : int



__all__ = [
    PolyEval.__name__,
    MinimizerResult.__name__,
    SeriesApproximation.__name__,
    PerturbationCoefficients.__name__,
    PowerSeriesCoeffs.__name__,
    ConvergenceRecord.__name__,
    SigDigitsRecord.__name__
]
