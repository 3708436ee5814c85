import csv
import io
import sys
import typing
from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction

from ..core.constants import OutputFormat
from ..core.logger import get_logger


logger = get_logger('cli')


def fixed(value : typing.Any, digits : int) -> str:
    """
    ``value`` with exactly ``digits`` decimal places, rounded half to even. Reals are first written
    with 30 guard digits, fractions are divided exactly.
    """
    with localcontext() as context:
        context.prec = digits + 40
        if isinstance(value, (int, Fraction)):
            value = Fraction(value)
            number = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            number = Decimal(value.context.nstr(value, digits + 30, strip_zeros=False))
        return f"{number.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN):f}"


def scientific(value : typing.Any, significant : int = 8) -> str:
    """
    ``value`` in scientific notation with ``significant`` digits, rounded half to even
    """
    if value == 0:
        return f"{0:.{significant - 1}e}"
    number = Decimal(value.context.nstr(value, significant + 12, strip_zeros=False))
    with localcontext() as context:
        context.prec = significant + 20
        return f"{number:.{significant - 1}e}"


@dataclass
class OutputTable:
    """
    rows of already formatted cells written as delimited text

    Attributes
    ----------
    header : Tuple[str]
        column names
    rows : List[Tuple[str]]
        formatted cells, one tuple per row
    digits : int, optional
        decimal places of the fixed point columns
    format : OutputFormat
        csv (comma), tsv (tab) or dat (space, header commented with '#')
    """
    header : typing.Tuple[str, ...]
    rows : typing.List[typing.Tuple[str, ...]] = field(default_factory=list)
    digits : typing.Optional[int] = None
    format : OutputFormat = OutputFormat.CSV

    def render(self) -> str:
        """table as a single newline terminated string"""
        if self.format == OutputFormat.DAT:
            lines = ['# ' + ' '.join(self.header)] + [' '.join(row) for row in self.rows]
            return '\n'.join(lines) + '\n'
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter=',' if self.format == OutputFormat.CSV else '\t',
                        lineterminator='\n')
        writer.writerow(self.header)
        writer.writerows(self.rows)
        return buffer.getvalue()

    def write(self, out_path : typing.Optional[str] = None, stream : typing.Optional[typing.TextIO] = None) -> None:
        """
        write to ``out_path`` as UTF-8, or to ``stream`` (standard output by default) when no path is given
        """
        text = self.render()
        if out_path is None:
            (stream or sys.stdout).write(text)
            return
        with open(out_path, 'w', encoding='utf-8', newline='') as file:
            file.write(text)
        logger.info(f"wrote {len(self.rows)} rows to {out_path}")

    def json(self) -> typing.Dict[str, typing.Any]:
        return dict(header=list(self.header), rows=[list(row) for row in self.rows], digits=self.digits,
                    format=self.format.value)



__all__ = [
    OutputTable.__name__,
    fixed.__name__,
    scientific.__name__
]
