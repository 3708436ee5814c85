import os
import tempfile
import unittest
import contextlib

from geomin.core.numerics import PrecisionContext



class TestResult(unittest.TextTestResult):
    def addSuccess(self, test):
        super().addSuccess(test)
        self.stream.write(f' {test} ✔')
        self.stream.flush()

    def addFailure(self, test, err):
        super().addFailure(test, err)
        self.stream.write(f' {test} ❌')
        self.stream.flush()

    def addError(self, test, err):
        super().addError(test, err)
        self.stream.write(f' {test} ❌ Error')
        self.stream.flush()

class TestRunner(unittest.TextTestRunner):
    resultclass = TestResult


class TestCase(unittest.TestCase):
    
    def setUp(self):
        print() # dont concatenate with results printed by unit test

    def assertRelativeClose(self, value, expected, rtol, msg = None):
        """|value/expected - 1| <= rtol, compared in the precision of ``value``"""
        mp = value.context
        error = abs(mp.mpf(value) / mp.mpf(expected) - 1)
        if not error <= rtol:
            self.fail(msg or f"{mp.nstr(value, 20)} differs from {mp.nstr(mp.mpf(expected), 20)} " +
                        f"by relative {mp.nstr(error, 5)} > {rtol}")


def precision(bits : int = 256, max_series_terms : int = 10000) -> PrecisionContext:
    return PrecisionContext(mantissa_bits=bits, max_series_terms=max_series_terms)


@contextlib.contextmanager
def environment(**variables):
    """sets environment variables for the duration of the block, ``None`` removes a variable"""
    previous = {name : os.environ.get(name) for name in variables}
    try:
        for name, value in variables.items():
            if value is None:
                os.environ.pop(name, None)
            else:
                os.environ[name] = str(value)
        yield
    finally:
        for name, value in previous.items():
            if value is None:
                os.environ.pop(name, None)
            else:
                os.environ[name] = value


def temporary_path(suffix : str = '') -> str:
    """path of a new empty file in the temporary directory, removed by the caller"""
    handle, path = tempfile.mkstemp(suffix=suffix)
    os.close(handle)
    return path
