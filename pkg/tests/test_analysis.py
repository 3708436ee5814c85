import unittest
from fractions import Fraction

from geomin.core.config import global_config
from geomin.core.dataklasses import ConvergenceRecord, SigDigitsRecord
from geomin.core.exceptions import DomainError, PrecisionError
from geomin.core.analysis import (empirical_bound, empirical_bound_check, fit_decay_exponent, lagrange_error_curve,
                            n_star, reference_minimizer, relative_error_curve, significant_digits,
                            sigdigits_sweep)
from geomin.core.oracle import solve_oracle
from geomin.core.series import perturbation_partial_sum
try:
    from .utils import TestCase, TestRunner, precision
except ImportError:
    from utils import TestCase, TestRunner, precision



class TestTruncationRule(TestCase):

    @classmethod
    def setUpClass(self):
        print("test truncation rule")


    def test_1_values(self):
        self.assertEqual(n_star(10), 11)
        self.assertEqual(n_star(2), 0)
        self.assertEqual(n_star(1), 0)
        self.assertEqual(n_star(3), 2)
        for q in range(1, 100):
            self.assertGreaterEqual(n_star(q + 1), n_star(q))
        for q in [0, -3]:
            with self.assertRaises(DomainError):
                n_star(q)


    def test_2_bound(self):
        ctx = precision(128)
        mp = ctx.mp
        self.assertRelativeClose(empirical_bound(0, ctx), mp.mpf('0.05'), mp.ldexp(1, -120))
        self.assertRelativeClose(empirical_bound(1000, ctx), 5 * mp.power(10, -761), mp.ldexp(1, -100))



class TestErrorCurves(TestCase):

    @classmethod
    def setUpClass(self):
        print("test error curves")
        self.ctx = precision(384)
        self.curves = {m : relative_error_curve(m, 100, self.ctx) for m in [2, 4]}


    def test_1_records(self):
        for m, curve in self.curves.items():
            self.assertEqual(len(curve), 101)
            self.assertEqual([record.n for record in curve], list(range(101)))
            for record in curve:
                self.assertIsInstance(record, ConvergenceRecord)
                self.assertEqual(record.m, m)
                self.assertGreaterEqual(record.relative_error, 0)
        # R_2(0) = |(1/5)^(1/2)/(1/2) - 1|
        mp = self.ctx.mp
        self.assertRelativeClose(self.curves[2][0].relative_error, 1 - 2 / mp.sqrt(5), mp.ldexp(1, -300))


    def test_2_decay(self):
        for m, curve in self.curves.items():
            for n in range(0, 91):
                self.assertLess(curve[n + 10].relative_error, curve[n].relative_error, f"R_{m}({n} + 10)")
        self.assertLess(self.curves[4][100].relative_error, self.curves[2][100].relative_error)
        # 100 addends at m = 2 are off by about 5.6e-64
        errors = [self.curves[2][n].relative_error for n in (99, 100)]
        self.assertTrue(any(2.8e-64 <= error <= 1.12e-63 for error in errors), f"relative errors {errors}")


    def test_3_empirical_bound(self):
        for n, record in enumerate(self.curves[4]):
            self.assertLess(record.relative_error, empirical_bound(n, self.ctx), f"R_4({n})")
        self.assertTrue(all(empirical_bound_check(100, self.ctx)))
        self.assertEqual(len(empirical_bound_check(5, self.ctx)), 6)


    def test_4_lagrange(self):
        curve = lagrange_error_curve(2, 99, precision(256))
        self.assertEqual(len(curve), 100)
        self.assertTrue(2.2e-4 <= curve[-1].relative_error <= 2.4e-4)


    def test_5_resolution(self):
        ctx = precision(64)
        # errors of the m = 4 series fall below 2^-48 within a few dozen terms
        with self.assertRaises(PrecisionError):
            relative_error_curve(4, 60, ctx)
        with self.assertLogs('geomin.analysis', level='WARNING') as logs:
            curve = relative_error_curve(4, 60, ctx, strict=False)
        self.assertEqual(len(curve), 61)
        self.assertIn('resolution', logs.output[0])


    def test_6_reference(self):
        x = reference_minimizer(10, precision(128))
        self.assertEqual(x.context.prec, 128 + global_config.ORACLE_GUARD_BITS)
        with self.assertRaises(DomainError):
            relative_error_curve(4, -1, self.ctx)


    def test_7_fit(self):
        intercept, slope = fit_decay_exponent(self.curves[4])
        self.assertLess(slope, -0.5)
        self.assertGreater(slope, -1.5)
        self.assertIsInstance(intercept, float)
        with self.assertRaises(DomainError):
            fit_decay_exponent(self.curves[4][:1])


    def test_8_direct_difference(self):
        mp = self.ctx.mp
        for m, curve in self.curves.items():
            x_ref = reference_minimizer(m, self.ctx)
            for n in [0, 1, 7, 30, 100]:
                record = curve[n]
                partial_sum = perturbation_partial_sum(m, n, self.ctx).partial_sum
                self.assertRelativeClose(record.approx, partial_sum, mp.ldexp(1, -(self.ctx.mantissa_bits - 16)))
                expected = abs(x_ref.context.mpf(record.approx) - x_ref) / abs(x_ref)
                self.assertLessEqual(abs(record.relative_error - expected), mp.ldexp(1, -(self.ctx.mantissa_bits - 4)),
                                    f"R_{m}({n})")



class TestSignificantDigits(TestCase):

    @classmethod
    def setUpClass(self):
        print("test significant digits")
        self.ctx = precision(256)


    def test_1_sign_test(self):
        # -1/2 + 3e-7 brackets the root for half widths 5e-7 and above
        self.assertEqual(significant_digits(2, Fraction(-1, 2) + Fraction(3, 10 ** 7), 20, self.ctx), 6)
        self.assertEqual(significant_digits(2, Fraction(-1, 2), 40, self.ctx), 40)
        x_10 = solve_oracle(10, self.ctx).x_m
        self.assertEqual(significant_digits(10, x_10, 60, self.ctx), 60)
        rounded = self.ctx.mp.mpf('-0.74705')
        self.assertGreaterEqual(significant_digits(10, rounded, 30, self.ctx), 4)
        self.assertLess(significant_digits(10, rounded, 30, self.ctx), 7)


    def test_2_domain(self):
        for approx in [0, Fraction(-1, 5), -1, Fraction(-3, 2)]:
            with self.assertRaises(DomainError):
                significant_digits(4, approx, 10, self.ctx)
        with self.assertRaises(DomainError):
            significant_digits(4, Fraction(-3, 5), 0, self.ctx)


    def test_3_rounded_minimizers(self):
        mp = self.ctx.mp
        # rounding to d decimals moves by at most 5 * 10^-(d+1)
        for m in range(2, 21, 2):
            x_m = solve_oracle(m, self.ctx).x_m
            for d in [4, 8, 10]:
                rounded = Fraction(int(mp.nint(x_m * 10 ** d)), 10 ** d)
                self.assertGreaterEqual(significant_digits(m, rounded, 20, self.ctx), d - 1, f"m = {m}, d = {d}")


    def test_4_sweep(self):
        records = sigdigits_sweep(10, 4, 100, self.ctx, p_max=40)
        self.assertEqual([record.m for record in records], list(range(4, 101, 2)))
        for record in records:
            self.assertIsInstance(record, SigDigitsRecord)
            self.assertEqual(record.n_star, 11)
            self.assertEqual(record.q, 10)
            self.assertGreater(record.p, 10, f"m = {record.m}")
        for record in sigdigits_sweep(2, 4, 20, self.ctx, p_max=20):
            self.assertEqual(record.n_star, 0)


    def test_5_process_pool(self):
        serial = sigdigits_sweep(6, 4, 12, self.ctx, p_max=30, workers=1)
        pooled = sigdigits_sweep(6, 4, 12, self.ctx, p_max=30, workers=2)
        self.assertEqual(serial, pooled)



if __name__ == '__main__':
    unittest.main(testRunner=TestRunner())
