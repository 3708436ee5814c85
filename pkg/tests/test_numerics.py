import pickle
import unittest
from fractions import Fraction

from geomin.core.exceptions import (DimensionError, DomainError, NonConvergenceError)
from geomin.core.numerics import (PrecisionContext, bell_partial, falling_factorial, gamma, k_pochhammer,
                            log_gamma, pfq, power_coefficient_bell, power_coefficients, rising_factorial,
                            to_real)
try:
    from .utils import TestCase, TestRunner, precision
    from .reference import brute_force_bell, brute_force_power
except ImportError:
    from utils import TestCase, TestRunner, precision
    from reference import brute_force_bell, brute_force_power



class TestPrecisionContext(TestCase):

    @classmethod
    def setUpClass(self):
        print("test precision context")


    def test_1_validation(self):
        ctx = precision(128)
        self.assertEqual(ctx.mp.prec, 128)
        self.assertEqual(ctx.extended(32).mantissa_bits, 160)
        self.assertEqual(ctx.extended(32).max_series_terms, ctx.max_series_terms)
        # too few bits, non integer bits, bad caps
        for bits in [32, 63, True, 128.0]:
            with self.assertRaises(DomainError):
                PrecisionContext(mantissa_bits=bits)
        with self.assertRaises(DomainError):
            PrecisionContext(mantissa_bits=128, max_series_terms=0)
        with self.assertRaises(DomainError):
            PrecisionContext(mantissa_bits=128, term_epsilon=0)


    def test_2_shared_and_picklable(self):
        first, second = precision(200), precision(200)
        self.assertEqual(first, second)
        self.assertEqual(hash(first), hash(second))
        self.assertIs(first.mp, second.mp)
        self.assertEqual(pickle.loads(pickle.dumps(first)), first)
        # a context never changes the precision of another one
        precision(300).mp
        self.assertEqual(first.mp.prec, 200)


    def test_3_tolerances(self):
        ctx = precision(128)
        self.assertEqual(ctx.epsilon, ctx.mp.ldexp(1, -125))
        self.assertEqual(ctx.ulp_tolerance(16), ctx.mp.ldexp(1, -112))
        self.assertEqual(PrecisionContext(mantissa_bits=128, term_epsilon=1e-10).epsilon, ctx.mp.mpf(1e-10))


    def test_4_fractions_are_not_rounded_through_floats(self):
        ctx = precision(256)
        third = to_real(Fraction(1, 3), ctx)
        self.assertEqual(third, ctx.mp.mpf(1) / 3)
        self.assertNotEqual(third, ctx.mp.mpf(1 / 3))



class TestGamma(TestCase):

    @classmethod
    def setUpClass(self):
        print("test gamma")
        self.ctx = precision(256)


    def test_1_known_values(self):
        mp = self.ctx.mp
        self.assertRelativeClose(gamma(5, self.ctx), 24, mp.ldexp(1, -248))
        self.assertRelativeClose(gamma(Fraction(1, 2), self.ctx) ** 2, mp.pi, mp.ldexp(1, -246))
        self.assertRelativeClose(gamma(Fraction(3, 2), self.ctx), mp.sqrt(mp.pi) / 2, mp.ldexp(1, -248))


    def test_2_against_mpmath(self):
        mp = self.ctx.mp
        for s in [Fraction(1, 3), Fraction(1, 150), Fraction(151, 150), Fraction(7, 2), 40, Fraction(301, 2)]:
            expected = mp.gamma(to_real(s, self.ctx))
            self.assertRelativeClose(gamma(s, self.ctx), expected, mp.ldexp(1, -248))


    def test_3_log_gamma(self):
        mp = self.ctx.mp
        # below, at and above the threshold where the Stirling series is used directly
        for s in [Fraction(1, 4), Fraction(21, 2), 39, 300]:
            expected = mp.loggamma(to_real(s, self.ctx))
            self.assertRelativeClose(log_gamma(s, self.ctx), expected, mp.ldexp(1, -248))


    def test_4_recurrence(self):
        mp = self.ctx.mp
        # gamma(s + 1) = s gamma(s) on 0.1, 0.2, ..., 10.0
        for k in range(1, 101):
            s = Fraction(k, 10)
            self.assertRelativeClose(gamma(s + 1, self.ctx), to_real(s, self.ctx) * gamma(s, self.ctx),
                                    mp.ldexp(1, -(self.ctx.mantissa_bits - 8)), f"s = {s}")


    def test_5_domain(self):
        for s in [0, -1, Fraction(-1, 2)]:
            with self.assertRaises(DomainError):
                gamma(s, self.ctx)
        with self.assertRaises(DomainError):
            log_gamma(0, self.ctx)



class TestFactorials(TestCase):

    @classmethod
    def setUpClass(self):
        print("test factorial like products")


    def test_1_rising_falling(self):
        self.assertEqual(rising_factorial(Fraction(1, 2), 3), Fraction(15, 8))
        self.assertEqual(rising_factorial(7, 0), 1)
        self.assertEqual(rising_factorial(1, 5), 120)
        self.assertEqual(falling_factorial(5, 2), 20)
        self.assertEqual(falling_factorial(3, 4), 0)
        self.assertEqual(falling_factorial(Fraction(1, 2), 0), 1)
        with self.assertRaises(DomainError):
            rising_factorial(1, -1)
        with self.assertRaises(DomainError):
            falling_factorial(1, -1)


    def test_2_k_pochhammer(self):
        self.assertEqual(k_pochhammer(3, 3, 2), 105)
        self.assertEqual(k_pochhammer(Fraction(5, 7), 0, 4), 1)
        # (x)_{n,k} = k^n (x/k)_n
        for x in [Fraction(1, 3), 5, Fraction(-7, 2)]:
            for n in range(6):
                for k in range(1, 5):
                    self.assertEqual(k_pochhammer(x, n, k), k ** n * rising_factorial(Fraction(x) / k, n))
        # step 1 is the rising factorial
        self.assertEqual(k_pochhammer(Fraction(2, 3), 4, 1), rising_factorial(Fraction(2, 3), 4))
        with self.assertRaises(DomainError):
            k_pochhammer(1, 2, 0)
        with self.assertRaises(DomainError):
            k_pochhammer(1, -2, 1)


    def test_3_multiplication_formula(self):
        # (a)_{rn} = r^{rn} prod_{j < r} ((a + j)/r)_n
        for a in [Fraction(1, 3), Fraction(1, 2), Fraction(2), Fraction(7, 5)]:
            for r in [1, 2, 3, 5]:
                for n in range(7):
                    product = Fraction(r) ** (r * n)
                    for j in range(r):
                        product *= rising_factorial((a + j) / r, n)
                    self.assertEqual(rising_factorial(a, r * n), product, f"a = {a}, r = {r}, n = {n}")
        # the same in floating point through the gamma function
        ctx = precision(256)
        mp = ctx.mp
        for a in [Fraction(1, 3), Fraction(7, 5)]:
            for r in [2, 3]:
                n = 6
                product = mp.mpf(r) ** (r * n)
                for j in range(r):
                    s = (a + j) / r
                    product *= gamma(s + n, ctx) / gamma(s, ctx)
                self.assertRelativeClose(gamma(a + r * n, ctx) / gamma(a, ctx), product,
                                        mp.ldexp(1, -(ctx.mantissa_bits - 16)), f"a = {a}, r = {r}")



class TestBellPolynomials(TestCase):

    @classmethod
    def setUpClass(self):
        print("test partial Bell polynomials and powers of power series")
        self.x = [Fraction(2), Fraction(-1, 3), Fraction(5, 7), Fraction(1, 2), Fraction(-4), Fraction(3, 11), Fraction(-6, 5)]


    def test_1_against_set_partitions(self):
        for n in range(1, 8):
            for k in range(1, n + 1):
                self.assertEqual(bell_partial(n, k, self.x), brute_force_bell(n, k, self.x), f"B_({n},{k})")


    def test_2_edges(self):
        for n in range(1, 8):
            self.assertEqual(bell_partial(n, 1, self.x), self.x[n - 1])
            self.assertEqual(bell_partial(n, n, self.x), self.x[0] ** n)
        # all ones count set partitions, the Stirling numbers of the second kind
        self.assertEqual(bell_partial(5, 2, [1] * 5), 15)
        with self.assertRaises(DomainError):
            bell_partial(3, 4, self.x)
        with self.assertRaises(DomainError):
            bell_partial(3, 0, self.x)
        with self.assertRaises(DimensionError):
            bell_partial(6, 1, self.x[:3])


    def test_3_power_coefficients(self):
        a = [Fraction(-2, 3), Fraction(1, 5), Fraction(-3, 4), Fraction(2), Fraction(1, 9), Fraction(-1, 2), Fraction(7)]
        for p in [1, 2, 3, 5]:
            c = power_coefficients(a, p, 6)
            self.assertEqual(c[0], a[0] ** p)
            for k in range(7):
                self.assertEqual(c[k], brute_force_power(a, p, k), f"c_({k},{p})")
                self.assertEqual(c[k], power_coefficient_bell(a, p, k), f"Bell form of c_({k},{p})")
        # integer input is handled exactly
        self.assertEqual(power_coefficients([1, 1], 3, 1), [1, 3])
        with self.assertRaises(DomainError):
            power_coefficients([0, 1, 2], 2, 2)
        with self.assertRaises(DimensionError):
            power_coefficients(a[:3], 2, 5)
        with self.assertRaises(DimensionError):
            power_coefficient_bell(a[:3], 2, 5)



class TestHypergeometric(TestCase):

    @classmethod
    def setUpClass(self):
        print("test generalized hypergeometric series")
        self.ctx = precision(256)


    def test_1_inside_unit_disk(self):
        mp = self.ctx.mp
        value = pfq([Fraction(1, 3), Fraction(2, 5)], [Fraction(7, 4)], Fraction(1, 2), self.ctx)
        expected = mp.hyp2f1(mp.mpf(1) / 3, mp.mpf(2) / 5, mp.mpf(7) / 4, mp.mpf(1) / 2)
        self.assertRelativeClose(value, expected, mp.ldexp(1, -240))
        # 0F0(;;z) = exp(z)
        self.assertRelativeClose(pfq([], [], Fraction(-1, 3), self.ctx), mp.exp(mp.mpf(-1) / 3), mp.ldexp(1, -240))
        # 1F0(a;;z) = (1 - z)^-a
        for a in [Fraction(2, 3), Fraction(5, 2), 3]:
            for z in [Fraction(-1, 2), Fraction(1, 3), Fraction(3, 5)]:
                expected = (1 - to_real(z, self.ctx)) ** (-to_real(a, self.ctx))
                self.assertRelativeClose(pfq([a], [], z, self.ctx), expected, mp.ldexp(1, -240), f"a = {a}, z = {z}")


    def test_2_terminating(self):
        mp = self.ctx.mp
        # (1 - z)^3, finite even far outside the unit disk
        value = pfq([-3, Fraction(1, 2)], [Fraction(1, 2)], 5, self.ctx)
        self.assertEqual(value, (1 - 5) ** 3)
        value = pfq([-4, Fraction(2, 3)], [Fraction(5, 2)], -3, self.ctx)
        expected = mp.hyp2f1(-4, mp.mpf(2) / 3, mp.mpf(5) / 2, -3)
        self.assertRelativeClose(value, expected, mp.ldexp(1, -240))


    def test_3_unit_argument(self):
        mp = self.ctx.mp
        tolerance = mp.ldexp(1, -(self.ctx.mantissa_bits - 20))
        # Gauss summation, 2F1(1/6, 5/6; 3/2; 1) = gamma(3/2) gamma(1/2)/(gamma(4/3) gamma(2/3)) = 3 sqrt(3)/4
        gauss = (gamma(Fraction(3, 2), self.ctx) * gamma(Fraction(1, 2), self.ctx) /
                    (gamma(Fraction(4, 3), self.ctx) * gamma(Fraction(2, 3), self.ctx)))
        self.assertRelativeClose(gauss, 3 * mp.sqrt(3) / 4, tolerance)
        value = pfq([Fraction(1, 6), Fraction(5, 6)], [Fraction(3, 2)], 1, self.ctx)
        self.assertRelativeClose(value, gauss, tolerance)
        # equal parameters cancel
        value = pfq([Fraction(1), Fraction(1, 6), Fraction(5, 6)], [Fraction(3, 2), Fraction(1)], 1, self.ctx)
        self.assertRelativeClose(value, 3 * mp.sqrt(3) / 4, tolerance)
        # 3F2(1, 2/3, 4/3; 2, 3/2; 1) completes x_2 = -1/2 from the Gauss sum above
        value = pfq([1, Fraction(2, 3), Fraction(4, 3)], [2, Fraction(3, 2)], 1, self.ctx)
        self.assertRelativeClose(value, mp.mpf(9) / 4, tolerance)
        # alternating, 2F1(1, 1; 2; -1) = log 2
        value = pfq([1, 1], [2], -1, self.ctx)
        self.assertRelativeClose(value, mp.log(2), tolerance)


    def test_4_domain(self):
        with self.assertRaises(DomainError):
            pfq([1], [0], Fraction(1, 2), self.ctx)
        with self.assertRaises(DomainError):
            pfq([1], [-2], Fraction(1, 2), self.ctx)
        with self.assertRaises(DomainError):
            pfq([1, 1], [2], 2, self.ctx)
        # sum(bottom) - sum(top) = -1/2 at z = 1
        with self.assertRaises(DomainError):
            pfq([1, 1], [Fraction(3, 2)], 1, self.ctx)
        with self.assertRaises(DomainError):
            pfq([1, 1, 1], [2], 1, self.ctx)


    def test_5_term_cap(self):
        # slow geometric convergence cannot finish within 20 terms
        ctx = PrecisionContext(mantissa_bits=128, max_series_terms=20)
        with self.assertRaises(NonConvergenceError):
            pfq([1], [], Fraction(9, 10), ctx)



if __name__ == '__main__':
    unittest.main(testRunner=TestRunner())
