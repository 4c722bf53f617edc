"""
Test Arithmetic - continued fractions, rotation numbers and super-Liouville witnesses
"""

import unittest
import sys
import os

from mpmath import mp

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from geometric_normalization.arithmetic.continued_fraction import (
    ContinuedFraction, bruno_partial_sums, determinant_identity_holds, golden_fraction, golden_mean,
    golden_partial_sums, non_bruno_construct,
)
from geometric_normalization.arithmetic.liouville import (
    lambda_power_distance, odd_super_liouville_construct, scan_lambda_powers, super_liouville_witnesses,
    verify_odd_super_liouville,
)
from geometric_normalization.arithmetic.rotation import RotationNumber, as_rotation_number
from geometric_normalization.config import NormalFormConfig, apply_precision
from geometric_normalization.exceptions import FactorialBudgetError, PrecisionError


class TestContinuedFraction(unittest.TestCase):
    """Test convergents and Bruno sums"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_denominators(self):
        """[0; 2, 1, 42] has denominators 2, 3, 128"""
        cf = ContinuedFraction((2, 1, 42))
        self.assertEqual(cf.denominators(), [2, 3, 128])
        self.assertEqual(cf.convergents()[-1], (43, 128))

    def test_rejects_zero_quotient(self):
        """Partial quotients must be positive"""
        with self.assertRaises(ValueError):
            ContinuedFraction((1, 0, 2))

    def test_determinant_identity(self):
        """q_k p_{k-1} - p_k q_{k-1} alternates in sign"""
        self.assertTrue(determinant_identity_holds(ContinuedFraction((3, 7, 15, 1, 292))))
        self.assertTrue(determinant_identity_holds(golden_fraction(20)))

    def test_from_value_recovers_golden_quotients(self):
        """The golden mean expands to ones"""
        cf = ContinuedFraction.from_value(golden_mean(), 12)
        self.assertEqual(cf.quotients, (1,) * 12)

    def test_golden_bruno_sums_bounded(self):
        """Golden partial sums increase and stay below 3.5"""
        sums = golden_partial_sums(10)
        self.assertEqual(len(sums), 10)
        self.assertTrue(all(b > a for a, b in zip(sums, sums[1:])))
        self.assertLess(sums[-1], 3.5)

    def test_non_bruno_increments(self):
        """Each term of the non-Bruno construction contributes at least ln 2"""
        cf = non_bruno_construct(4)
        self.assertEqual(cf.quotients[:3], (1, 2, 8))
        sums = bruno_partial_sums(cf, 3)
        increments = [sums[0]] + [b - a for a, b in zip(sums, sums[1:])]
        for increment in increments:
            self.assertGreaterEqual(increment, mp.log(2))

    def test_non_bruno_budget(self):
        """Quotients beyond the exponent budget are refused"""
        with self.assertRaises(FactorialBudgetError):
            non_bruno_construct(6)

    def test_bruno_needs_enough_quotients(self):
        """Partial sums read one denominator past the requested depth"""
        with self.assertRaises(ValueError):
            bruno_partial_sums(ContinuedFraction((1, 1, 1)), 3)


class TestRotationNumber(unittest.TestCase):
    """Test rotation number parsing and evaluation"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_parse_round_trip_text(self):
        """Text forms survive parse and str"""
        for text in ("golden", "cf:2,1,43", "cf:2,1,43/2", "0.25*3"):
            self.assertEqual(str(RotationNumber.parse(text)), text)

    def test_halved_value(self):
        """cf:2,1,43 halved is 22/131"""
        omega = RotationNumber.parse("cf:2,1,43").halved()
        self.assertLess(abs(omega.value - mp.mpf(22) / 131), mp.mpf(10) ** -70)
        self.assertEqual(omega.doubled(), RotationNumber.parse("cf:2,1,43*2/2"))

    def test_lambda_on_unit_circle(self):
        """|λ| = 1"""
        lam = RotationNumber.golden().lam
        self.assertLess(abs(abs(lam) - 1), mp.mpf(10) ** -70)

    def test_integer_decimal_rejected(self):
        """Integer rotation numbers are resonant"""
        with self.assertRaises(ValueError):
            RotationNumber.parse("2")

    def test_as_rotation_number(self):
        """Continued fractions and strings are accepted"""
        self.assertEqual(str(as_rotation_number(ContinuedFraction((2, 1)))), "cf:2,1")
        self.assertEqual(str(as_rotation_number("golden")), "golden")


class TestLiouville(unittest.TestCase):
    """Test witnesses and odd super-Liouville numbers"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_distance_at_44_over_131(self):
        """λ^3 is 2 sin(π/131) away from 1"""
        distance, theta = lambda_power_distance("cf:2,1,43", 3)
        self.assertLess(abs(distance - 2 * mp.sin(mp.pi / 131)), mp.mpf(10) ** -60)
        self.assertLess(abs(theta - mp.mpf(1) / 131), mp.mpf(10) ** -60)
        self.assertAlmostEqual(float(distance), 0.048, places=3)

    def test_witnesses(self):
        """k = 3 is the only resolved witness for 44/131"""
        self.assertEqual(super_liouville_witnesses("cf:2,1,43", 200), [3])
        self.assertEqual(super_liouville_witnesses("cf:2,1,43", 200, odd_only=True), [3])

    def test_exact_period_is_unresolved(self):
        """λ^131 = 1 exactly is flagged unresolved"""
        records = scan_lambda_powers("cf:2,1,43", 131)
        self.assertFalse(records[-1].resolved)
        self.assertFalse(records[-1].witness)

    def test_precision_guard(self):
        """Powers with no fractional bits left are refused"""
        with self.assertRaises(PrecisionError):
            lambda_power_distance("golden", 2 ** (mp.prec))

    def test_configured_precision_widens_range(self):
        """A configuration above the current precision resolves larger powers"""
        n = 2 ** mp.prec
        distance, theta = lambda_power_distance("golden", n, NormalFormConfig(precision_bits=2 * mp.prec))
        self.assertGreater(distance, 0)
        self.assertLessEqual(theta, 0.5)

    def test_odd_construction(self):
        """Seed [2, 1] extends to [2, 1, 43] with q_3 = 131 odd"""
        cf = odd_super_liouville_construct([2, 1], 2, 3)
        self.assertEqual(cf.quotients, (2, 1, 43))
        self.assertEqual(cf.denominators()[-1], 131)
        report = verify_odd_super_liouville(cf, 2)
        self.assertTrue(report.holds)
        self.assertTrue(all(record.odd for record in report.records if record.k > 2))

    def test_odd_construction_depth_four(self):
        """A fourth quotient 7·131! + ε keeps q_4 odd"""
        cf = odd_super_liouville_construct([2, 1], 2, 4)
        self.assertEqual(cf.denominators()[-1] % 2, 1)
        self.assertTrue(verify_odd_super_liouville(cf, 2).holds)

    def test_factorial_budget(self):
        """q! above the budget is refused"""
        with self.assertRaises(FactorialBudgetError):
            odd_super_liouville_construct([2, 1], 2, 4, NormalFormConfig(factorial_budget=100))

    def test_invalid_ell(self):
        """ell must index into the seed"""
        with self.assertRaises(ValueError):
            odd_super_liouville_construct([2, 1], 3, 4)


if __name__ == '__main__':
    unittest.main()
