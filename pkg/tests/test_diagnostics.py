"""
Test Diagnostics - coefficient growth profiles
"""

import unittest
import sys
import os

from mpmath import mp

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from geometric_normalization.config import NormalFormConfig, apply_precision
from geometric_normalization.diagnostics.growth import growth_profile
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.uni import UniSeries


class TestGrowthProfile(unittest.TestCase):
    """Test growth tables and slope fits"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_factorial_growth(self):
        """n^n coefficients fit n log n with slope one"""
        series = UniSeries(12, {n: mp.mpf(n) ** n for n in range(1, 13)})
        profile = growth_profile(series)
        self.assertEqual(len(profile.rows), 12)
        self.assertAlmostEqual(profile.factorial_slope, 1.0, places=6)
        self.assertTrue(profile.factorial_growth)

    def test_geometric_growth(self):
        """2^n coefficients give a radius of one half"""
        series = UniSeries(12, {n: mp.mpf(2) ** n for n in range(1, 13)})
        profile = growth_profile(series)
        self.assertFalse(profile.factorial_growth)
        self.assertAlmostEqual(profile.radius_estimate, 0.5, places=6)

    def test_bivariate_maxima(self):
        """Rows take the largest coefficient of each total degree"""
        series = BiSeries(4, {(1, 0): 1, (2, 1): 3, (1, 2): -5, (4, 0): 2})
        profile = growth_profile(series)
        self.assertEqual([row.n for row in profile.rows], [1, 3, 4])
        self.assertEqual(profile.rows[1].max_abs, 5)

    def test_csv_rows(self):
        """Header plus one line per nonzero degree"""
        profile = growth_profile(UniSeries(4, {1: 1, 2: 4}))
        lines = profile.csv_rows()
        self.assertEqual(lines[0], "n,max_abs,nth_root")
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[2].startswith("2,4.0"))
        self.assertIsNone(profile.linear_slope)
        self.assertIsNone(profile.radius_estimate)

    def test_short_series_refused(self):
        """Order below four has too few degrees"""
        with self.assertRaises(ValueError):
            growth_profile(UniSeries(3, {1: 1}))


if __name__ == '__main__':
    unittest.main()
