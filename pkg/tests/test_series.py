"""
Test Series - Unit tests for truncated series arithmetic and composition
"""

import unittest
import sys
import os

from mpmath import mp

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from geometric_normalization.config import NormalFormConfig, apply_precision
from geometric_normalization.exceptions import (
    ConstantTermError, LeadingTermError, OrderMismatchError, VanishingLinearPartError,
)
from geometric_normalization.series.analytic import exp, log1p, reciprocal, sqrt
from geometric_normalization.series.bi import BiSeries, HermitianBiSeries
from geometric_normalization.series.charts import xy_to_zw, zw_to_xy
from geometric_normalization.series.compose import (
    compose_bi, compose_uni, composed_order, diagonal, invert_bi_pair, invert_uni, square_modulus,
)
from geometric_normalization.series.uni import UniSeries

TIGHT = mp.mpf(10) ** -60


class TestBiSeries(unittest.TestCase):
    """Test bivariate series arithmetic"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_terms_above_order_are_dropped(self):
        """Coefficients beyond the truncation order never survive construction"""
        series = BiSeries(3, {(1, 0): 1, (2, 2): 5, (0, 3): 2})
        self.assertEqual(series.indices(), [(0, 3), (1, 0)])
        self.assertEqual(series.coeff(2, 2), 0)

    def test_product_truncates(self):
        """(z + w)^2 has three terms and (z + w)^4 vanishes at order 3"""
        s = BiSeries(3, {(1, 0): 1, (0, 1): 1})
        square = s * s
        self.assertEqual(square.coeff(1, 1), 2)
        self.assertEqual(square.coeff(2, 0), 1)
        self.assertFalse(s ** 4)

    def test_order_mismatch(self):
        """Adding series of different orders raises"""
        with self.assertRaises(OrderMismatchError):
            BiSeries(3, {(1, 0): 1}) + BiSeries(4, {(1, 0): 1})

    def test_tilde_swaps_and_conjugates(self):
        """f~ swaps exponents and conjugates coefficients"""
        series = BiSeries(4, {(2, 1): 1 + 2j})
        self.assertEqual(series.tilde().coeff(1, 2), mp.mpc(1, -2))

    def test_hermitian_rejects_non_hermitian(self):
        """A series that is not real on w = conj(z) is refused"""
        HermitianBiSeries(4, {(2, 1): 1j, (1, 2): -1j})
        with self.assertRaises(ValueError):
            HermitianBiSeries(4, {(2, 1): 1j})

    def test_derivative_lowers_order(self):
        """d/dz z^2 w = 2 z w at order one less"""
        derivative = BiSeries(4, {(2, 1): 1}).derivative(0)
        self.assertEqual(derivative.order, 3)
        self.assertEqual(derivative.coeff(1, 1), 2)


class TestUniSeries(unittest.TestCase):
    """Test univariate series arithmetic"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_real_series_rejects_imaginary_parts(self):
        """Real series refuse coefficients with imaginary parts"""
        with self.assertRaises(ValueError):
            UniSeries(4, {2: 1j}, real=True)

    def test_divide_by_power(self):
        """Exact division lowers the order and refuses non-vanishing low terms"""
        series = UniSeries(5, {2: 1, 4: 3})
        quotient = series.divide_by_power(2)
        self.assertEqual(quotient.order, 3)
        self.assertEqual(quotient.coeff(2), 3)
        with self.assertRaises(ValueError):
            series.divide_by_power(3)

    def test_odd_and_even_parts(self):
        """Odd and even parts split the series"""
        series = UniSeries(5, {1: 1, 2: 2, 3: 3})
        self.assertEqual(series.odd_part().as_dict(), {1: 1, 3: 3})
        self.assertEqual(series.even_part().as_dict(), {2: 2})


class TestComposition(unittest.TestCase):
    """Test composition and inversion"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_composed_order(self):
        """A short outer series limits the order of the result"""
        self.assertEqual(composed_order(3, 10, 2), 7)
        self.assertEqual(composed_order(3, 10, None), 10)

    def test_inverse_of_catalan_series(self):
        """The inverse of R + R^2 has alternating Catalan coefficients"""
        series = UniSeries(5, {1: 1, 2: 1}, True, "R")
        inverse = invert_uni(series)
        expected = {1: 1, 2: -1, 3: 2, 4: -5, 5: 14}
        for n, value in expected.items():
            self.assertLess(abs(inverse.coeff(n) - value), TIGHT)
        self.assertTrue(inverse.real)

    def test_inverse_composes_to_identity(self):
        """g∘g^{-1} is the identity through the order"""
        series = UniSeries(8, {1: 2, 2: 1j, 5: -3})
        composed = compose_uni(series, invert_uni(series))
        self.assertLess(composed.max_abs_difference(UniSeries.identity(8)), TIGHT)

    def test_constant_term_is_refused(self):
        """An inner series with a constant term cannot be substituted"""
        with self.assertRaises(ConstantTermError):
            compose_uni(UniSeries(3, {1: 1}), UniSeries(3, {0: 1, 1: 1}))

    def test_vanishing_linear_part(self):
        """A series without linear part has no inverse"""
        with self.assertRaises(VanishingLinearPartError):
            invert_uni(UniSeries(4, {2: 1}))

    def test_pair_inverse(self):
        """Φ(Ψ, Ψ~) = z for Φ = z + a z w"""
        phi = BiSeries(6, {(1, 0): 1, (1, 1): 0.5 + 0.25j, (2, 0): 0.1})
        psi = invert_bi_pair(phi)
        back = compose_bi(phi, psi, psi.tilde())
        self.assertLess(back.max_abs_difference(BiSeries.first(6)), TIGHT)

    def test_square_modulus_of_rotation(self):
        """|λz|^2 = zw for |λ| = 1"""
        lam = mp.expjpi(mp.mpf(2) / 7)
        modulus = square_modulus(BiSeries(4, {(1, 0): lam}))
        self.assertLess(abs(modulus.coeff(1, 1) - 1), TIGHT)
        self.assertEqual(len(modulus), 1)

    def test_diagonal_of_hermitian_is_real(self):
        """z -> L(z, z) of zw is z^2 and real"""
        restricted = diagonal(BiSeries.product_monomial(4))
        self.assertTrue(restricted.real)
        self.assertEqual(restricted.coeff(2), 1)


class TestCharts(unittest.TestCase):
    """Test the real chart change of variables"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_sum_of_squares_is_zw(self):
        """x^2 + y^2 becomes zw"""
        series = BiSeries(2, {(2, 0): 1, (0, 2): 1}, "xy")
        converted = xy_to_zw(series)
        self.assertLess(abs(converted.coeff(1, 1) - 1), TIGHT)
        self.assertLess(abs(converted.coeff(2, 0)), TIGHT)
        self.assertLess(abs(converted.coeff(0, 2)), TIGHT)

    def test_chart_must_match(self):
        """Converting from the wrong chart raises"""
        with self.assertRaises(ValueError):
            xy_to_zw(BiSeries(2, {(1, 0): 1}))
        with self.assertRaises(ValueError):
            zw_to_xy(BiSeries(2, {(1, 0): 1}, "xy"))


class TestAnalytic(unittest.TestCase):
    """Test analytic substitutions"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_exp_coefficients(self):
        """exp(u) has coefficients 1/n!"""
        result = exp(UniSeries.identity(6))
        for n in range(7):
            self.assertLess(abs(result.coeff(n) - 1 / mp.factorial(n)), TIGHT)

    def test_sqrt_squares_back(self):
        """sqrt(1 + u + u^3)^2 = 1 + u + u^3"""
        series = UniSeries(7, {0: 1, 1: 1, 3: 1})
        root = sqrt(series)
        self.assertLess((root * root).max_abs_difference(series), TIGHT)

    def test_log1p_of_bivariate(self):
        """log(1 + zw) starts zw - (zw)^2/2"""
        result = log1p(BiSeries.product_monomial(4))
        self.assertLess(abs(result.coeff(2, 2) + mp.mpf(1) / 2), TIGHT)

    def test_reciprocal(self):
        """1/(2 - u) = 1/2 + u/4 + u^2/8 + ..."""
        result = reciprocal(UniSeries(4, {0: 2, 1: -1}))
        for n in range(5):
            self.assertLess(abs(result.coeff(n) - mp.mpf(2) ** (-n - 1)), TIGHT)

    def test_wrong_leading_term(self):
        """sqrt needs constant term one"""
        with self.assertRaises(LeadingTermError):
            sqrt(UniSeries(3, {0: 2, 1: 1}))


if __name__ == '__main__':
    unittest.main()
