"""
Test Area-Preserving Maps - exact polynomial maps, shears, jet extension and generating functions
"""

import unittest
import sys
import os

from mpmath import mp

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from geometric_normalization.areapreserving.generating import generating_map, solve_implicit
from geometric_normalization.areapreserving.jets import area_defect, extend_jet, jet_of_map
from geometric_normalization.areapreserving.polymap import (
    PLANE, X, Y, PlanarPolyMap, inverse_jet, polynomial, rational_rotation, total_degree,
)
from geometric_normalization.areapreserving.shears import (
    hamiltonian_primitive, shear_map, span_decompose, span_nodes,
)
from geometric_normalization.config import NormalFormConfig, apply_precision
from geometric_normalization.exceptions import DecompositionError, JetNotExtendableError


class TestPlanarPolyMap(unittest.TestCase):
    """Test exact polynomial maps"""

    def test_total_degree(self):
        """The zero polynomial has degree -1"""
        self.assertEqual(total_degree(PLANE.zero), -1)
        self.assertEqual(total_degree(polynomial({(2, 1): 3, (0, 1): "1/2"})), 3)

    def test_inverse_jet(self):
        """(x + y^2, y) inverts to (x - y^2, y)"""
        p, q = inverse_jet((X + Y ** 2, Y), 3)
        self.assertEqual(p, X - Y ** 2)
        self.assertEqual(q, Y)

    def test_inverse_requires_invertible_linear_part(self):
        """A singular linear part has no inverse"""
        with self.assertRaises(ValueError):
            inverse_jet((X + Y, X + Y), 2)

    def test_factor_order(self):
        """then applies its argument last"""
        linear = PlanarPolyMap.linear(0, -1, 1, 0)
        shear = PlanarPolyMap.from_components(X + Y ** 2, Y)
        self.assertEqual(linear.then(shear).expand(), (-Y + X ** 2, X))
        self.assertEqual(shear.compose(linear).expand(), (-Y + X ** 2, X))

    def test_expansion_limit(self):
        """Expansion above the degree bound is refused"""
        cubic = PlanarPolyMap.from_components(X + Y ** 3, Y)
        with self.assertRaises(ValueError):
            cubic.then(cubic).then(cubic).expand(max_degree=8)

    def test_rational_rotation(self):
        """A quarter turn maps (1, 0) to (0, 1) exactly"""
        rotation = rational_rotation(mp.mpf("0.25"))
        self.assertEqual(rotation.apply((1, 0)), (0, 1))
        self.assertTrue(rotation.is_area_preserving())
        with self.assertRaises(ValueError):
            rational_rotation(mp.mpf("0.5"))


class TestShears(unittest.TestCase):
    """Test shears and span decompositions"""

    def test_shear_is_area_preserving(self):
        """Shears have Jacobian determinant exactly one"""
        shear = shear_map("3/5", "4/5", 2, 3)
        self.assertEqual(shear.jacobian_determinant(), PLANE.one)
        with self.assertRaises(ValueError):
            shear_map(1, 0, 1, 0)

    def test_hamiltonian_primitive(self):
        """(y^2, 0) comes from H = y^3/3"""
        H = hamiltonian_primitive(Y ** 2, PLANE.zero)
        self.assertEqual(H, Y ** 3 * PLANE.domain(1, 3))
        with self.assertRaises(DecompositionError):
            hamiltonian_primitive(X ** 2, PLANE.zero)

    def test_span_nodes_distinct(self):
        """degree + 1 distinct rational directions"""
        nodes = span_nodes(5)
        self.assertEqual(len(nodes), 6)
        self.assertEqual(len(set(nodes)), 6)
        for a, b in nodes:
            self.assertEqual(a ** 2 + b ** 2, 1)

    def test_span_decompose(self):
        """x^2 y + y^3 is a sum of cubes of linear forms"""
        terms = span_decompose(X ** 2 * Y + Y ** 3, 3)
        self.assertEqual(len(terms), 4)
        with self.assertRaises(DecompositionError):
            span_decompose(X ** 2 + Y ** 3, 3)


class TestJetExtension(unittest.TestCase):
    """Test extension of area-preserving jets to polynomial maps"""

    def test_quadratic_shear_jet(self):
        """(x + y^2, y) extends through H = y^3/3"""
        jet = (X + Y ** 2, Y)
        extended = extend_jet(jet, 2)
        self.assertEqual(extended.jet(2), jet)
        self.assertTrue(extended.is_area_preserving())

    def test_odd_extension(self):
        """Odd jets extend to odd maps"""
        jet = (X + Y ** 3, Y)
        extended = extend_jet(jet, 3, odd=True)
        self.assertTrue(extended.is_odd())
        self.assertEqual(extended.jet(3), jet)
        self.assertTrue(extended.is_area_preserving())

    def test_rotation_jet(self):
        """A rotation followed by a cubic term"""
        rotation = PlanarPolyMap.linear("3/5", "-4/5", "4/5", "3/5")
        p, q = rotation.then(PlanarPolyMap.from_components(X + Y ** 3, Y)).jet(3)
        extended = extend_jet((p, q), 3)
        self.assertEqual(extended.jet(3), (p, q))
        self.assertEqual(area_defect(extended.jet(3), 3), PLANE.zero)

    def test_non_hamiltonian_degree(self):
        """(x + x^2, y) fails at degree 2"""
        with self.assertRaises(JetNotExtendableError) as context:
            extend_jet((X + X ** 2, Y), 2)
        self.assertEqual(context.exception.degree, 2)

    def test_wrong_determinant(self):
        """(2x, y) fails at degree 1"""
        with self.assertRaises(JetNotExtendableError) as context:
            extend_jet((2 * X, Y))
        self.assertEqual(context.exception.degree, 1)

    def test_odd_request_with_even_terms(self):
        """An even term blocks an odd extension"""
        with self.assertRaises(JetNotExtendableError) as context:
            extend_jet((X + Y ** 2, Y), 3, odd=True)
        self.assertEqual(context.exception.degree, 2)

    def test_jet_of_map(self):
        """Truncation of explicit components"""
        p, q = jet_of_map((X + Y ** 2 + X ** 5, Y), 3)
        self.assertEqual(p, X + Y ** 2)
        self.assertEqual(q, Y)


class TestGeneratingMap(unittest.TestCase):
    """Test maps generated by u(x, y')"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_square_product_generator(self):
        """u = x^2 y'^2 through order 5"""
        u = X ** 2 * Y ** 2
        x_prime, y_prime = solve_implicit(u, 5)
        self.assertEqual(y_prime, Y - 2 * X * Y ** 2 + 8 * X ** 2 * Y ** 3)
        self.assertEqual(x_prime, X + 2 * X ** 2 * Y - 4 * X ** 3 * Y ** 2)

    def test_area_defect_vanishes(self):
        """Generated maps preserve area through the order"""
        result = generating_map(X ** 3 * Y + Y ** 4 * PLANE.domain(1, 2), 6)
        self.assertEqual(result.area_defect, PLANE.zero)
        self.assertIsNone(result.jet)

    def test_complex_jet(self):
        """With ω the result carries the jet λ·T in (z, z̄)"""
        result = generating_map(X ** 2 * Y ** 2, 5, "golden")
        self.assertEqual(result.jet.order, 5)
        self.assertEqual(min(j + k for j, k in result.jet.coefficients()), 3)
        self.assertEqual(result.jet.coefficient(1, 0), result.jet.lam)

    def test_low_degree_generator_refused(self):
        """u must start at degree three"""
        with self.assertRaises(ValueError):
            generating_map(X * Y, 4)


if __name__ == '__main__':
    unittest.main()
