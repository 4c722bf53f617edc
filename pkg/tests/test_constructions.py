"""
Test Constructions - divergent examples at super-Liouville rotation numbers and classic holomorphic models
"""

import os
import sys
import unittest

from mpmath import mp

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from geometric_normalization.arithmetic.liouville import lambda_power_distance, odd_super_liouville_construct
from geometric_normalization.arithmetic.rotation import RotationNumber, as_rotation_number
from geometric_normalization.config import (
    NormalFormConfig, admitting_divisor, apply_precision, small_divisor_floor, working_precision,
)
from geometric_normalization.constructions.classic import (
    classic_map, covering_identity_check, holomorphic_with_jet, multiplied,
)
from geometric_normalization.constructions.divergent import (
    lifted_config, odd_siegel_divergent, siegel_divergent, tau_divergent,
)
from geometric_normalization.dynamics.admissible import AdmissibleSolver, ResonantPolicy
from geometric_normalization.dynamics.jet import DiffeoJet
from geometric_normalization.exceptions import PrecisionError, SmallDivisorError

TIGHT = mp.mpf(10) ** -50
OMEGA = "cf:2,1,43"


class TestDivergentExamples(unittest.TestCase):
    """Test the witness-driven constructions at ω = 44/131"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_siegel_example(self):
        """|L_41| exceeds 2·3!·|cos 2πω|"""
        example = siegel_divergent(OMEGA)
        self.assertTrue(example.complete)
        self.assertTrue(example.holds)
        record = example.witnesses[0]
        self.assertEqual(record.n, 3)
        self.assertAlmostEqual(float(record.bound), 6.16, places=1)
        self.assertGreater(record.attained, 20)
        self.assertEqual(abs(example.jet.coefficient(1, 3)), 1)
        self.assertEqual(example.jet.coefficient(1, 3), example.jet.coefficient(4, 0))
        self.assertEqual(example.series.order, 5)

    def test_tau_example(self):
        """|τ_4| exceeds the same bound"""
        example = tau_divergent(OMEGA)
        self.assertTrue(example.holds)
        record = example.witnesses[0]
        self.assertEqual(record.n, 3)
        self.assertGreater(record.attained, 40)
        self.assertLess(abs(abs(example.series.coeff(4)) - record.attained), TIGHT)
        self.assertEqual(example.jet.coefficient(1, 3), -example.jet.coefficient(4, 0))

    def test_odd_example(self):
        """Odd jet at ω = 22/131 with |L_71| above 2·3!·|cos 2πω|"""
        example = odd_siegel_divergent(OMEGA)
        self.assertTrue(example.holds)
        self.assertTrue(example.jet.odd)
        record = example.witnesses[0]
        self.assertEqual(record.n, 3)
        self.assertAlmostEqual(float(record.bound), 5.9, places=1)
        self.assertEqual(set(example.jet.coefficients()), {(1, 6), (7, 0)})
        self.assertEqual(example.series.order, 8)

    def test_odd_example_needs_odd_jet(self):
        """Even jets are refused"""
        omega = RotationNumber.parse(OMEGA).halved()
        with self.assertRaises(ValueError):
            odd_siegel_divergent(OMEGA, DiffeoJet(omega, {}, 3))

    def test_no_witness(self):
        """The golden mean has no witnesses"""
        example = siegel_divergent("golden", scan_limit=50)
        self.assertFalse(example.complete)
        self.assertFalse(example.holds)
        self.assertIsNone(example.series)

    @unittest.skipUnless(os.environ.get("GEONORM_SLOW") == "1", "set GEONORM_SLOW=1 for the second witness")
    def test_second_witness(self):
        """Depth four adds the witness q_3 = 131 at high precision"""
        omega = RotationNumber.from_cf(odd_super_liouville_construct([2, 1], 2, 4))
        config = NormalFormConfig(precision_bits=omega.required_precision())
        apply_precision(config)
        self.assertGreater(lifted_config(omega, 133, config).precision_bits, 2900)
        example = siegel_divergent(omega, p_max=2, config=config, scan_limit=140)
        self.assertTrue(example.complete)
        self.assertEqual([record.n for record in example.witnesses], [3, 131])
        self.assertTrue(example.holds)


class TestPrecisionLift(unittest.TestCase):
    """Test raising the precision so the guard floor admits tiny divisors"""

    # ω = 2^70 / (2^70 + 1), so |1 - λ| ≈ 2π·2^-70 ≈ 2^-67.35 sits below the default floor 2^-64
    NEAR_ONE = f"cf:1,{2 ** 70}"

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_large_divisor_keeps_config(self):
        """Divisors above the floor need no change"""
        config = NormalFormConfig()
        self.assertIs(admitting_divisor(mp.mpf(2) ** -10, config), config)

    def test_small_divisor_raises_precision(self):
        """3·2^-102 ≈ 2^-100.42 needs ceil(4·100.42) + 64 bits"""
        distance = 3 * mp.mpf(2) ** -102
        lifted = admitting_divisor(distance, NormalFormConfig())
        self.assertEqual(lifted.precision_bits, 466)
        self.assertLess(small_divisor_floor(lifted), distance)

    def test_vanishing_divisor(self):
        """A divisor of zero cannot be admitted"""
        with self.assertRaises(PrecisionError):
            admitting_divisor(mp.mpf(0), NormalFormConfig())

    def test_lifted_config_uses_smallest_power(self):
        """The lift is driven by |1 - λ| for ω just below one"""
        lifted = lifted_config(self.NEAR_ONE, 3, NormalFormConfig())
        self.assertEqual(lifted.precision_bits, 334)
        distance, _ = lambda_power_distance(self.NEAR_ONE, 1)
        self.assertLess(small_divisor_floor(lifted), distance)

    def test_solver_runs_after_lift(self):
        """The solver trips at the default floor and passes once lifted"""
        config = NormalFormConfig()
        omega = as_rotation_number(self.NEAR_ONE)
        jet = DiffeoJet(omega, {(2, 0): 1}, 4, False, config, check_resonance=False)
        with self.assertRaises(SmallDivisorError):
            AdmissibleSolver(jet, 4, ResonantPolicy(), config).step()

        lifted = lifted_config(omega, 4, config)
        with working_precision(lifted):
            jet = DiffeoJet(omega, {(2, 0): 1}, 4, False, lifted, check_resonance=False)
            solver = AdmissibleSolver(jet, 4, ResonantPolicy(), lifted)
            while solver.degree < 4:
                solver.step()
            self.assertEqual(solver.degree, 4)


class TestClassicMaps(unittest.TestCase):
    """Test the holomorphic model maps"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_quadratic_model(self):
        """λz(1 - z) has F_20 = -λ"""
        jet = classic_map("golden", "yoccoz", 6)
        self.assertEqual(jet.coefficient(2, 0), -jet.lam)
        self.assertTrue(jet.is_holomorphic())

    def test_exponential_model(self):
        """λz e^z has F_n0 = λ/(n-1)!"""
        jet = classic_map("golden", "exp", 6)
        self.assertLess(abs(jet.coefficient(4, 0) - jet.lam / 6), TIGHT)

    def test_invalid_arguments(self):
        """Unknown kinds and d < 1 are refused"""
        with self.assertRaises(ValueError):
            classic_map("golden", "henon")
        with self.assertRaises(ValueError):
            classic_map("golden", "corge", d=0)

    def test_covering_identity(self):
        """f_d^d = P_{dω,d}(z^d) exactly"""
        for d in (2, 3):
            self.assertLess(covering_identity_check("golden", d, 12), TIGHT)

    def test_multiplied(self):
        """d·ω keeps the continued fraction and records the factor"""
        self.assertEqual(str(multiplied("cf:2,1,43", 2)), "cf:2,1,43*2")

    def test_holomorphic_with_jet(self):
        """The holomorphic extension keeps the prescribed jet"""
        jet = classic_map("golden", "yoccoz", 4)
        extended = holomorphic_with_jet(jet)
        self.assertEqual(extended.order, 5)
        self.assertTrue(extended.is_holomorphic())
        difference = extended.as_univariate().with_order(4).max_abs_difference(jet.as_univariate())
        self.assertLess(difference, TIGHT)
        with self.assertRaises(ValueError):
            holomorphic_with_jet(jet, 4)


if __name__ == '__main__':
    unittest.main()
