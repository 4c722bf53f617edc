"""
Test Serialization - JSON documents for series, jets and polynomial maps, and file helpers
"""

import json
import os
import shutil
import sys
import tempfile
import unittest

from mpmath import mp

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from geometric_normalization.areapreserving.polymap import PLANE, X, Y, PlanarPolyMap
from geometric_normalization.arithmetic.continued_fraction import ContinuedFraction
from geometric_normalization.config import NormalFormConfig, apply_precision
from geometric_normalization.dynamics.admissible import resonant_free
from geometric_normalization.dynamics.jet import DiffeoJet, random_jet
from geometric_normalization.exceptions import SeriesFormatError
from geometric_normalization.series.bi import BiSeries
from geometric_normalization.series.uni import UniSeries
from geometric_normalization.utils.file_utils import (
    detect_file_encoding, read_json_document, safe_read_text_file, write_text_output,
)
from geometric_normalization.utils.serialization import (
    cf_from_dict, cf_to_dict, dumps, jet_from_dict, jet_to_dict, pair_to_dict, polymap_components_from_dict,
    polymap_components_to_dict, polymap_to_dict, polynomial_from_dict, series_from_dict, series_to_dict,
)


class TestSeriesDocuments(unittest.TestCase):
    """Test series and jet documents"""

    def setUp(self):
        apply_precision(NormalFormConfig())

    def test_series_keeps_full_precision(self):
        """A coefficient survives the decimal form to working precision"""
        series = BiSeries(3, {(2, 1): mp.mpc(1, 1) / 3})
        restored = series_from_dict(json.loads(dumps(series_to_dict(series))))
        self.assertEqual(restored.variables, "zw")
        self.assertLess(restored.max_abs_difference(series), mp.mpf(10) ** -90)

    def test_univariate_document(self):
        """Univariate documents carry their variable name"""
        document = series_to_dict(UniSeries(4, {2: mp.mpf(0.5)}, True, "R"))
        self.assertEqual(document["vars"], "R")
        self.assertEqual(document["entries"][0][0], 2)
        self.assertEqual(len(document["entries"][0]), 3)
        self.assertEqual(series_from_dict(document).coeff(2), mp.mpf(0.5))

    def test_malformed_series(self):
        """Missing keys, unknown variables and short entries are reported"""
        with self.assertRaises(SeriesFormatError):
            series_from_dict({"order": 3, "vars": "zw"})
        with self.assertRaises(SeriesFormatError):
            series_from_dict({"order": 3, "vars": "pq", "entries": []})
        with self.assertRaises(SeriesFormatError):
            series_from_dict({"order": 3, "vars": "zw", "entries": [[1, 0, "1"]]})
        with self.assertRaises(SeriesFormatError):
            series_from_dict({"order": 3, "vars": "z", "entries": [[1, "one", "0"]]})

    def test_jet_document(self):
        """Jets keep ω, order, parity and coefficients"""
        jet = random_jet("cf:2,1,43", 3, 4, 5, 0.5)
        document = jet_to_dict(jet)
        self.assertEqual(document["omega"], "cf:2,1,43")
        restored = jet_from_dict(document)
        self.assertEqual(restored.order, 4)
        self.assertEqual(set(restored.coefficients()), set(jet.coefficients()))
        self.assertEqual(jet_from_dict(document, order=6).order, 6)

    def test_jet_linear_entry_is_ignored(self):
        """The (1, 0) entry is fixed by ω"""
        jet = jet_from_dict({"omega": "golden", "order": 3, "coeffs": [[1, 0, "5", "0"], [2, 0, "1"]]})
        self.assertEqual(jet.coefficient(1, 0), jet.lam)
        self.assertEqual(jet.coefficient(2, 0), 1)

    def test_invalid_jet(self):
        """Invalid jets become format errors"""
        with self.assertRaises(SeriesFormatError):
            jet_from_dict({"order": 3})
        with self.assertRaises(SeriesFormatError):
            jet_from_dict({"omega": "golden", "order": 3, "odd": True, "coeffs": [[2, 0, "1", "0"]]})

    def test_pair_document(self):
        """Pairs list L, Γ and the residual"""
        pair = resonant_free(DiffeoJet("golden", {(1, 1): mp.mpc(0.5)}, 4))
        document = pair_to_dict(pair)
        self.assertEqual(document["order"], 4)
        self.assertEqual(document["Gamma"]["vars"], "R")
        self.assertEqual(document["L"]["vars"], "zw")

    def test_continued_fraction_document(self):
        """Quotients are written as strings"""
        cf = ContinuedFraction((2, 1, 43))
        self.assertEqual(cf_to_dict(cf), {"quotients": ["2", "1", "43"]})
        self.assertEqual(cf_from_dict({"quotients": [2, "1", 43]}), cf)
        with self.assertRaises(SeriesFormatError):
            cf_from_dict({"quotients": [2, 0]})

    def test_deterministic_output(self):
        """Equal inputs give identical text"""
        jet = random_jet("golden", 3, 4, 9, 0.5)
        self.assertEqual(dumps(jet_to_dict(jet)), dumps(jet_to_dict(random_jet("golden", 3, 4, 9, 0.5))))


class TestPolymapDocuments(unittest.TestCase):
    """Test exact polynomial documents"""

    def test_components(self):
        """Rational coefficients are written as p/q strings"""
        components = (X + Y ** 2 * PLANE.domain(1, 3), Y)
        document = polymap_components_to_dict(components, 2)
        self.assertIn([0, 2, "1/3"], document["components"][0])
        self.assertEqual(polymap_components_from_dict(document), components)

    def test_factors_and_jet(self):
        """Compositions list their factors and the jet"""
        planar_map = PlanarPolyMap.linear(0, -1, 1, 0).then(PlanarPolyMap.from_components(X + Y ** 2, Y))
        document = polymap_to_dict(planar_map, 2)
        self.assertEqual(len(document["factors"]), 2)
        self.assertEqual(len(document["jet"]), 2)

    def test_complex_coefficients_refused(self):
        """Area-preserving inputs are real"""
        with self.assertRaises(SeriesFormatError):
            polymap_components_from_dict({"vars": "xy", "components": [[[1, 0, "1", "2"]], [[0, 1, "1"]]]})
        with self.assertRaises(SeriesFormatError):
            polymap_components_from_dict({"vars": "zw", "components": [[], []]})

    def test_single_polynomial(self):
        """Generating functions are single polynomials"""
        u = polynomial_from_dict({"vars": "xy", "entries": [[2, 2, "1"], [3, 0, "-1/2"]]})
        self.assertEqual(u, X ** 2 * Y ** 2 - X ** 3 * PLANE.domain(1, 2))


class TestFileUtils(unittest.TestCase):
    """Test reading inputs and writing outputs"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_read_json_document(self):
        """A UTF-8 JSON file is parsed"""
        path = os.path.join(self.temp_dir, "jet.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"omega": "golden", "order": 3}, f)
        self.assertEqual(read_json_document(path)["omega"], "golden")
        self.assertIsInstance(detect_file_encoding(path), str)

    def test_malformed_json_reports_position(self):
        """Syntax errors carry line and column"""
        path = os.path.join(self.temp_dir, "broken.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write('{"omega": "golden",\n "order": }')
        with self.assertRaises(SeriesFormatError) as context:
            read_json_document(path)
        self.assertIn("line 2", str(context.exception))

    def test_missing_file(self):
        """Missing inputs raise FileNotFoundError"""
        with self.assertRaises(FileNotFoundError):
            safe_read_text_file(os.path.join(self.temp_dir, "absent.json"))

    def test_write_creates_directories(self):
        """Output directories are created on demand"""
        path = os.path.join(self.temp_dir, "nested", "out.json")
        write_text_output("{}", path)
        with open(path, encoding="utf-8") as f:
            self.assertEqual(f.read(), "{}\n")


if __name__ == '__main__':
    unittest.main()
