"""
Test CLI - subcommands, output documents and exit codes
"""

import json
import os
import shutil
import sys
import tempfile
import unittest

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from geometric_normalization.cli import EXIT_GUARD, EXIT_OK, EXIT_USAGE, run
from geometric_normalization.config import NormalFormConfig, apply_precision

RANDOM_JET = ["--order", "5", "--seed", "3", "--degree", "3", "--bound", "0.5"]


class TestCommandLine(unittest.TestCase):
    """Test the geonorm command line"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.output = os.path.join(self.temp_dir, "out.json")

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        apply_precision(NormalFormConfig())

    def _write(self, name, document):
        path = os.path.join(self.temp_dir, name)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f)
        return path

    def _read(self):
        with open(self.output, encoding="utf-8") as f:
            return json.load(f)

    def test_admissible(self):
        """A random jet gives a pair document"""
        self.assertEqual(run(["admissible"] + RANDOM_JET + ["--output", self.output]), EXIT_OK)
        document = self._read()
        self.assertEqual(document["order"], 5)
        self.assertEqual(document["L"]["vars"], "zw")

    def test_random_jet_is_reproducible_without_seed(self):
        """Two runs without --seed print identical documents"""
        second = os.path.join(self.temp_dir, "again.json")
        options = ["admissible", "--omega", "golden", "--order", "4"]
        self.assertEqual(run(options + ["--output", self.output]), EXIT_OK)
        self.assertEqual(run(options + ["--output", second]), EXIT_OK)
        with open(self.output, encoding="utf-8") as f, open(second, encoding="utf-8") as g:
            self.assertEqual(f.read(), g.read())

    def test_verify_resonant_free_pair(self):
        """The resonant-free pair passes verification"""
        self.assertEqual(run(["verify"] + RANDOM_JET + ["--output", self.output]), EXIT_OK)
        self.assertTrue(self._read()["passed"])

    def test_bruno_csv(self):
        """Golden partial sums as CSV"""
        code = run(["bruno", "--depth", "5", "--format", "csv", "--output", self.output])
        self.assertEqual(code, EXIT_OK)
        with open(self.output, encoding="utf-8") as f:
            lines = f.read().strip().splitlines()
        self.assertEqual(lines[0], "k,partial_sum")
        self.assertEqual(len(lines), 6)

    def test_non_bruno_guard(self):
        """Quotients past the exponent budget exit with code 2"""
        self.assertEqual(run(["bruno", "--non-bruno", "--depth", "5", "--output", self.output]), EXIT_GUARD)

    def test_covering(self):
        """The covering identity residual is negligible"""
        self.assertEqual(run(["covering", "--d", "3", "--output", self.output]), EXIT_OK)
        document = self._read()
        self.assertEqual(document["order"], 8)
        self.assertLess(float(document["residual"]), 1e-50)

    def test_odd_liouville(self):
        """The default seed builds [2, 1, 43]"""
        self.assertEqual(run(["odd-liouville", "--output", self.output]), EXIT_OK)
        document = self._read()
        self.assertEqual(document["cf"]["quotients"], ["2", "1", "43"])
        self.assertEqual(document["denominators"][-1], "131")
        self.assertTrue(document["holds"])

    def test_example_siegel(self):
        """The Siegel example at 44/131 holds"""
        code = run(["example-siegel", "--omega", "cf:2,1,43", "--output", self.output])
        self.assertEqual(code, EXIT_OK)
        document = self._read()
        self.assertTrue(document["holds"])
        self.assertEqual(document["witnesses"][0]["n"], 3)

    def test_example_without_witness(self):
        """No witnesses means an incomplete example and exit code 2"""
        code = run(["example-siegel", "--scan-limit", "20", "--output", self.output])
        self.assertEqual(code, EXIT_GUARD)
        self.assertFalse(self._read()["complete"])

    def test_jet_extend(self):
        """A polynomial jet document is extended"""
        path = self._write("jet.json", {"vars": "xy", "components": [[[1, 0, "1"], [0, 2, "1"]], [[0, 1, "1"]]]})
        self.assertEqual(run(["jet-extend", "--input", path, "--output", self.output]), EXIT_OK)
        document = self._read()
        self.assertEqual(document["order"], 2)
        self.assertFalse(document["odd"])
        self.assertGreater(len(document["factors"]), 1)

    def test_growth_csv(self):
        """Growth profiles of a series document"""
        path = self._write("series.json", {"order": 5, "vars": "z",
                                           "entries": [[n, str(2 ** n), "0"] for n in range(1, 6)]})
        code = run(["growth", "--input", path, "--format", "csv", "--output", self.output])
        self.assertEqual(code, EXIT_OK)
        with open(self.output, encoding="utf-8") as f:
            self.assertEqual(len(f.read().strip().splitlines()), 6)

    def test_usage_errors(self):
        """Bad usage exits with code 1"""
        self.assertEqual(run([]), EXIT_USAGE)
        self.assertEqual(run(["no-such-command"]), EXIT_USAGE)
        self.assertEqual(run(["admissible", "--order", "five"]), EXIT_USAGE)

    def test_missing_input(self):
        """Missing input files exit with code 1"""
        missing = os.path.join(self.temp_dir, "absent.json")
        self.assertEqual(run(["growth", "--input", missing]), EXIT_USAGE)

    def test_malformed_input(self):
        """Malformed JSON exits with code 1"""
        path = os.path.join(self.temp_dir, "broken.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write("{")
        self.assertEqual(run(["growth", "--input", path]), EXIT_USAGE)


if __name__ == '__main__':
    unittest.main()
