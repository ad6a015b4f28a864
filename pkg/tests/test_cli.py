import json
import os
import tempfile
import unittest
from unittest.mock import patch

from confalg.ainf import AInfStructure
from confalg.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, build_parser, main, run
from confalg.manifest import parse_manifest

NOT_ASSOCIATIVE = {
    "modules": {"A": {"components": {"0": ["a", "b"]}}},
    "maps": [{"name": "mult", "source": "A", "target": "A", "arity": 2, "degree": 0, "table": [
        {"args": ["a", "a"], "value": [{"gen": "b", "poly": "1"}]},
        {"args": ["a", "b"], "value": [{"gen": "a", "poly": "1"}]},
    ]}],
    "structures": {"broken": {"kind": "assoc", "module": "A", "mult": "mult"}},
}


class TestCli(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, data):
        path = os.path.join(self.tmp.name, name)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f)
        return path

    def run_cli(self, *argv):
        return run(build_parser().parse_args(list(argv)))

    def test_list(self):
        code, document = self.run_cli("list")
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("virasoro", document["manifests"])

    def test_check_lie(self):
        code, document = self.run_cli("check-lie", "virasoro")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(document["structure"], "virasoro")
        self.assertTrue(document["report"]["passed"])

    def test_check_assoc_failure(self):
        code, document = self.run_cli("check-assoc", self.write("broken.json", NOT_ASSOCIATIVE))
        self.assertEqual(code, EXIT_FAIL)
        self.assertFalse(document["report"]["passed"])
        self.assertEqual(len(document["report"]["witness"]), 3)

    def test_up_to_required(self):
        code, document = self.run_cli("check-ainf", "phi-extension")
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("--up-to", document["error"])
        code, _ = self.run_cli("check-ainf", "phi-extension", "--up-to", "4")
        self.assertEqual(code, EXIT_PASS)

    def test_wrong_kind(self):
        code, document = self.run_cli("check-lie", "virasoro", "--structure", "derivation")
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("cochain", document["error"])

    def test_bad_manifest(self):
        data = json.loads(json.dumps(NOT_ASSOCIATIVE))
        data["maps"][0]["table"][0]["args"] = ["a", "x"]
        code, document = self.run_cli("check-assoc", self.write("bad.json", data))
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(document["path"], "maps[0].table[0].args")

    def test_transfer(self):
        out = os.path.join(self.tmp.name, "transferred.json")
        code, document = self.run_cli("transfer", "contraction-rank3", "--up-to", "4", "--out", out)
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(document["out"], out)
        transferred = parse_manifest(out).structure("transferred")
        self.assertIsInstance(transferred, AInfStructure)
        self.assertEqual(transferred.module.generators, ["a"])

    def test_cocycles(self):
        self.assertEqual(self.run_cli("cocycle", "virasoro")[0], EXIT_PASS)
        self.assertEqual(self.run_cli("cocycle", "cur-mat2")[0], EXIT_PASS)

    def test_random_lie_delta(self):
        code, document = self.run_cli("lie-delta", "virasoro", "--seed", "4", "--degree", "1")
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("delta", document["structures"])
        code, document = self.run_cli("lie-delta", "virasoro", "--seed", "4")
        self.assertEqual(code, EXIT_INPUT)

    def test_two_term(self):
        self.assertEqual(self.run_cli("check-2term", "two-algebra-roundtrip")[0], EXIT_PASS)
        self.assertEqual(self.run_cli("roundtrip", "two-algebra-roundtrip")[0], EXIT_PASS)

    def test_functor_t_on_bundled_two_algebra(self):
        code, document = self.run_cli("functor-t", "two-algebra-roundtrip")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(document["structure"], "S-image")
        self.assertIn("T", document["structures"])

    def test_skew_up_to_selects_ainf(self):
        code, document = self.run_cli("skew", "phi-extension", "--up-to", "4")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(document["structure"], "phi-extension")
        code, document = self.run_cli("skew", "phi-extension")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(document["structure"], "rationals")

    @patch("builtins.print")
    def test_main_prints_json(self, mock_print):
        self.assertEqual(main(["skew", "cur-mat2"]), EXIT_PASS)
        document = json.loads(mock_print.call_args[0][0])
        self.assertEqual(document["command"], "skew")
        self.assertIn("skew", document["structures"])


if __name__ == '__main__':
    unittest.main()
