#!/usr/bin/env python3

import io
import json
import logging
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest import mock

from eogx.__main__ import EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main
from eogx.config import CONFIG_ENV, THREADS_ENV
from eogx.graph import parse_graph, parse_path_spec, reverse
from eogx.verify import SUITES

logger = logging.getLogger(__name__)

TEST_DIR = Path(__file__).parent


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.dir = Path(tmp.name)

        environ = mock.patch.dict(os.environ, {CONFIG_ENV: str(self.dir / "config.json")})
        environ.start()
        self.addCleanup(environ.stop)
        os.environ.pop(THREADS_ENV, None)

    def _run(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        logger.info("Got exit code %d for %s: %s", code, argv, out.getvalue())
        return code, out.getvalue(), err.getvalue()

    def test_classify(self):
        """Tests text and JSON verdicts"""

        code, out, _ = self._run("classify", "P:132")
        self.assertEqual(EXIT_OK, code)
        self.assertTrue(out.startswith("Linear (flipped path)"))

        code, out, _ = self._run("classify", "--json", "P:1324")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual("OmegaNLogN", json.loads(out)["growth"])

    def test_contain(self):
        """Tests both answers of the containment query"""

        code, out, _ = self._run("contain", "P:132", "P:12")
        self.assertEqual(EXIT_OK, code)
        self.assertTrue(out.startswith("Contained:"))

        code, out, _ = self._run("contain", "P:12", "P:123")
        self.assertEqual(EXIT_NEGATIVE, code)
        self.assertEqual("Not contained\n", out)

        code, out, _ = self._run("contain", "--json", "P:12", "P:123")
        self.assertEqual({"contains": False, "copies": []}, json.loads(out))

    def test_turan(self):
        """Tests exact values, the witness file and budget exhaustion"""

        witness = self.dir / "witness.eog"
        code, out, _ = self._run("turan", "--n", "4", "--threads", "1", "--out", str(witness), "P:12")
        self.assertEqual(EXIT_OK, code)
        self.assertTrue(out.startswith("2 (Exact)"))
        self.assertEqual(2, parse_graph(witness.read_text()).m)

        code, out, _ = self._run("turan", "--n", "5", "--threads", "1", "--budget-nodes", "1", "P:123")
        self.assertEqual(EXIT_BUDGET, code)
        self.assertIn("LowerBoundOnly", out)

    def test_table1(self):
        """Tests a restricted table in JSON"""

        code, out, _ = self._run("table1", "--json", "--max-n", "3", "--threads", "1", "12345")
        rows = json.loads(out)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(1, len(rows))
        self.assertEqual("12345", rows[0]["labeling"])

    def test_matrix(self):
        """Tests the matrix subcommands"""

        code, out, _ = self._run("matrix", "classify", "M:11;01")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual("Linear (staircase (1,2))\n", out)

        code, out, _ = self._run("matrix", "classify", "M:10;01")
        self.assertEqual(EXIT_NEGATIVE, code)
        self.assertTrue(out.startswith("Out of scope"))

        code, out, _ = self._run("matrix", "staircase", "--ops", "M:11;01")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual("Staircase (1,2)\n  from (1): left@0 bottom@1\n", out)

        code, out, _ = self._run("matrix", "eex", "--n", "2", str(TEST_DIR / "square.mat"))
        self.assertEqual(EXIT_OK, code)
        self.assertTrue(out.startswith("3 (Exact)"))

    def test_bipartitions_and_reverse(self):
        """Tests the graph utility commands"""

        code, out, _ = self._run("bipartitions", "P:12")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(2, out.count("L 0") + out.count("R 0"))

        code, out, _ = self._run("bipartitions", str(TEST_DIR / "odd_cycle.eog"))
        self.assertEqual(EXIT_NEGATIVE, code)
        self.assertEqual("Not bipartite\n", out)

        code, _, err = self._run("bipartitions", str(TEST_DIR / "triangle.eog"))
        self.assertEqual(EXIT_USAGE, code)
        self.assertIn("connected", err)

        code, out, _ = self._run("reverse", "P:132")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(reverse(parse_path_spec("P:132")), parse_graph(out))

    def test_peel(self):
        """Tests extension sequences and the bigraph requirement"""

        code, out, _ = self._run("peel", "P:+132")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual("Depth 1, root 1-2\n  1. at 1-2: left 0, right 3\n", out)

        code, out, _ = self._run("peel", "P:-132")
        self.assertEqual(EXIT_NEGATIVE, code)

        code, _, err = self._run("peel", "P:132")
        self.assertEqual(EXIT_USAGE, code)
        self.assertTrue(err.startswith("Error:"))

    def test_verify(self):
        """Tests suite listing and a small run written to a file"""

        code, out, _ = self._run("verify", "--list")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(list(SUITES), out.split())

        report = self.dir / "report.json"
        code, out, _ = self._run(
            "verify", "--suite", "semi", "--max-edges", "4", "--threads", "1", "--out", str(report)
        )
        self.assertEqual(EXIT_OK, code)
        self.assertIn("semi:", out)
        self.assertTrue(json.loads(report.read_text())[0]["passed"])

    def test_errors(self):
        """Tests bad inputs and usage errors"""

        code, _, err = self._run("classify", str(self.dir / "missing.eog"))
        self.assertEqual(EXIT_USAGE, code)
        self.assertIn("Cannot read graph file", err)

        code, _, err = self._run("turan", "--n", "0", "P:12")
        self.assertEqual(EXIT_USAGE, code)

        with redirect_stderr(io.StringIO()), self.assertRaises(SystemExit) as raised:
            main(["bogus"])
        self.assertEqual(2, raised.exception.code)


if __name__ == "__main__":
    unittest.main()
