#!/usr/bin/env python3

import json
import logging
import unittest
from dataclasses import replace

from eogx.config import get_default_config
from eogx.graph import parse_graph, parse_path_spec
from eogx.matrix01 import SQUARE
from eogx.oracle import Budget
from eogx.verify import (
    MAX_STORED_FAILURES,
    SUITES,
    VerifyReport,
    VerifySettings,
    chunk_bigraphs,
    reports_to_csv,
    reports_to_json,
    run_suites,
    serialize_instance,
    suite_extract,
    suite_inclined,
    suite_leaning,
)

logger = logging.getLogger(__name__)

SMALL = VerifySettings(
    seed=7,
    samples=5,
    max_tree_edges=4,
    max_bigraph_edges=4,
    max_matrix_size=3,
    random_vertices=6,
    max_n=3,
    threads=1,
    budget=Budget(nodes=200_000, seconds=600),
)


class TestReport(unittest.TestCase):
    def test_check_and_tighten(self):
        """Tests failure counting and the smallest slack per bound"""

        report = VerifyReport("demo")
        self.assertTrue(report.check(True, "fine", "x"))
        with self.assertLogs("eogx.verify", level="WARNING"):
            self.assertFalse(report.check(False, "broken", parse_path_spec("P:12")))
        report.tighten("bound", 4)
        report.tighten("bound", 2)
        report.tighten("bound", 3)
        report.tally("seen")
        report.tally("seen", 2)

        logger.info("Got report: %s", report.to_json())

        self.assertFalse(report.passed)
        self.assertEqual(1, report.failure_count)
        self.assertEqual("broken", report.failures[0].claim)
        self.assertEqual({"bound": 2}, report.margins)
        self.assertEqual({"seen": 3}, report.tallies)

    def test_stored_failures_are_capped(self):
        """Tests that counting goes on after the stored list is full"""

        report = VerifyReport("demo")
        with self.assertLogs("eogx.verify", level="WARNING"):
            for i in range(MAX_STORED_FAILURES + 5):
                report.check(False, "broken", i)

        other = VerifyReport("demo")
        with self.assertLogs("eogx.verify", level="WARNING"):
            other.check(False, "other", "y")
        report.merge(other)

        self.assertEqual(MAX_STORED_FAILURES + 6, report.failure_count)
        self.assertEqual(MAX_STORED_FAILURES, len(report.failures))

    def test_merge(self):
        """Tests that merged reports add instances and keep the tightest slack"""

        first = VerifyReport("demo", instances=3, margins={"a": 5.0}, tallies={"t": 1})
        second = VerifyReport("demo", instances=4, margins={"a": 1.0, "b": 2.0}, tallies={"t": 2})
        first.merge(second)

        self.assertEqual(7, first.instances)
        self.assertEqual({"a": 1.0, "b": 2.0}, first.margins)
        self.assertEqual({"t": 3}, first.tallies)
        self.assertTrue(first.passed)

    def test_serialize_instance(self):
        """Tests that stored instances read back"""

        text = serialize_instance(parse_path_spec("P:+132"))
        self.assertEqual(parse_path_spec("P:+132"), parse_graph(text))
        self.assertEqual("11\n11\n", serialize_instance(SQUARE))
        self.assertEqual("seed=7", serialize_instance("seed=7"))

    def test_formats(self):
        """Tests the JSON and CSV renderings"""

        report = VerifyReport("demo", instances=2, margins={"bound": 1.5})
        data = json.loads(reports_to_json([report]))
        csv_text = reports_to_csv([report])

        logger.info("Got CSV: %s", csv_text)

        self.assertEqual("demo", data[0]["suite"])
        self.assertTrue(data[0]["passed"])
        self.assertEqual(
            "suite,instances,failures,passed,margins\ndemo,2,0,True,bound=1.5\n", csv_text
        )


class TestSettings(unittest.TestCase):
    def test_from_config(self):
        """Tests the mapping of config keys to settings"""

        settings = VerifySettings.from_config(get_default_config(), 2)
        self.assertEqual(7, settings.seed)
        self.assertEqual(6, settings.max_tree_edges)
        self.assertEqual(8, settings.max_bigraph_edges)
        self.assertEqual(2, settings.threads)
        self.assertEqual(5_000_000, settings.budget.nodes)

    def test_chunks_are_seeded(self):
        """Tests that a chunk always draws the same bigraphs"""

        first = list(chunk_bigraphs(7, 2, 5, 8))
        second = list(chunk_bigraphs(7, 2, 5, 8))
        other = list(chunk_bigraphs(7, 3, 5, 8))

        self.assertEqual(first, second)
        self.assertNotEqual(first, other)


class TestSuites(unittest.TestCase):
    def test_run_suites_selection(self):
        """Tests suite names, deduplication and unknown names"""

        reports = run_suites(["semi", "semi"], SMALL)
        self.assertEqual(["semi"], [r.suite for r in reports])
        with self.assertRaises(ValueError):
            run_suites(["nonsense"], SMALL)
        self.assertIn("matrix", SUITES)

    def test_small_suites_pass(self):
        """Tests that the structural suites hold on small instances"""

        names = ["semi", "semi-right", "equivalence", "remarks", "paths", "k33", "add", "matrix"]
        reports = run_suites(names, SMALL)

        for report in reports:
            logger.info("Got report: %s", report.to_json())
            self.assertGreater(report.instances, 0, report.suite)
            self.assertTrue(report.passed, report.to_json())

        remarks = reports[names.index("remarks")]
        self.assertEqual(1, len(remarks.notes))

    def test_leaning_suite(self):
        """Tests the leaning bounds on small exhaustive and random bigraphs"""

        report = suite_leaning(SMALL)

        logger.info("Got margins: %s", report.margins)

        self.assertTrue(report.passed, report.to_json())
        self.assertIn("non-leaning c=1", report.margins)
        self.assertGreaterEqual(report.margins["non-inclined"], 0)

    def test_threads_do_not_change_reports(self):
        """Tests that a parallel sweep reports the same as a serial one"""

        serial = suite_leaning(SMALL)
        parallel = suite_leaning(replace(SMALL, threads=2))
        self.assertEqual(serial.to_json(), parallel.to_json())

    def test_inclined_suite(self):
        """Tests the inclined parts on small exhaustive and random bigraphs"""

        report = suite_inclined(SMALL)

        logger.info("Got tallies: %s", report.tallies)

        self.assertTrue(report.passed, report.to_json())
        self.assertGreater(report.instances, 0)

    def test_extract_suite_reaches_every_target(self):
        """Tests that every extraction target gets enough non-empty iterates"""

        report = suite_extract(SMALL)

        logger.info("Got tallies: %s", report.tallies)

        self.assertTrue(report.passed, report.to_json())
        for name in ("T0", "P:+132", "depth-2"):
            self.assertGreaterEqual(report.tallies.get(name, 0), SMALL.samples, name)

    def test_oracle_suite(self):
        """Tests the known exact values at small n"""

        report = run_suites(["oracle"], SMALL)[0]

        logger.info("Got report: %s", report.to_json())

        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(2 + 2 * 3, report.instances)

    def test_time_budget_fails_the_sweep(self):
        """Tests that a sweep cut short by the time budget does not pass"""

        hurried = replace(SMALL, budget=Budget(nodes=200_000, seconds=1e-6))
        with self.assertLogs("eogx.verify", level="WARNING"):
            report = suite_leaning(hurried)

        logger.info("Got report: %s", report.to_json())

        self.assertFalse(report.passed)
        self.assertTrue(any("time budget" in failure.claim for failure in report.failures))

    def test_matrix_suite_tallies(self):
        """Tests that the matrix sweep sees both kinds of matrix"""

        report = run_suites(["matrix"], SMALL)[0]
        self.assertGreater(report.tallies["staircase"], 0)
        self.assertGreater(report.tallies["non-staircase"], 0)


if __name__ == "__main__":
    unittest.main()
