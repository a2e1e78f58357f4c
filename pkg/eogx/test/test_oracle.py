#!/usr/bin/env python3

import itertools
import logging
import unittest

from eogx.containment import contains
from eogx.graph import EdgeOrderedGraph, canonical_code, parse_path_spec, reverse
from eogx.oracle import (
    Budget,
    PendantEnd,
    SearchStatus,
    canonical_complete_orderings,
    enumerate_eogs,
    exact_ex,
    k33_canonical_sample,
    pendant_extension,
    sandwich_check,
    table1_report,
    table1_rows,
    _first_optimum,
)

logger = logging.getLogger(__name__)


class TestEnumeration(unittest.TestCase):
    def test_small_counts(self):
        """Tests the number of classes on three and four vertices"""

        self.assertEqual(3, len(list(enumerate_eogs(3, 3))))
        self.assertEqual(3, len(list(enumerate_eogs(4, 2))))
        self.assertEqual([], list(enumerate_eogs(1, 3)))

    def test_against_brute_force(self):
        """Tests the orderly enumeration against every labeling of every edge set"""

        pairs = list(itertools.combinations(range(4), 2))
        expected = set()
        for m in range(1, 4):
            for chosen in itertools.permutations(pairs, m):
                graph = EdgeOrderedGraph(
                    ((x, y, r) for r, (x, y) in enumerate(chosen, 1)), range(4)
                ).without_isolated()
                expected.add(canonical_code(graph))

        found = [canonical_code(graph) for graph in enumerate_eogs(4, 3)]

        logger.info("Got %d classes", len(found))

        self.assertEqual(len(found), len(set(found)))
        self.assertEqual(expected, set(found))

    def test_visitor(self):
        """Tests that the visitor sees every graph"""

        seen = []
        listed = list(enumerate_eogs(3, 2, visitor=seen.append))
        self.assertEqual(listed, seen)


class TestExactEx(unittest.TestCase):
    def _assert_ex(self, n, spec, expected):
        pattern = parse_path_spec(spec)
        result = exact_ex(n, pattern)
        logger.info("Got result: %s", result.to_json())
        self.assertEqual(expected, result.value)
        self.assertEqual(SearchStatus.EXACT, result.status)
        self.assertEqual(expected, result.witness.m)
        self.assertLessEqual(result.witness.n, n)
        self.assertFalse(contains(result.witness, pattern))
        return result

    def test_matchings(self):
        """Tests that two-edge paths leave only matchings"""

        self._assert_ex(3, "P:12", 1)
        self._assert_ex(4, "P:12", 2)
        self._assert_ex(6, "P:12", 3)

    def test_trivial_cases(self):
        """Tests single edges and patterns bigger than n"""

        self._assert_ex(4, "P:1", 0)
        self._assert_ex(2, "P:123", 1)
        self._assert_ex(3, "P:123", 3)
        self._assert_ex(1, "P:12", 0)

    def test_complete_witness(self):
        """Tests a path of infinite order chromatic number at n = 4"""

        self._assert_ex(4, "P:1423", 6)

    def test_reversal_symmetry(self):
        """Tests that a pattern and its reverse have the same values"""

        pattern = parse_path_spec("P:132")
        for n in range(2, 6):
            forward = exact_ex(n, pattern)
            backward = exact_ex(n, reverse(pattern))
            self.assertEqual(forward.value, backward.value, n)

    def test_monotone_in_n(self):
        """Tests that ex grows with n"""

        values = [exact_ex(n, parse_path_spec("P:123")).value for n in range(1, 6)]

        logger.info("Got values: %s", values)

        self.assertEqual(values, sorted(values))

    def test_threads_do_not_change_results(self):
        """Tests the same value, node count and witness with one to three workers"""

        pattern = parse_path_spec("P:132")
        single = exact_ex(5, pattern, threads=1)
        for threads in (2, 3):
            parallel = exact_ex(5, pattern, threads=threads)
            self.assertEqual(single.value, parallel.value)
            self.assertEqual(single.nodes_explored, parallel.nodes_explored)
            self.assertEqual(single.witness, parallel.witness)

    def test_first_optimum(self):
        """Tests that ties go to the earliest witness and missing witnesses are skipped"""

        early, late = ((0, 1),), ((1, 2),)
        self.assertEqual((2, late), _first_optimum([(1, early), (2, None), (2, late), (2, early)]))
        self.assertEqual((1, early), _first_optimum([(1, early), (1, late)]))
        self.assertEqual((0, ()), _first_optimum([(0, None), (0, None)]))

    def test_budget(self):
        """Tests that an exhausted budget reports a lower bound"""

        result = exact_ex(5, parse_path_spec("P:123"), Budget(nodes=1, seconds=600))

        logger.info("Got result: %s", result.to_json())

        self.assertEqual(SearchStatus.LOWER_BOUND_ONLY, result.status)
        self.assertFalse(result.is_exact)
        self.assertGreaterEqual(result.value, 3)

    def test_witness_only(self):
        """Tests the complete-graph shortcut"""

        found = exact_ex(4, parse_path_spec("P:1423"), witness_only=True)
        missing = exact_ex(4, parse_path_spec("P:12"), witness_only=True)

        self.assertEqual(SearchStatus.EXACT, found.status)
        self.assertEqual(6, found.value)
        self.assertEqual(SearchStatus.LOWER_BOUND_ONLY, missing.status)

    def test_bad_arguments(self):
        """Tests n and pattern checks"""

        with self.assertRaises(ValueError):
            exact_ex(0, parse_path_spec("P:12"))
        with self.assertRaises(ValueError):
            exact_ex(3, EdgeOrderedGraph([], vertices=[0]))


class TestConstructions(unittest.TestCase):
    def test_pendant_extension(self):
        """Tests the new smallest edge at either end of the old smallest edge"""

        outer = pendant_extension(parse_path_spec("P:123"), PendantEnd.END1)
        inner = pendant_extension(parse_path_spec("P:123"), PendantEnd.END2)

        logger.info("Got extensions: %s %s", outer, inner)

        self.assertTrue(outer.is_path())
        self.assertIn(outer.path_sequence(), ((1, 2, 3, 4), (4, 3, 2, 1)))
        self.assertFalse(inner.is_path())
        self.assertEqual(3, inner.degree(1))
        self.assertEqual(1, inner.rank(1, 4))

    def test_pendant_extension_named_vertices(self):
        """Tests fresh vertex names for graphs with string vertices"""

        graph = EdgeOrderedGraph([("v0", "a", 1)])
        extended = pendant_extension(graph, PendantEnd.END2)
        self.assertEqual(1, extended.rank("a", "v1"))

    def test_sandwich(self):
        """Tests the pendant-edge sandwich on a short path"""

        check = sandwich_check(parse_path_spec("P:12"), 4, PendantEnd.END1)

        logger.info("Got check: %s", check)

        self.assertEqual(2, check.lower.value)
        self.assertEqual(16, check.slack)
        self.assertTrue(check.holds)

    def test_complete_orderings(self):
        """Tests the eight canonical orderings of K_4"""

        orderings = canonical_complete_orderings(4)
        self.assertEqual(8, len(orderings))
        self.assertEqual(8, len({name for name, _ in orderings}))
        self.assertTrue(all(graph.m == 6 for _, graph in orderings))

    def test_k33_sample(self):
        """Tests that every sampled canonical ordering holds the 21354 path"""

        for largest in (False, True):
            sample = k33_canonical_sample(7, 10, largest)
            logger.info("Got sample: %s", sample)
            self.assertEqual(10, sample.samples)
            self.assertEqual(1.0, sample.rate)


class TestTable(unittest.TestCase):
    def test_rows(self):
        """Tests the 5-edge path table"""

        rows = table1_rows()
        self.assertEqual(32, len(rows))
        self.assertEqual(18, sum(chi == "inf" for _, chi, _ in rows))
        self.assertEqual(2, sum(chi == "3" for _, chi, _ in rows))
        self.assertEqual(12, sum(chi == "2" for _, chi, _ in rows))
        self.assertEqual(2, sum(bound == "Theta(n)" for _, _, bound in rows))
        self.assertIn(("21354", "3", "n^2/4 + o(n^2)"), rows)

    def test_report(self):
        """Tests a report row with small n"""

        report = table1_report(3, labelings=["12345"])

        logger.info("Got report: %s", [row.to_json() for row in report])

        self.assertEqual(1, len(report))
        row = report[0]
        self.assertEqual("Linear", row.growth)
        self.assertTrue(row.ocn2)
        self.assertEqual(((1, 0, "Exact"), (2, 1, "Exact"), (3, 3, "Exact")), row.values)


if __name__ == "__main__":
    unittest.main()
