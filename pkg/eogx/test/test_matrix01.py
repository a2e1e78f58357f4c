#!/usr/bin/env python3

import logging
import unittest
from pathlib import Path

import networkx as nx

from eogx.classify import Growth
from eogx.matrix01 import (
    SQUARE,
    SUPERPOLYLOG_PATTERN,
    ZIGZAG,
    Boundary,
    ElementaryOp,
    Matrix01,
    Staircase,
    all_matrices,
    classify_matrix,
    contains_pattern,
    eex_bruteforce,
    eex_exact,
    elementary_op,
    find_pattern,
    forbidden_family,
    is_connected_matrix,
    is_light,
    is_tree_matrix,
    load_matrix,
    reach_from_unit,
    staircase_certificate,
)
from eogx.oracle import Budget, SearchStatus

logger = logging.getLogger(__name__)

TEST_DIR = Path(__file__).parent


def M(text):
    return Matrix01.parse(text)


class TestMatrix01(unittest.TestCase):
    def test_parse(self):
        """Tests the inline and file forms"""

        inline = load_matrix("M:11;01")
        from_file = load_matrix(str(TEST_DIR / "staircase.mat"))

        logger.info("Got matrices: %s %s", inline, from_file)

        self.assertEqual((2, 2), inline.shape)
        self.assertEqual([(0, 0), (0, 1), (1, 1)], inline.ones())
        self.assertEqual("110;011;001", from_file.compact())
        self.assertEqual("11\n01\n", inline.to_text())
        self.assertEqual(inline, M(inline.to_text()))

    def test_parse_errors(self):
        """Tests ragged rows, bad characters and missing files"""

        for text in ("", "11;0", "12", "# only a comment"):
            with self.assertRaises(ValueError):
                Matrix01.parse(text)
        with self.assertRaises(ValueError):
            load_matrix(str(TEST_DIR / "missing.mat"))
        with self.assertRaises(ValueError):
            Matrix01([[2]])

    def test_symmetries(self):
        """Tests transpose, rotation and reversal"""

        matrix = M("110;011")
        self.assertEqual(M("10;11;01"), matrix.transpose())
        self.assertEqual(M("011;110"), matrix.reverse_columns())
        self.assertEqual(M("011;110"), matrix.reverse_rows())
        self.assertEqual(matrix, matrix.rotate90(4))
        self.assertEqual(M("01;11;10"), matrix.rotate90())

    def test_structure(self):
        """Tests connectivity, tree and light predicates"""

        self.assertTrue(is_tree_matrix(M("110;011;001")))
        self.assertFalse(is_tree_matrix(SQUARE))
        self.assertFalse(is_connected_matrix(M("10;01")))
        self.assertTrue(is_light(M("100;011")))
        self.assertFalse(is_light(SUPERPOLYLOG_PATTERN))
        self.assertTrue(is_tree_matrix(SUPERPOLYLOG_PATTERN))


class TestContainment(unittest.TestCase):
    def test_patterns(self):
        """Tests that containment keeps the row and column order"""

        identity = M("100;010;001")

        self.assertTrue(contains_pattern(identity, M("10;01")))
        self.assertFalse(contains_pattern(identity, M("01;10")))
        self.assertTrue(contains_pattern(SQUARE, M("10;01")))
        self.assertFalse(contains_pattern(M("1"), SQUARE))

    def test_find_pattern(self):
        """Tests the rows and columns of the first copy"""

        self.assertEqual(((0, 1), (0, 2, 3)), find_pattern(SUPERPOLYLOG_PATTERN, ZIGZAG))
        with self.assertRaises(ValueError):
            find_pattern(SQUARE, M("00"))


class TestStaircase(unittest.TestCase):
    def test_certificates(self):
        """Tests the staircases found for small tree matrices"""

        corner = staircase_certificate(M("11;01"))
        long = staircase_certificate(load_matrix(str(TEST_DIR / "staircase.mat")))

        logger.info("Got certificates: %s %s", corner, long)

        self.assertEqual(((1, 2),), corner.staircase.positions)
        self.assertFalse(corner.columns_reversed)
        self.assertEqual(((1, 2), (2, 2), (2, 3)), long.staircase.positions)
        self.assertFalse(long.columns_reversed)

    def test_mirrored(self):
        """Tests a staircase that only fits with the columns reversed"""

        mirrored = load_matrix(str(TEST_DIR / "staircase.mat")).reverse_columns()
        certificate = staircase_certificate(mirrored)

        self.assertTrue(certificate.columns_reversed)
        self.assertEqual(mirrored.reverse_columns(), certificate.staircase.described(3, 3))

    def test_no_certificate(self):
        """Tests non-trees and trees that are not staircases"""

        self.assertIsNone(staircase_certificate(SQUARE))
        self.assertIsNone(staircase_certificate(SUPERPOLYLOG_PATTERN))
        with self.assertRaises(ValueError):
            staircase_certificate(M("00"))

    def test_bad_staircase(self):
        """Tests that a staircase only moves right or down"""

        with self.assertRaises(ValueError):
            Staircase(((1, 1), (2, 2)))
        with self.assertRaises(ValueError):
            Staircase(())

    def test_reach_from_unit(self):
        """Tests elementary operations building a staircase"""

        ops = reach_from_unit(M("11;01"))

        logger.info("Got ops: %s", [op.describe() for op in ops])

        self.assertEqual(["left@0", "bottom@1"], [op.describe() for op in ops])
        current = M("1")
        for op in ops:
            current = elementary_op(current, op)
        self.assertEqual(M("11;01"), current)
        self.assertIsNone(reach_from_unit(SQUARE))

    def test_elementary_op_errors(self):
        """Tests that the new 1 must touch a 1 of the old boundary"""

        with self.assertRaises(ValueError):
            elementary_op(M("10"), ElementaryOp(Boundary.TOP, 1))
        with self.assertRaises(ValueError):
            elementary_op(M("10"), ElementaryOp(Boundary.RIGHT, 1))

    def test_staircases_are_reachable(self):
        """Tests that every small staircase is built by elementary operations"""

        for matrix in all_matrices(3, 3):
            if matrix.is_zero or not is_connected_matrix(matrix):
                continue
            if staircase_certificate(matrix) is not None:
                self.assertIsNotNone(reach_from_unit(matrix), matrix)

    def test_staircases_are_caterpillars(self):
        """Tests that the row-column graph of a staircase is a caterpillar"""

        for matrix in all_matrices(3, 4):
            if matrix.is_zero or not is_connected_matrix(matrix) or staircase_certificate(matrix) is None:
                continue
            graph = nx.Graph((("r", i), ("c", j)) for i, j in matrix.ones())
            spine = graph.subgraph([v for v in graph if graph.degree(v) > 1])
            self.assertTrue(nx.is_tree(graph), matrix)
            if spine.number_of_nodes():
                self.assertTrue(nx.is_connected(spine), matrix)
                self.assertLessEqual(max(d for _, d in spine.degree()), 2, matrix)


class TestClassifyMatrix(unittest.TestCase):
    def test_family(self):
        """Tests the forbidden family"""

        family = forbidden_family()
        self.assertEqual(9, len(family))
        self.assertEqual(9, len(set(family)))
        self.assertIn(M("101;011"), family)

    def test_verdicts(self):
        """Tests linear and n log n verdicts with their evidence"""

        linear = classify_matrix(M("11;01"))
        square = classify_matrix(SQUARE)
        tree = classify_matrix(SUPERPOLYLOG_PATTERN)

        logger.info("Got verdicts: %s / %s / %s", linear.describe(), square.describe(), tree.describe())

        self.assertEqual(Growth.LINEAR, linear.growth)
        self.assertEqual("Linear (staircase (1,2))", linear.describe())
        self.assertEqual(SQUARE, square.member)
        self.assertEqual(Growth.OMEGA_N_LOG_N, tree.growth)
        self.assertEqual(ZIGZAG, tree.member)
        self.assertEqual({"growth": "OmegaNLogN", "contains": "110;101", "rows": [0, 1], "columns": [0, 2, 3]},
                         tree.to_json())

    def test_disconnected(self):
        """Tests that disconnected matrices are out of scope"""

        with self.assertRaises(ValueError):
            classify_matrix(M("10;01"))

    def test_dichotomy_on_small_matrices(self):
        """Tests that every small connected matrix gets a verdict"""

        for matrix in all_matrices(3, 3):
            if matrix.is_zero or not is_connected_matrix(matrix):
                continue
            verdict = classify_matrix(matrix)
            if verdict.growth is Growth.OMEGA_N_LOG_N:
                self.assertTrue(contains_pattern(matrix, verdict.member), matrix)

    def test_growth_under_symmetries(self):
        """Tests that mirroring and transposing keep the growth class"""

        for matrix in all_matrices(3, 3):
            if matrix.is_zero or not is_connected_matrix(matrix):
                continue
            growth = classify_matrix(matrix).growth
            for image in (matrix.reverse_columns(), matrix.reverse_rows(), matrix.transpose()):
                self.assertEqual(growth, classify_matrix(image).growth, (matrix, image))


class TestExtremal(unittest.TestCase):
    def test_known_values(self):
        """Tests small extremal numbers"""

        self.assertEqual(3, eex_exact(2, SQUARE).value)
        self.assertEqual(6, eex_exact(3, SQUARE).value)
        self.assertEqual(3, eex_exact(3, M("11")).value)
        self.assertEqual(4, eex_exact(2, M("111")).value)

    def test_square_values_are_exact(self):
        """Tests the square pattern up to n = 6 within the default budget"""

        for n, expected in ((4, 9), (5, 12), (6, 16)):
            result = eex_exact(n, SQUARE)
            logger.info("Got result: %s", result.to_json())
            self.assertEqual(SearchStatus.EXACT, result.status)
            self.assertEqual(expected, result.value)
            self.assertEqual(expected, result.witness.count_ones())
            self.assertFalse(contains_pattern(result.witness, SQUARE))

    def test_equal_lines(self):
        """Tests patterns whose rows or columns are all equal"""

        for pattern in (M("1;1"), M("11;11;11"), M("10;10"), M("1;1;0")):
            result = eex_exact(3, pattern)
            logger.info("Got result: %s", result.to_json())
            self.assertEqual(eex_bruteforce(3, pattern), result.value)
            self.assertEqual((3, 3), result.witness.shape)
            self.assertFalse(contains_pattern(result.witness, pattern))

    def test_against_bruteforce(self):
        """Tests the row search against trying every matrix"""

        for n, pattern in ((3, ZIGZAG), (3, M("11;01")), (3, M("10;01")), (3, M("1;0")), (4, ZIGZAG), (4, M("11;01"))):
            result = eex_exact(n, pattern)
            logger.info("Got result: %s", result.to_json())
            self.assertEqual(SearchStatus.EXACT, result.status)
            self.assertEqual(eex_bruteforce(n, pattern), result.value)
            self.assertEqual(result.value, result.witness.count_ones())
            self.assertFalse(contains_pattern(result.witness, pattern))

    def test_every_small_pattern(self):
        """Tests every pattern up to two rows and three columns against trying every matrix"""

        for pattern in all_matrices(2, 3):
            if pattern.is_zero:
                continue
            result = eex_exact(3, pattern)
            self.assertEqual(SearchStatus.EXACT, result.status, pattern)
            self.assertEqual(eex_bruteforce(3, pattern), result.value, pattern)
            self.assertFalse(contains_pattern(result.witness, pattern), pattern)

    def test_growing_the_pattern(self):
        """Tests that an elementary operation never lowers the extremal number"""

        for pattern in all_matrices(2, 2):
            if pattern.is_zero or not is_connected_matrix(pattern):
                continue
            before = eex_exact(3, pattern).value
            for boundary in Boundary:
                for position in range(max(pattern.shape)):
                    try:
                        grown = elementary_op(pattern, ElementaryOp(boundary, position))
                    except ValueError:
                        continue
                    self.assertTrue(contains_pattern(grown, pattern))
                    self.assertLessEqual(before, eex_exact(3, grown).value, (pattern, grown))

    def test_budget(self):
        """Tests that an exhausted budget reports a lower bound"""

        result = eex_exact(3, SQUARE, Budget(nodes=5, seconds=600))
        self.assertEqual(SearchStatus.LOWER_BOUND_ONLY, result.status)
        self.assertFalse(contains_pattern(result.witness, SQUARE))
        self.assertEqual(result.value, result.witness.count_ones())

    def test_bad_arguments(self):
        """Tests n and pattern checks"""

        with self.assertRaises(ValueError):
            eex_exact(0, SQUARE)
        with self.assertRaises(ValueError):
            eex_exact(2, M("00"))


if __name__ == "__main__":
    unittest.main()
