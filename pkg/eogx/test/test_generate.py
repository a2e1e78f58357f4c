#!/usr/bin/env python3

import logging
import unittest

import numpy as np

from eogx.generate import (
    SINGLE_EDGE,
    bigraph_children,
    bigraph_frontier,
    bigraph_trees,
    connected_bigraphs,
    edge_ordered_paths,
    edge_ordered_trees,
    expand_bigraphs,
    random_bigraph,
    state_to_bigraph,
)
from eogx.graph import canonical_code

logger = logging.getLogger(__name__)


class TestTrees(unittest.TestCase):
    def test_counts(self):
        """Tests the number of isomorphism classes of small trees and paths"""

        trees = list(edge_ordered_trees(3))

        logger.info("Got trees: %s", trees)

        self.assertEqual(6, len(trees))
        self.assertEqual(12, len(list(edge_ordered_paths(4))))
        self.assertEqual(60, len(list(edge_ordered_paths(5))))
        self.assertEqual(4, len(list(edge_ordered_trees(3, min_edges=3))))

    def test_distinct_classes(self):
        """Tests that no two listed trees are isomorphic"""

        codes = [canonical_code(tree) for tree in edge_ordered_trees(5)]
        self.assertEqual(len(codes), len(set(codes)))
        self.assertTrue(all(tree.is_tree() for tree in edge_ordered_trees(4)))

    def test_bigraph_trees(self):
        """Tests both bipartitions of every tree are listed once"""

        self.assertEqual(3, len(list(bigraph_trees(2))))
        self.assertEqual(11, len(list(bigraph_trees(3))))


class TestConnectedBigraphs(unittest.TestCase):
    def test_small_counts(self):
        """Tests the generator against the tree list where they must agree"""

        self.assertEqual(3, len(list(connected_bigraphs(2))))
        # three edges are too few for an even cycle
        self.assertEqual(
            sorted(canonical_code(b) for b in bigraph_trees(3)),
            sorted(canonical_code(b) for b in connected_bigraphs(3)),
        )
        self.assertEqual([], list(connected_bigraphs(0)))

    def test_classes_are_distinct_and_connected(self):
        """Tests that every generated bigraph is connected and listed once"""

        found = list(connected_bigraphs(5))
        codes = [canonical_code(b) for b in found]

        logger.info("Got %d connected bigraphs", len(found))

        self.assertEqual(len(codes), len(set(codes)))
        self.assertTrue(all(b.is_connected() for b in found))
        self.assertTrue(any(not b.is_tree() for b in found))

    def test_frontier_covers_everything(self):
        """Tests that the split generation tree lists the same bigraphs"""

        above, frontier = bigraph_frontier(5, 3)
        split = list(above)
        for state in frontier:
            split.extend(expand_bigraphs(state, 5))

        self.assertTrue(all(len(state[0]) < 3 for state in above))
        self.assertTrue(all(len(state[0]) == 3 for state in frontier))
        self.assertEqual(
            sorted(canonical_code(b) for b in connected_bigraphs(5)),
            sorted(canonical_code(state_to_bigraph(state)) for state in split),
        )

    def test_children_respect_limit(self):
        """Tests that no child goes beyond the edge limit"""

        self.assertEqual([], bigraph_children(SINGLE_EDGE, 1))
        self.assertTrue(all(len(pairs) == 2 for pairs, _ in bigraph_children(SINGLE_EDGE, 2)))


class TestRandomBigraph(unittest.TestCase):
    def test_seeded(self):
        """Tests that the same seed gives the same bigraph"""

        first = random_bigraph(np.random.default_rng(3), 12, 0.5)
        second = random_bigraph(np.random.default_rng(3), 12, 0.5)

        logger.info("Got bigraph: %s", first)

        self.assertEqual(first, second)
        self.assertEqual(12, first.n)
        self.assertEqual(tuple(range(1, first.m + 1)), first.labels)

    def test_density_extremes(self):
        """Tests empty and complete bipartite draws"""

        empty = random_bigraph(np.random.default_rng(1), 8, 0.0)
        full = random_bigraph(np.random.default_rng(1), 8, 1.0)

        self.assertEqual(0, empty.m)
        self.assertEqual(len(full.left_vertices) * len(full.right_vertices), full.m)


if __name__ == "__main__":
    unittest.main()
