#!/usr/bin/env python3
"""
Instance generators for the verification sweeps

Exhaustive lists of edge-ordered trees, paths and connected bigraphs (one
representative per isomorphism class) and seeded random bigraphs.
"""

import itertools
import logging
from typing import Iterator, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from eogx.graph import (
    EdgeOrderedBigraph,
    EdgeOrderedGraph,
    Side,
    bipartitions,
    canonical_code,
)

logger = logging.getLogger(__name__)

# (edges in rank order over vertices 0..k-1, side of each vertex)
BigraphState = Tuple[Tuple[Tuple[int, int], ...], Tuple[Side, ...]]


def edge_ordered_trees(max_edges: int, min_edges: int = 1) -> Iterator[EdgeOrderedGraph]:
    """Every edge-ordered tree with min_edges..max_edges edges, up to isomorphism."""
    for m in range(max(1, min_edges), max_edges + 1):
        seen: Set[tuple] = set()
        for tree in nx.nonisomorphic_trees(m + 1):
            pairs = sorted(tuple(sorted(edge)) for edge in tree.edges())
            for labels in itertools.permutations(range(1, m + 1)):
                graph = EdgeOrderedGraph(
                    ((u, v, label) for (u, v), label in zip(pairs, labels)), range(m + 1)
                )
                code = canonical_code(graph)
                if code not in seen:
                    seen.add(code)
                    yield graph
        logger.debug("%d edge-ordered trees with %d edges", len(seen), m)


def bigraph_trees(max_edges: int, min_edges: int = 1) -> Iterator[EdgeOrderedBigraph]:
    """Both bipartitions of every edge-ordered tree, up to isomorphism."""
    for m in range(max(1, min_edges), max_edges + 1):
        seen: Set[tuple] = set()
        for tree in edge_ordered_trees(m, m):
            for bigraph in bipartitions(tree):
                code = canonical_code(bigraph)
                if code not in seen:
                    seen.add(code)
                    yield bigraph


def edge_ordered_paths(k: int) -> Iterator[EdgeOrderedGraph]:
    """Edge-ordered paths with k edges up to isomorphism (reading direction)."""
    seen: Set[tuple] = set()
    for labels in itertools.permutations(range(1, k + 1)):
        graph = EdgeOrderedGraph(
            ((i, i + 1, label) for i, label in enumerate(labels)), range(k + 1)
        )
        code = canonical_code(graph)
        if code not in seen:
            seen.add(code)
            yield graph


# -- connected bigraphs by orderly generation ------------------------------------
#
# The parent of a connected bigraph is obtained by deleting its largest edge
# whose removal keeps it connected (dropping a vertex left isolated). Children
# insert one edge at any rank and are kept only when the new edge is their
# largest removable edge; isomorphic children of one parent are merged.


def _is_removable(pairs: Tuple[Tuple[int, int], ...], order: int, r: int) -> bool:
    a, b = pairs[r]
    degree = [0] * order
    for x, y in pairs:
        degree[x] += 1
        degree[y] += 1
    if degree[a] == 1 or degree[b] == 1:
        return True
    adjacent: List[List[int]] = [[] for _ in range(order)]
    for s, (x, y) in enumerate(pairs):
        if s != r:
            adjacent[x].append(y)
            adjacent[y].append(x)
    stack, seen = [a], {a}
    while stack:
        x = stack.pop()
        for y in adjacent[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return b in seen


def _sided_code(state: BigraphState) -> tuple:
    pairs, sides = state
    incident: List[List[int]] = [[] for _ in sides]
    for r, (x, y) in enumerate(pairs, 1):
        incident[x].append(r)
        incident[y].append(r)
    return tuple(sorted((sides[x].value, tuple(ranks)) for x, ranks in enumerate(incident)))


def bigraph_children(state: BigraphState, max_edges: int) -> List[BigraphState]:
    pairs, sides = state
    m = len(pairs)
    if m >= max_edges:
        return []
    order = len(sides)
    present = {frozenset(pair) for pair in pairs}
    candidates: List[Tuple[Tuple[int, int], Tuple[Side, ...]]] = []
    for i in range(order):
        for j in range(i + 1, order):
            if sides[i] is not sides[j] and frozenset((i, j)) not in present:
                candidates.append(((i, j), sides))
        candidates.append(((i, order), sides + (sides[i].other(),)))

    children: List[BigraphState] = []
    seen: Set[tuple] = set()
    for pair, child_sides in candidates:
        for position in range(m + 1):
            child_pairs = pairs[:position] + (pair,) + pairs[position:]
            child_order = len(child_sides)
            if any(
                _is_removable(child_pairs, child_order, r)
                for r in range(position + 1, m + 1)
            ):
                continue
            child = (child_pairs, child_sides)
            code = _sided_code(child)
            if code not in seen:
                seen.add(code)
                children.append(child)
    return children


SINGLE_EDGE: BigraphState = (((0, 1),), (Side.LEFT, Side.RIGHT))


def expand_bigraphs(root: BigraphState, max_edges: int) -> Iterator[BigraphState]:
    """``root`` and all of its descendants with at most max_edges edges."""
    stack = [root]
    while stack:
        state = stack.pop()
        yield state
        stack.extend(reversed(bigraph_children(state, max_edges)))


def bigraph_frontier(
    max_edges: int, split_edges: int
) -> Tuple[List[BigraphState], List[BigraphState]]:
    """Split the generation tree: states with fewer than ``split_edges`` edges
    and the states with exactly ``split_edges`` edges whose subtrees cover
    the rest."""
    above: List[BigraphState] = []
    level = [SINGLE_EDGE]
    while level and len(level[0][0]) < min(split_edges, max_edges):
        above.extend(level)
        level = [child for state in level for child in bigraph_children(state, max_edges)]
    return above, level


def state_to_bigraph(state: BigraphState) -> EdgeOrderedBigraph:
    pairs, sides = state
    return EdgeOrderedBigraph(
        ((x, y, r) for r, (x, y) in enumerate(pairs, 1)),
        dict(enumerate(sides)),
        range(len(sides)),
    )


def connected_bigraphs(max_edges: int) -> Iterator[EdgeOrderedBigraph]:
    """Every connected edge-ordered bigraph with 1..max_edges edges, one per
    isomorphism class (sides included)."""
    if max_edges < 1:
        return
    for state in expand_bigraphs(SINGLE_EDGE, max_edges):
        yield state_to_bigraph(state)


def random_bigraph(
    rng: np.random.Generator,
    n_vertices: int,
    density: float,
    left_share: Optional[float] = None,
) -> EdgeOrderedBigraph:
    """Random sides, each left-right pair an edge with probability ``density``,
    labels a uniform random permutation."""
    share = 0.5 if left_share is None else left_share
    sides = [Side.LEFT if flip else Side.RIGHT for flip in rng.random(n_vertices) < share]
    pairs = [
        (i, j)
        for i in range(n_vertices)
        for j in range(i + 1, n_vertices)
        if sides[i] is not sides[j]
    ]
    keep = rng.random(len(pairs)) < density
    chosen = [pair for pair, kept in zip(pairs, keep) if kept]
    labels = rng.permutation(len(chosen)) + 1
    return EdgeOrderedBigraph(
        ((x, y, int(label)) for (x, y), label in zip(chosen, labels)),
        dict(enumerate(sides)),
        range(n_vertices),
    )
