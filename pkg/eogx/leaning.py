#!/usr/bin/env python3
"""
Leaning and inclined edges of edge-ordered bigraphs

An edge is c-left-leaning when, among the smaller edges at its two ends, the
c smallest at its left end all come before the c largest at its right end
(and c-right-leaning symmetrically). Iterating "keep only the c-left-leaning
edges" gives a chain of subgraphs; as long as the i-th iterate is non-empty
every right caterpillar of depth i on c vertices can be found in the graph.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from eogx.classify import ExtensionSequence, peel_extensions
from eogx.containment import Embedding, contains_bigraph, is_embedding
from eogx.graph import EdgeOrderedBigraph, Side, Vertex, parse_path_spec

logger = logging.getLogger(__name__)

LONG_ZIGZAG_PLUS = parse_path_spec("P:+13254")
LONG_ZIGZAG_MINUS = parse_path_spec("P:-13254")
SHORT_ZIGZAG_PLUS = parse_path_spec("P:+2143")
SHORT_ZIGZAG_MINUS = parse_path_spec("P:-2143")


@dataclass(frozen=True)
class LeaningWitness:
    """The c labels at the left end and the c labels at the right end that
    make an edge lean."""

    at_left_end: Tuple[int, ...]
    at_right_end: Tuple[int, ...]


@dataclass(frozen=True)
class LeaningClass:
    label: int
    c: int
    left: Optional[LeaningWitness]
    right: Optional[LeaningWitness]

    @property
    def is_left(self) -> bool:
        return self.left is not None

    @property
    def is_right(self) -> bool:
        return self.right is not None

    @property
    def is_non_leaning(self) -> bool:
        return self.left is None and self.right is None


class LeanCounts(NamedTuple):
    left: int
    right: int
    both: int
    non_leaning: int


def _check_c(c: int) -> None:
    if c < 1:
        raise ValueError(f"c must be a positive integer, got {c}")


def leaning_class(bigraph: EdgeOrderedBigraph, label: int, c: int) -> LeaningClass:
    _check_c(c)
    edge = bigraph.edge_with_label(label)
    x = bigraph.left_end(edge)
    y = bigraph.right_end(edge)
    below_left = [lab for lab in bigraph.incident_labels(x) if lab < label]
    below_right = [lab for lab in bigraph.incident_labels(y) if lab < label]

    left = right = None
    if len(below_left) >= c and len(below_right) >= c:
        if below_left[c - 1] < below_right[-c]:
            left = LeaningWitness(tuple(below_left[:c]), tuple(below_right[-c:]))
        if below_right[c - 1] < below_left[-c]:
            right = LeaningWitness(tuple(below_left[-c:]), tuple(below_right[:c]))
    return LeaningClass(label, c, left, right)


def leaning_edges(bigraph: EdgeOrderedBigraph, c: int, side: Side) -> FrozenSet[int]:
    """Labels of the c-left-leaning (side=LEFT) or c-right-leaning edges."""
    wanted = "left" if side is Side.LEFT else "right"
    return frozenset(
        e.label
        for e in bigraph.edges
        if getattr(leaning_class(bigraph, e.label, c), wanted) is not None
    )


def non_leaning_edges(bigraph: EdgeOrderedBigraph, c: int) -> FrozenSet[int]:
    return frozenset(
        e.label for e in bigraph.edges if leaning_class(bigraph, e.label, c).is_non_leaning
    )


def lean_counts(bigraph: EdgeOrderedBigraph, c: int) -> LeanCounts:
    left = right = both = neither = 0
    for e in bigraph.edges:
        cls = leaning_class(bigraph, e.label, c)
        left += cls.is_left
        right += cls.is_right
        both += cls.is_left and cls.is_right
        neither += cls.is_non_leaning
    return LeanCounts(left, right, both, neither)


@dataclass(frozen=True)
class IterateChain:
    """G_0 = G, G_1, ..., G_i; each keeps all vertices and the original labels."""

    side: Side
    c: int
    graphs: Tuple[EdgeOrderedBigraph, ...]

    @property
    def depth(self) -> int:
        return len(self.graphs) - 1

    @property
    def last(self) -> EdgeOrderedBigraph:
        return self.graphs[-1]


def iterate(bigraph: EdgeOrderedBigraph, c: int, i: int, side: Side) -> IterateChain:
    _check_c(c)
    if i < 0:
        raise ValueError(f"The iteration count must be non-negative, got {i}")
    graphs = [bigraph]
    for _ in range(i):
        current = graphs[-1]
        graphs.append(current.edge_subgraph(leaning_edges(current, c, side)))
    return IterateChain(side, c, tuple(graphs))


def residual_edges(bigraph: EdgeOrderedBigraph, c: int, i: int) -> FrozenSet[int]:
    """Edges in neither the i-th left iterate nor the i-th right iterate."""
    left = set(iterate(bigraph, c, i, Side.LEFT).last.labels)
    right = set(iterate(bigraph, c, i, Side.RIGHT).last.labels)
    return frozenset(bigraph.labels) - left - right


def extract_caterpillar(
    bigraph: EdgeOrderedBigraph,
    caterpillar: EdgeOrderedBigraph,
    sequence: Optional[ExtensionSequence] = None,
) -> Optional[Embedding]:
    """Embed a right caterpillar T, walking down the c-left iterates of B.

    c is |V(T)| and the walk starts from the smallest edge of the iterate
    whose index is the depth of T. Returns None when that iterate is empty.
    """
    if sequence is None:
        sequence = peel_extensions(caterpillar)
    if sequence is None:
        raise ValueError("extract_caterpillar needs a certified right caterpillar")
    c = caterpillar.n
    depth = sequence.depth
    chain = iterate(bigraph, c, depth, Side.LEFT)
    top = chain.last
    if top.m == 0:
        return None

    start = top.edges[0]
    image: Dict[Vertex, Vertex] = {
        sequence.root[0]: top.left_end(start),
        sequence.root[1]: top.right_end(start),
    }
    smallest = start.label

    for level, step in enumerate(sequence.steps):
        host = chain.graphs[depth - level - 1]
        witness = leaning_class(host, smallest, c).left
        if witness is None:
            logger.error("Edge %d of iterate %d is not %d-left-leaning", smallest, depth - level - 1, c)
            return None
        x = image[step.base[0]]
        y = image[step.base[1]]
        used = set(image.values())

        def free(labels: Iterable[int], end: Vertex) -> List[Tuple[int, Vertex]]:
            found = []
            for lab in labels:
                far = host.edge_with_label(lab).other_end(end)
                if far not in used:
                    found.append((lab, far))
            return found

        left_pool = free(witness.at_left_end, x)[: len(step.left_leaves)]
        right_pool = free(witness.at_right_end, y)[: len(step.right_leaves)]
        if len(left_pool) < len(step.left_leaves) or len(right_pool) < len(step.right_leaves):
            logger.error("Ran out of leaves while extending at edge %d", smallest)
            return None
        for leaf, (_, far) in zip(step.left_leaves, left_pool):
            image[leaf] = far
        for leaf, (_, far) in zip(step.right_leaves, right_pool):
            image[leaf] = far
        smallest = min(lab for lab, _ in left_pool + right_pool)

    embedding = Embedding(tuple((v, image[v]) for v in caterpillar.vertices))
    if not is_embedding(bigraph, caterpillar, embedding, sided=True):
        logger.error("Extracted map %s is not a copy", embedding.describe())
        return None
    return embedding


# -- inclined edges ------------------------------------------------------------


class Inclination(enum.Enum):
    LEFT = "LeftInclined"
    RIGHT = "RightInclined"
    NONE = "NonInclined"


@dataclass(frozen=True)
class InclinedPartition:
    vertex_label: Mapping[Vertex, int]
    left: FrozenSet[int]
    right: FrozenSet[int]
    non_inclined: FrozenSet[int]

    def classify(self, label: int) -> Inclination:
        if label in self.left:
            return Inclination.LEFT
        if label in self.right:
            return Inclination.RIGHT
        if label in self.non_inclined:
            return Inclination.NONE
        raise ValueError(f"No edge labeled {label}")


def vertex_labels(bigraph: EdgeOrderedBigraph) -> Dict[Vertex, int]:
    """Second-smallest incident label of every vertex of degree at least 2."""
    return {
        x: bigraph.incident_labels(x)[1] for x in bigraph.vertices if bigraph.degree(x) >= 2
    }


def inclined_partition(bigraph: EdgeOrderedBigraph) -> InclinedPartition:
    labels = vertex_labels(bigraph)
    left, right, neither = set(), set(), set()
    for e in bigraph.edges:
        lx = labels.get(bigraph.left_end(e))
        ly = labels.get(bigraph.right_end(e))
        if lx is not None and ly is not None and lx < ly <= e.label:
            left.add(e.label)
        elif lx is not None and ly is not None and ly < lx <= e.label:
            right.add(e.label)
        else:
            neither.add(e.label)
    return InclinedPartition(labels, frozenset(left), frozenset(right), frozenset(neither))


def left_inclined_subgraph(bigraph: EdgeOrderedBigraph) -> EdgeOrderedBigraph:
    return bigraph.edge_subgraph(inclined_partition(bigraph).left)


def right_inclined_subgraph(bigraph: EdgeOrderedBigraph) -> EdgeOrderedBigraph:
    return bigraph.edge_subgraph(inclined_partition(bigraph).right)


def lem1_check(bigraph: EdgeOrderedBigraph, mirrored: bool = False) -> bool:
    """Whether the left-inclined part avoids P5^{-2143} (mirrored: whether the
    right-inclined part avoids P5^{+2143})."""
    if mirrored:
        return not contains_bigraph(right_inclined_subgraph(bigraph), SHORT_ZIGZAG_PLUS)
    return not contains_bigraph(left_inclined_subgraph(bigraph), SHORT_ZIGZAG_MINUS)


def lem1_premise(bigraph: EdgeOrderedBigraph, mirrored: bool = False) -> bool:
    """Whether the bigraph avoids P6^{+13254} (mirrored: P6^{-13254})."""
    pattern = LONG_ZIGZAG_MINUS if mirrored else LONG_ZIGZAG_PLUS
    return not contains_bigraph(bigraph, pattern)


@dataclass(frozen=True)
class HalvesDecomposition:
    lower: FrozenSet[int]
    upper: FrozenSet[int]
    leftover: FrozenSet[int]
    separated: bool
    lower_vertices: int
    upper_vertices: int

    def small_side_ok(self, n: int) -> bool:
        """One of the two parts touches at most half of the n vertices."""
        return min(self.lower_vertices, self.upper_vertices) <= n // 2


def _strip_extremes(
    bigraph: EdgeOrderedBigraph, labels: Iterable[int], highest: bool
) -> FrozenSet[int]:
    part = bigraph.edge_subgraph(labels)
    removed = set()
    for x in part.vertices:
        incident = part.incident_labels(x)
        removed.update(incident[-2:] if highest else incident[:2])
    return frozenset(part.labels) - removed


def _touched(bigraph: EdgeOrderedBigraph, labels: FrozenSet[int]) -> FrozenSet[Vertex]:
    return frozenset(x for e in bigraph.edges if e.label in labels for x in (e.u, e.v))


def halves_decomposition(bigraph: EdgeOrderedBigraph) -> HalvesDecomposition:
    """Split B into the lower and upper halves of its edge-order, drop the two
    extreme edges per vertex on the inner side of each half, and keep the
    left-inclined edges of what remains (inclination measured in the
    remaining graph)."""
    labels = bigraph.labels
    half = len(labels) // 2
    lower = _strip_extremes(bigraph, labels[:half], highest=True)
    upper = _strip_extremes(bigraph, labels[half:], highest=False)
    remaining = bigraph.edge_subgraph(lower | upper)
    left = inclined_partition(remaining).left

    lower_kept = lower & left
    upper_kept = upper & left
    lower_touched = _touched(bigraph, lower_kept)
    upper_touched = _touched(bigraph, upper_kept)
    return HalvesDecomposition(
        lower=lower_kept,
        upper=upper_kept,
        leftover=frozenset(labels) - lower_kept - upper_kept,
        separated=not (lower_touched & upper_touched),
        lower_vertices=len(lower_touched),
        upper_vertices=len(upper_touched),
    )
