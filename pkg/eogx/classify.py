#!/usr/bin/env python3
"""
Linear versus n log n classification of connected edge-ordered graphs

A connected edge-ordered graph has a linear Turán function exactly when it or
its reverse is a semi-caterpillar with order chromatic number 2; otherwise
the Turán function is Omega(n log n). Every verdict carries evidence that
``check_verdict`` can re-check against the input.
"""

import dataclasses
import enum
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from eogx.containment import Embedding, contains, find_embedding, is_embedding
from eogx.graph import (
    AnyGraph,
    Edge,
    EdgeOrderedBigraph,
    EdgeOrderedGraph,
    Side,
    Vertex,
    close_vertices,
    consecutive_pairs,
    is_isomorphic,
    parse_path_spec,
    path_spec,
    reverse,
)

logger = logging.getLogger(__name__)

FORBIDDEN_PATH_SPECS = ("P:213", "P:1342", "P:1432")
FORBIDDEN_PATHS: Tuple[Tuple[str, EdgeOrderedGraph], ...] = tuple(
    (spec, parse_path_spec(spec)) for spec in FORBIDDEN_PATH_SPECS
)

# Turán asymptotics of short paths, keyed by the labels read along the path.
# The value is (order chromatic number, growth of ex_<(n, P)).
KNOWN_PATH_BOUNDS: Dict[str, Tuple[str, str]] = {
    "123": ("2", "Theta(n)"),
    "132": ("2", "Theta(n)"),
    "1234": ("2", "Theta(n)"),
    "1243": ("2", "Theta(n)"),
    "1324": ("2", "Theta(n log n)"),
    "1432": ("2", "Theta(n log n)"),
    "2143": ("2", "Theta(n log n)"),
    "1342": ("2", "Omega(n log n), O(n log^2 n)"),
    "1423": ("inf", "binom(n, 2)"),
    "2413": ("inf", "binom(n, 2)"),
    "12345": ("2", "Theta(n)"),
    "12354": ("2", "Theta(n)"),
    "12435": ("2", "Theta(n log n)"),
    "15432": ("2", "Theta(n log n)"),
    "21543": ("2", "Theta(n log n)"),
    "12543": ("2", "Theta(n log n)"),
    "12453": ("2", "Omega(n log n), O(n log^2 n)"),
    "13254": ("2", "Omega(n log n), O(n log^2 n)"),
    "14523": ("2", "Omega(n log n), n 2^O(sqrt(log n))"),
    "14532": ("2", "Omega(n log n), n 2^O(sqrt(log n))"),
    "15423": ("2", "Omega(n log n), n 2^O(sqrt(log n))"),
    "21453": ("2", "Omega(n log n), n 2^O(sqrt(log n))"),
    "14325": ("3", "n^2/4 + o(n^2)"),
    "21354": ("3", "n^2/4 + o(n^2)"),
    **{
        labels: ("inf", "binom(n, 2)")
        for labels in (
            "15243", "15234", "24513", "25413", "15324", "21534",
            "13524", "23514", "25143", "24153", "14253", "12534",
            "15342", "14352", "13425", "13452", "13542", "25314",
        )
    },
}


class Growth(enum.Enum):
    LINEAR = "Linear"
    OMEGA_N_LOG_N = "OmegaNLogN"


class Evidence(enum.Enum):
    SEMI_CATERPILLAR = "semi-caterpillar"
    CYCLE = "cycle"
    CHROMATIC = "order-chromatic-number"
    FORBIDDEN_PATHS = "forbidden-paths"


@dataclass(frozen=True)
class CloseColoring:
    """A proper 2-coloring whose right class is made of close vertices."""

    bigraph: EdgeOrderedBigraph

    @property
    def close_class(self) -> FrozenSet[Vertex]:
        return frozenset(self.bigraph.right_vertices)


@dataclass(frozen=True)
class ExtensionStep:
    """Pendant edges added at the current smallest edge.

    ``base`` is (left end, right end) of the smallest edge before the step.
    Leaves are the new vertices, in increasing order of their new edges;
    all edges at the left end come before those at the right end.
    """

    base: Tuple[Vertex, Vertex]
    left_leaves: Tuple[Vertex, ...]
    right_leaves: Tuple[Vertex, ...]

    @property
    def size(self) -> int:
        return len(self.left_leaves) + len(self.right_leaves)


@dataclass(frozen=True)
class ExtensionSequence:
    """Certificate that a bigraph is a right caterpillar: starting from the
    single edge ``root`` = (left, right), apply ``steps`` in order."""

    root: Tuple[Vertex, Vertex]
    steps: Tuple[ExtensionStep, ...]

    @property
    def depth(self) -> int:
        return len(self.steps)

    def replay(self) -> EdgeOrderedBigraph:
        left, right = self.root
        order: List[Tuple[Vertex, Vertex]] = [(left, right)]
        sides: Dict[Vertex, Side] = {left: Side.LEFT, right: Side.RIGHT}
        for step in self.steps:
            if tuple(order[0]) != tuple(step.base):
                raise ValueError(
                    f"Extension step based at {step.base} but the smallest edge is {order[0]}"
                )
            x, y = step.base
            added: List[Tuple[Vertex, Vertex]] = []
            for leaf in step.left_leaves:
                if leaf in sides:
                    raise ValueError(f"Leaf {leaf!r} is not a new vertex")
                sides[leaf] = Side.RIGHT
                added.append((x, leaf))
            for leaf in step.right_leaves:
                if leaf in sides:
                    raise ValueError(f"Leaf {leaf!r} is not a new vertex")
                sides[leaf] = Side.LEFT
                added.append((leaf, y))
            order = added + order
        return EdgeOrderedBigraph(
            ((u, v, r) for r, (u, v) in enumerate(order, 1)), sides
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "root": list(self.root),
            "steps": [
                {
                    "base": list(step.base),
                    "left": list(step.left_leaves),
                    "right": list(step.right_leaves),
                }
                for step in self.steps
            ],
        }


@dataclass(frozen=True)
class PathWitness:
    orientation: str
    pattern: str
    embedding: Embedding


@dataclass(frozen=True)
class DichotomyVerdict:
    growth: Growth
    evidence: Evidence
    reason: str
    orientation: Optional[str] = None
    coloring: Optional[EdgeOrderedBigraph] = None
    extensions: Optional[ExtensionSequence] = None
    cycle: Tuple[Tuple[Vertex, Vertex], ...] = ()
    witnesses: Tuple[PathWitness, ...] = ()

    @property
    def is_linear(self) -> bool:
        return self.growth is Growth.LINEAR

    def describe(self) -> str:
        return f"{self.growth.value} ({self.reason})"

    def to_json(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "growth": self.growth.value,
            "evidence": self.evidence.value,
            "reason": self.reason,
        }
        if self.orientation is not None:
            result["orientation"] = self.orientation
        if self.coloring is not None:
            result["right_vertices"] = list(self.coloring.right_vertices)
        if self.extensions is not None:
            result["extensions"] = self.extensions.to_json()
            result["depth"] = self.extensions.depth
        if self.cycle:
            result["cycle"] = [list(pair) for pair in self.cycle]
        if self.witnesses:
            result["witnesses"] = [
                {
                    "orientation": w.orientation,
                    "pattern": w.pattern,
                    "map": w.embedding.to_json(),
                }
                for w in self.witnesses
            ]
        return result


def _require_nontrivial(graph: AnyGraph) -> None:
    if graph.m == 0:
        raise ValueError("The graph must be non-trivial: it needs at least one edge")


def _bridge(graph: AnyGraph, first: Edge, second: Edge) -> Optional[Edge]:
    for a in (first.u, first.v):
        for b in (second.u, second.v):
            r = graph.rank(a, b)
            if r is not None:
                return graph.edge_by_rank(r)
    return None


def _adjacent_or_bridged(graph: AnyGraph, first: Edge, second: Edge) -> bool:
    if first.ends() & second.ends():
        return True
    bridge = _bridge(graph, first, second)
    return bridge is not None and bridge.label > second.label


def is_semi_caterpillar(graph: AnyGraph) -> bool:
    """A tree where every two consecutive edges share a vertex or are joined
    by an edge that comes later than both."""
    _require_nontrivial(graph)
    if not graph.is_tree():
        return False
    return all(_adjacent_or_bridged(graph, a, b) for a, b in consecutive_pairs(graph))


def is_caterpillar_ordered(graph: AnyGraph) -> bool:
    """A tree where every two consecutive edges share a vertex."""
    _require_nontrivial(graph)
    if not graph.is_tree():
        return False
    return all(a.ends() & b.ends() for a, b in consecutive_pairs(graph))


def ocn2_forest_test(forest: AnyGraph) -> Optional[CloseColoring]:
    """Find a proper 2-coloring with an all-close class, if one exists.

    The close class is put on the right. In each component the class of its
    first listed vertex is tried as the close class first.
    """
    _require_nontrivial(forest)
    base = forest.underlying()
    if not base.is_forest():
        raise ValueError("ocn2_forest_test needs a forest")
    close = close_vertices(base)
    simple = base.to_networkx()
    position = {x: i for i, x in enumerate(base.vertices)}

    sides: Dict[Vertex, Side] = {}
    for component in nx.connected_components(simple):
        first = min(component, key=position.__getitem__)
        color = nx.bipartite.color(simple.subgraph(component))
        same = {x for x in component if color[x] == color[first]}
        other = set(component) - same
        if same <= close:
            right, left = same, other
        elif other <= close:
            right, left = other, same
        else:
            logger.debug("No close class in the component of %r", first)
            return None
        sides.update((x, Side.RIGHT) for x in right)
        sides.update((x, Side.LEFT) for x in left)
    return CloseColoring(EdgeOrderedBigraph.from_graph(base, sides))


def semi_via_forbidden_paths(graph: AnyGraph) -> bool:
    """For forests of order chromatic number 2: semi-caterpillar iff connected
    and free of the three forbidden 3- and 4-edge paths."""
    _require_nontrivial(graph)
    base = graph.underlying()
    if not base.is_forest() or ocn2_forest_test(base) is None:
        raise ValueError(
            "semi_via_forbidden_paths needs a forest of order chromatic number 2"
        )
    return base.is_connected() and not any(
        contains(base, pattern) for _, pattern in FORBIDDEN_PATHS
    )


def is_right_caterpillar(bigraph: EdgeOrderedBigraph) -> bool:
    """A semi-caterpillar whose right vertices are all close."""
    _require_nontrivial(bigraph)
    if not is_semi_caterpillar(bigraph.underlying()):
        return False
    close = close_vertices(bigraph)
    return all(x in close for x in bigraph.right_vertices)


def alt_right_caterpillar_check(bigraph: EdgeOrderedBigraph) -> bool:
    """For a semi-caterpillar bigraph: right caterpillar iff whenever two
    consecutive edges are joined by a later edge, that edge's right end lies
    on the second of them."""
    _require_nontrivial(bigraph)
    if not is_semi_caterpillar(bigraph.underlying()):
        raise ValueError("alt_right_caterpillar_check needs a semi-caterpillar")
    for first, second in consecutive_pairs(bigraph):
        if first.ends() & second.ends():
            continue
        bridge = _bridge(bigraph, first, second)
        assert bridge is not None
        if bigraph.right_end(bridge) not in second.ends():
            return False
    return True


def _is_extension_batch(
    bigraph: EdgeOrderedBigraph, suffix_degree: Dict[Vertex, int], start: int, base: int
) -> bool:
    """Whether edges[start:base] are pendant edges at edge ``base`` with the
    left-end ones first."""
    edges = bigraph.edges
    x = bigraph.left_end(edges[base])
    y = bigraph.right_end(edges[base])
    seen_right = False
    for e in edges[start:base]:
        if x in (e.u, e.v):
            if seen_right:
                return False
            leaf = e.other_end(x)
        elif y in (e.u, e.v):
            seen_right = True
            leaf = e.other_end(y)
        else:
            return False
        if leaf in (x, y) or suffix_degree[leaf] != 1:
            return False
    return True


def peel_extensions(bigraph: EdgeOrderedBigraph) -> Optional[ExtensionSequence]:
    """Minimum-length extension sequence producing ``bigraph``, if any.

    Works on the suffixes T_j made of all edges but the j smallest. T_j
    extends to T_k (k < j) in one step when the edges in between are pendant
    at the smallest edge of T_j. A shortest chain from the largest edge down
    to the whole graph is found by dynamic programming; among equally short
    chains the one taking the longest batch first (from the top) wins.
    """
    _require_nontrivial(bigraph)
    if not bigraph.is_tree():
        return None
    edges = bigraph.edges
    m = len(edges)

    # degree of every vertex inside each suffix edges[k:]
    suffix_degrees: List[Dict[Vertex, int]] = [dict() for _ in range(m + 1)]
    running: Dict[Vertex, int] = {x: 0 for x in bigraph.vertices}
    suffix_degrees[m] = dict(running)
    for k in range(m - 1, -1, -1):
        running[edges[k].u] += 1
        running[edges[k].v] += 1
        suffix_degrees[k] = dict(running)

    best: List[Optional[Tuple[int, int]]] = [None] * m
    best[m - 1] = (0, m)
    for k in range(m - 2, -1, -1):
        choice: Optional[Tuple[int, int]] = None
        for j in range(k + 1, m):
            reachable = best[j]
            if reachable is None:
                continue
            if not _is_extension_batch(bigraph, suffix_degrees[k], k, j):
                continue
            depth = reachable[0] + 1
            if choice is None or depth <= choice[0]:
                choice = (depth, j)
        best[k] = choice

    if best[0] is None:
        return None

    chain = [0]
    while chain[-1] != m - 1:
        step = best[chain[-1]]
        assert step is not None
        chain.append(step[1])

    steps: List[ExtensionStep] = []
    for start, base in reversed(list(zip(chain, chain[1:]))):
        base_edge = edges[base]
        x = bigraph.left_end(base_edge)
        y = bigraph.right_end(base_edge)
        batch = edges[start:base]
        steps.append(
            ExtensionStep(
                base=(x, y),
                left_leaves=tuple(e.other_end(x) for e in batch if x in (e.u, e.v)),
                right_leaves=tuple(e.other_end(y) for e in batch if y in (e.u, e.v)),
            )
        )
    top = edges[-1]
    return ExtensionSequence(
        root=(bigraph.left_end(top), bigraph.right_end(top)), steps=tuple(steps)
    )


def spine_distances(bigraph: EdgeOrderedBigraph) -> Tuple[Tuple[Vertex, ...], int, int]:
    """Best spine of a tree bigraph: the path minimizing the largest distance
    of any vertex to it, then of any right vertex.

    Returns (spine, max distance, max right-vertex distance).
    """
    if not bigraph.is_tree():
        raise ValueError("spine_distances needs a tree")
    simple = bigraph.to_networkx()
    vertices = bigraph.vertices
    best: Optional[Tuple[int, int, Tuple[Vertex, ...]]] = None
    for i, a in enumerate(vertices):
        for b in vertices[i:]:
            spine = tuple(nx.shortest_path(simple, a, b))
            distance = nx.multi_source_dijkstra_path_length(simple, set(spine))
            overall = max(distance.values())
            right = max((distance[x] for x in bigraph.right_vertices), default=0)
            if best is None or (overall, right) < best[:2]:
                best = (overall, right, spine)
    assert best is not None
    return best[2], best[0], best[1]


def linear_bound_coefficient(bigraph: EdgeOrderedBigraph) -> int:
    """c with ex_<(n, T) <= c n for a right caterpillar T: 4 depth^2 |V(T)|."""
    sequence = peel_extensions(bigraph)
    if sequence is None:
        raise ValueError("Not a right caterpillar")
    return 4 * sequence.depth ** 2 * bigraph.n


def _readings(path: AnyGraph) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    base = path.underlying()
    if not base.is_path():
        raise ValueError("Not an edge-ordered path")
    sequence = base.path_sequence()
    return sequence, sequence[::-1]


def is_monotone(path: AnyGraph) -> bool:
    forward, _ = _readings(path)
    increasing = tuple(range(1, len(forward) + 1))
    return forward in (increasing, increasing[::-1])


def is_flipped(path: AnyGraph) -> bool:
    """Reads 2134..k or 12..(k-2)k(k-1) from one of its ends (k >= 3)."""
    readings = _readings(path)
    k = len(readings[0])
    if k < 3:
        return False
    templates = (
        (2, 1) + tuple(range(3, k + 1)),
        tuple(range(1, k - 1)) + (k, k - 1),
    )
    return any(reading in templates for reading in readings)


def classify_connected(graph: AnyGraph) -> DichotomyVerdict:
    """Decide Linear vs OmegaNLogN for a connected graph with evidence.

    Evidence is looked for in this order: a cycle; failure of the 2-coloring
    test; a linear certificate for the graph or its reverse; a forbidden path
    in the graph and in its reverse.
    """
    _require_nontrivial(graph)
    base = graph.underlying()
    if not base.is_connected():
        raise ValueError(
            "classify_connected needs a connected graph: the linear/n log n "
            "dichotomy does not cover disconnected graphs"
        )

    if not base.is_tree():
        cycle = nx.find_cycle(base.to_networkx())
        return DichotomyVerdict(
            Growth.OMEGA_N_LOG_N,
            Evidence.CYCLE,
            "contains a cycle",
            cycle=tuple((u, v) for u, v in cycle),
        )

    coloring = ocn2_forest_test(base)
    if coloring is None:
        return DichotomyVerdict(
            Growth.OMEGA_N_LOG_N,
            Evidence.CHROMATIC,
            "order chromatic number > 2: no proper 2-coloring has an all-close class",
        )

    oriented_graphs = (("forward", base), ("reverse", reverse(base)))
    for orientation, oriented in oriented_graphs:
        if not is_semi_caterpillar(oriented):
            continue
        bigraph = EdgeOrderedBigraph.from_graph(oriented, coloring.bigraph.sides)
        extensions = peel_extensions(bigraph)
        if extensions is None:
            logger.error("Right caterpillar %r has no extension sequence", bigraph)
        reason = "semi-caterpillar with order chromatic number 2"
        if orientation == "reverse":
            reason = "reverse is a " + reason
        return DichotomyVerdict(
            Growth.LINEAR,
            Evidence.SEMI_CATERPILLAR,
            reason,
            orientation=orientation,
            coloring=bigraph,
            extensions=extensions,
        )

    witnesses = []
    for orientation, oriented in oriented_graphs:
        for spec, pattern in FORBIDDEN_PATHS:
            embedding = find_embedding(oriented, pattern)
            if embedding is not None:
                witnesses.append(PathWitness(orientation, spec, embedding))
                break
    return DichotomyVerdict(
        Growth.OMEGA_N_LOG_N,
        Evidence.FORBIDDEN_PATHS,
        "neither the graph nor its reverse is a semi-caterpillar",
        witnesses=tuple(witnesses),
    )


def path_shape_growth(path: AnyGraph) -> Tuple[Growth, str]:
    """Growth class read off the labels alone: linear exactly for monotone and
    flipped paths."""
    base = path.underlying()
    if not base.is_path():
        raise ValueError("classify_path needs an edge-ordered path")
    if base.m < 2:
        raise ValueError("classify_path needs a path with at least two edges")
    if is_monotone(base):
        return Growth.LINEAR, "monotone path"
    if is_flipped(base):
        return Growth.LINEAR, "flipped path"
    return Growth.OMEGA_N_LOG_N, "neither monotone nor flipped"


def classify_path(path: AnyGraph) -> DichotomyVerdict:
    """Linear exactly for monotone and flipped paths (at least two edges).

    The evidence is the one classify_connected finds, so a linear path comes
    with its extension sequence and any other path with its certificate.
    """
    growth, shape = path_shape_growth(path)
    base = path.underlying()
    verdict = classify_connected(base)
    if growth is not verdict.growth:
        raise RuntimeError(
            f"Path {path_spec(base)}: the labels say {growth.value}, the structure says {verdict.growth.value}"
        )
    if growth is Growth.LINEAR:
        return dataclasses.replace(verdict, reason=shape)
    return verdict


def check_verdict(graph: AnyGraph, verdict: DichotomyVerdict) -> bool:
    """Re-check the evidence of a verdict against the graph it was made for."""
    base = graph.underlying()
    if verdict.evidence is Evidence.CYCLE:
        pairs = verdict.cycle
        if len(pairs) < 3:
            return False
        if any(base.rank(u, v) is None for u, v in pairs):
            return False
        return all(pairs[i][1] == pairs[(i + 1) % len(pairs)][0] for i in range(len(pairs)))

    if verdict.evidence is Evidence.CHROMATIC:
        return base.is_tree() and ocn2_forest_test(base) is None

    if verdict.evidence is Evidence.FORBIDDEN_PATHS:
        if len(verdict.witnesses) != 2:
            return False
        hosts = {"forward": base, "reverse": reverse(base)}
        patterns = dict(FORBIDDEN_PATHS)
        return all(
            is_embedding(hosts[w.orientation], patterns[w.pattern], w.embedding)
            for w in verdict.witnesses
        )

    oriented = base if verdict.orientation == "forward" else reverse(base)
    coloring = verdict.coloring
    if coloring is None or verdict.extensions is None:
        return False
    if coloring.underlying().normalized() != oriented.normalized():
        return False
    if not is_right_caterpillar(coloring):
        return False
    return is_isomorphic(verdict.extensions.replay(), coloring)
