#!/usr/bin/env python3
"""
Edge-ordered graphs and edge-ordered bigraphs

Data model, text format and the elementary structural queries everything else
is built on. Labels may be any distinct positive integers; every predicate in
this package only looks at their relative order (the label ranks 1..m).
"""

import enum
import logging
import numbers
import re
from pathlib import Path
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import networkx as nx

logger = logging.getLogger(__name__)

Vertex = Union[int, str]

PATH_SPEC_PATTERN = re.compile(
    r"^P:(?P<sign>[+-]?)(?P<labels>[0-9]+(?:,[0-9]+)*)$", re.ASCII
)
_INTEGER_VERTEX = re.compile(r"^-?[0-9]+$")


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class Edge(NamedTuple):
    u: Vertex
    v: Vertex
    label: int

    def ends(self) -> FrozenSet[Vertex]:
        return frozenset((self.u, self.v))

    def other_end(self, x: Vertex) -> Vertex:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError("Vertex %r is not an end of edge %r" % (x, self))


class GraphStructure(NamedTuple):
    graph: nx.Graph
    connected: bool
    tree: bool
    forest: bool
    degrees: Dict[Vertex, int]


class EdgeOrderedGraph:
    """A finite simple graph with an injective positive integer label per edge.

    Instances are immutable. Edges are kept sorted by label, so the position
    of an edge in ``edges`` is its rank minus one.
    """

    __slots__ = ("_vertices", "_index", "_edges", "_pairs", "_rank", "_incident")

    def __init__(
        self,
        edges: Iterable[Tuple[Vertex, Vertex, int]],
        vertices: Iterable[Vertex] = (),
    ):
        order: Dict[Vertex, int] = {}
        for x in vertices:
            order.setdefault(x, len(order))

        checked: List[Edge] = []
        seen_pairs = set()
        seen_labels = set()
        for u, v, label in edges:
            if u == v:
                raise ValueError(
                    "Loop at vertex %r: edge-ordered graphs must be simple" % (u,)
                )
            if isinstance(label, bool) or not isinstance(label, numbers.Integral):
                raise ValueError("Edge label %r is not an integer" % (label,))
            label = int(label)
            if label < 1:
                raise ValueError("Edge label %d is not positive" % label)
            pair = frozenset((u, v))
            if pair in seen_pairs:
                raise ValueError("Parallel edge between %r and %r" % (u, v))
            if label in seen_labels:
                raise ValueError(
                    "Label %d is used twice: the labeling must be injective" % label
                )
            seen_pairs.add(pair)
            seen_labels.add(label)
            order.setdefault(u, len(order))
            order.setdefault(v, len(order))
            checked.append(Edge(u, v, label))

        checked.sort(key=lambda e: e.label)
        self._vertices: Tuple[Vertex, ...] = tuple(order)
        self._index: Dict[Vertex, int] = {x: i for i, x in enumerate(self._vertices)}
        self._edges: Tuple[Edge, ...] = tuple(checked)
        self._pairs: Tuple[Tuple[int, int], ...] = tuple(
            (self._index[e.u], self._index[e.v]) for e in checked
        )
        self._rank: Dict[FrozenSet[Vertex], int] = {
            e.ends(): r for r, e in enumerate(checked, 1)
        }
        incident: Dict[Vertex, List[int]] = {x: [] for x in self._vertices}
        for r, e in enumerate(checked, 1):
            incident[e.u].append(r)
            incident[e.v].append(r)
        self._incident: Dict[Vertex, Tuple[int, ...]] = {
            x: tuple(ranks) for x, ranks in incident.items()
        }

    # -- construction hooks -------------------------------------------------

    def _rebuild(
        self, edges: Iterable[Tuple[Vertex, Vertex, int]], vertices: Iterable[Vertex]
    ) -> "EdgeOrderedGraph":
        """Build a graph of the same kind (bigraphs keep their sides)."""
        return EdgeOrderedGraph(edges, vertices)

    def underlying(self) -> "EdgeOrderedGraph":
        return self

    # -- basic accessors ----------------------------------------------------

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(e.label for e in self._edges)

    def index_pairs(self) -> Tuple[Tuple[int, int], ...]:
        """Edges in rank order as pairs of positions in ``vertices``."""
        return self._pairs

    def has_vertex(self, x: Vertex) -> bool:
        return x in self._index

    def rank(self, u: Vertex, v: Vertex) -> Optional[int]:
        return self._rank.get(frozenset((u, v)))

    def edge_by_rank(self, rank: int) -> Edge:
        if not 1 <= rank <= self.m:
            raise ValueError("No edge of rank %d in a graph with %d edges" % (rank, self.m))
        return self._edges[rank - 1]

    def edge_with_label(self, label: int) -> Edge:
        for e in self._edges:
            if e.label == label:
                return e
        raise ValueError("No edge labeled %r" % (label,))

    def incident_ranks(self, x: Vertex) -> Tuple[int, ...]:
        return self._incident[x]

    def incident_labels(self, x: Vertex) -> Tuple[int, ...]:
        return tuple(self._edges[r - 1].label for r in self._incident[x])

    def degree(self, x: Vertex) -> int:
        return len(self._incident[x])

    def neighbors(self, x: Vertex) -> Tuple[Vertex, ...]:
        return tuple(self._edges[r - 1].other_end(x) for r in self._incident[x])

    # -- derived graphs -----------------------------------------------------

    def normalized(self) -> "EdgeOrderedGraph":
        """Same graph with labels replaced by their ranks 1..m."""
        return self._rebuild(
            ((e.u, e.v, r) for r, e in enumerate(self._edges, 1)), self._vertices
        )

    def edge_subgraph(self, labels: Iterable[int]) -> "EdgeOrderedGraph":
        """Subgraph on all vertices keeping the edges with the given labels."""
        keep = set(labels)
        return self._rebuild(
            ((e.u, e.v, e.label) for e in self._edges if e.label in keep),
            self._vertices,
        )

    def without_isolated(self) -> "EdgeOrderedGraph":
        return self._rebuild(
            ((e.u, e.v, e.label) for e in self._edges),
            (x for x in self._vertices if self._incident[x]),
        )

    # -- underlying simple graph --------------------------------------------

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self._vertices)
        for r, e in enumerate(self._edges, 1):
            graph.add_edge(e.u, e.v, label=e.label, rank=r)
        return graph

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return nx.is_connected(self.to_networkx())

    def is_forest(self) -> bool:
        if self.n == 0:
            return True
        return nx.is_forest(self.to_networkx())

    def is_tree(self) -> bool:
        return self.n > 0 and self.m == self.n - 1 and self.is_connected()

    def degrees(self) -> Dict[Vertex, int]:
        return {x: len(self._incident[x]) for x in self._vertices}

    def is_path(self) -> bool:
        return self.m >= 1 and self.is_tree() and max(self.degrees().values()) <= 2

    def path_vertices(self) -> Tuple[Vertex, ...]:
        """Vertices along the path, starting at the end listed first."""
        if not self.is_path():
            raise ValueError("Not an edge-ordered path")
        start = next(x for x in self._vertices if self.degree(x) == 1)
        walk = [start]
        previous = None
        while len(walk) < self.n:
            current = walk[-1]
            step = next(y for y in self.neighbors(current) if y != previous)
            previous = current
            walk.append(step)
        return tuple(walk)

    def path_sequence(self) -> Tuple[int, ...]:
        """Label ranks read along the path (see ``path_vertices``)."""
        walk = self.path_vertices()
        return tuple(
            self._rank[frozenset(pair)] for pair in zip(walk, walk[1:])
        )

    # -- value semantics ----------------------------------------------------

    def _key(self):
        return (
            frozenset(self._vertices),
            frozenset((e.ends(), e.label) for e in self._edges),
        )

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self._key() == other._key()  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        body = ", ".join("%r-%r:%d" % (e.u, e.v, e.label) for e in self._edges)
        return "%s(n=%d, m=%d, [%s])" % (type(self).__name__, self.n, self.m, body)


class EdgeOrderedBigraph(EdgeOrderedGraph):
    """An edge-ordered graph with every vertex on the left or the right side,
    such that each edge has a left end and a right end."""

    __slots__ = ("_sides",)

    def __init__(
        self,
        edges: Iterable[Tuple[Vertex, Vertex, int]],
        sides: Mapping[Vertex, Side],
        vertices: Iterable[Vertex] = (),
    ):
        super().__init__(edges, vertices)
        missing = [x for x in self.vertices if x not in sides]
        if missing:
            raise ValueError("No side given for vertices %r" % (missing,))
        self._sides: Dict[Vertex, Side] = {x: Side(sides[x]) for x in self.vertices}
        for e in self.edges:
            if self._sides[e.u] is self._sides[e.v]:
                raise ValueError(
                    "Edge %r-%r joins two %s vertices"
                    % (e.u, e.v, self._sides[e.u].name.lower())
                )

    @classmethod
    def from_graph(
        cls, graph: EdgeOrderedGraph, sides: Mapping[Vertex, Side]
    ) -> "EdgeOrderedBigraph":
        return cls(
            ((e.u, e.v, e.label) for e in graph.edges), sides, graph.vertices
        )

    def _rebuild(self, edges, vertices) -> "EdgeOrderedBigraph":
        vertices = tuple(vertices)
        return EdgeOrderedBigraph(edges, self._sides, vertices)

    def underlying(self) -> EdgeOrderedGraph:
        return EdgeOrderedGraph(
            ((e.u, e.v, e.label) for e in self.edges), self.vertices
        )

    @property
    def sides(self) -> Dict[Vertex, Side]:
        return dict(self._sides)

    def side(self, x: Vertex) -> Side:
        return self._sides[x]

    @property
    def left_vertices(self) -> Tuple[Vertex, ...]:
        return tuple(x for x in self.vertices if self._sides[x] is Side.LEFT)

    @property
    def right_vertices(self) -> Tuple[Vertex, ...]:
        return tuple(x for x in self.vertices if self._sides[x] is Side.RIGHT)

    def left_end(self, edge: Edge) -> Vertex:
        return edge.u if self._sides[edge.u] is Side.LEFT else edge.v

    def right_end(self, edge: Edge) -> Vertex:
        return edge.u if self._sides[edge.u] is Side.RIGHT else edge.v

    def swapped(self) -> "EdgeOrderedBigraph":
        """The other bipartition of the same edge-ordered graph."""
        return EdgeOrderedBigraph(
            ((e.u, e.v, e.label) for e in self.edges),
            {x: s.other() for x, s in self._sides.items()},
            self.vertices,
        )

    def _key(self):
        return super()._key() + (frozenset(self._sides.items()),)

    def __repr__(self) -> str:
        body = ", ".join(
            "%r%s-%r%s:%d"
            % (e.u, self._sides[e.u].value, e.v, self._sides[e.v].value, e.label)
            for e in self.edges
        )
        return "%s(n=%d, m=%d, [%s])" % (type(self).__name__, self.n, self.m, body)


AnyGraph = Union[EdgeOrderedGraph, EdgeOrderedBigraph]


# -- path shorthand ----------------------------------------------------------


def parse_path_spec(spec: str) -> EdgeOrderedGraph:
    """Parse ``P:<labels>`` or ``P:+<labels>`` / ``P:-<labels>``.

    Labels are single digits (``P:1324``) or comma separated (``P:1,3,10,2``).
    The i-th listed label goes on the i-th edge along the path. A sign turns
    the path into a bigraph starting at a right (+) or left (-) vertex.
    """
    match = PATH_SPEC_PATTERN.match(spec.strip())
    if not match:
        raise ValueError(
            "Malformed path spec %r: expected P:<labels> or P:+<labels>/P:-<labels>"
            % spec
        )
    text = match.group("labels")
    if "," in text:
        labels = [int(token) for token in text.split(",")]
    else:
        labels = [int(digit) for digit in text]
    k = len(labels)
    if sorted(labels) != list(range(1, k + 1)):
        raise ValueError(
            "Path spec %r must list each of the labels 1..%d exactly once" % (spec, k)
        )

    edges = [(i, i + 1, label) for i, label in enumerate(labels)]
    sign = match.group("sign")
    if not sign:
        return EdgeOrderedGraph(edges, range(k + 1))

    first = Side.RIGHT if sign == "+" else Side.LEFT
    sides = {i: first if i % 2 == 0 else first.other() for i in range(k + 1)}
    return EdgeOrderedBigraph(edges, sides, range(k + 1))


def path_spec(graph: EdgeOrderedGraph) -> str:
    """Inverse of ``parse_path_spec`` for paths (labels as ranks)."""
    sequence = graph.path_sequence()
    separator = "," if len(sequence) >= 10 else ""
    body = separator.join(str(r) for r in sequence)
    if isinstance(graph, EdgeOrderedBigraph):
        start = graph.path_vertices()[0]
        body = ("+" if graph.side(start) is Side.RIGHT else "-") + body
    return "P:" + body


# -- elementary operations ---------------------------------------------------


def reverse(graph: AnyGraph) -> AnyGraph:
    """Same underlying graph (and sides), edge-order reversed: rank r -> m+1-r."""
    m = graph.m
    return graph._rebuild(
        ((e.u, e.v, m + 1 - r) for r, e in enumerate(graph.edges, 1)),
        graph.vertices,
    )


def canonical_code(graph: AnyGraph) -> tuple:
    """Isomorphism invariant: equal codes iff the graphs are isomorphic.

    An order-preserving isomorphism has to send the edge of rank r to the edge
    of rank r, so a vertex is pinned down by the set of ranks incident to it
    (two vertices share that set only as the ends of an isolated edge, or as
    isolated vertices). The sorted multiset of incidence tuples, with sides for
    bigraphs, is therefore a complete invariant.
    """
    if isinstance(graph, EdgeOrderedBigraph):
        rows = sorted(
            (graph.side(x).value, graph.incident_ranks(x)) for x in graph.vertices
        )
    else:
        rows = sorted(graph.incident_ranks(x) for x in graph.vertices)
    return (graph.n, graph.m, tuple(rows))


def is_isomorphic(first: AnyGraph, second: AnyGraph) -> bool:
    if isinstance(first, EdgeOrderedBigraph) and isinstance(second, EdgeOrderedBigraph):
        return canonical_code(first) == canonical_code(second)
    return canonical_code(first.underlying()) == canonical_code(second.underlying())


def _is_interval(ranks: Sequence[int]) -> bool:
    return not ranks or ranks[-1] - ranks[0] + 1 == len(ranks)


def close_vertices(graph: AnyGraph) -> FrozenSet[Vertex]:
    """Vertices whose incident edges form an interval of the edge-order."""
    return frozenset(x for x in graph.vertices if _is_interval(graph.incident_ranks(x)))


def consecutive_pairs(graph: AnyGraph) -> List[Tuple[Edge, Edge]]:
    edges = graph.edges
    return list(zip(edges, edges[1:]))


def bipartitions(graph: AnyGraph) -> List[EdgeOrderedBigraph]:
    """Both bipartitions of a connected graph; empty if it is not bipartite.

    The first bigraph puts the first listed vertex on the left.
    """
    base = graph.underlying()
    if not base.is_connected():
        raise ValueError(
            "bipartitions needs a connected graph: a disconnected graph has "
            "2^(components) side assignments"
        )
    simple = base.to_networkx()
    if not nx.is_bipartite(simple):
        return []
    color = nx.bipartite.color(simple)
    first = color[base.vertices[0]]
    sides = {x: Side.LEFT if color[x] == first else Side.RIGHT for x in base.vertices}
    bigraph = EdgeOrderedBigraph.from_graph(base, sides)
    return [bigraph, bigraph.swapped()]


def structure_queries(graph: AnyGraph) -> GraphStructure:
    return GraphStructure(
        graph=graph.to_networkx(),
        connected=graph.is_connected(),
        tree=graph.is_tree(),
        forest=graph.is_forest(),
        degrees=graph.degrees(),
    )


# -- text format ---------------------------------------------------------------


def _parse_vertex(token: str) -> Vertex:
    return int(token) if _INTEGER_VERTEX.match(token) else token


def parse_graph(text: str) -> AnyGraph:
    """Parse the graph text format.

    One edge per line as ``u v label``; ``V u`` declares an isolated vertex;
    ``L u`` / ``R v`` lines put vertices on a side and turn the result into a
    bigraph. Blank lines and ``#`` comments are ignored.
    """
    edges: List[Tuple[Vertex, Vertex, int]] = []
    vertices: List[Vertex] = []
    sides: Dict[Vertex, Side] = {}

    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 2 and tokens[0] in ("L", "R", "V"):
            vertex = _parse_vertex(tokens[1])
            vertices.append(vertex)
            if tokens[0] != "V":
                sides[vertex] = Side(tokens[0])
        elif len(tokens) == 3:
            try:
                label = int(tokens[2])
            except ValueError:
                raise ValueError(
                    "Line %d: label %r is not an integer" % (number, tokens[2])
                ) from None
            edges.append((_parse_vertex(tokens[0]), _parse_vertex(tokens[1]), label))
        else:
            raise ValueError(
                "Line %d: expected 'u v label', 'L u', 'R u' or 'V u', got %r"
                % (number, raw)
            )

    if sides:
        return EdgeOrderedBigraph(edges, sides, vertices)
    return EdgeOrderedGraph(edges, vertices)


def format_graph(graph: AnyGraph) -> str:
    """Serialize with labels normalized to ranks; parse_graph reads it back."""
    lines = []
    if isinstance(graph, EdgeOrderedBigraph):
        lines.extend("%s %s" % (graph.side(x).value, x) for x in graph.vertices)
    else:
        lines.extend("V %s" % x for x in graph.vertices if graph.degree(x) == 0)
    lines.extend("%s %s %d" % (e.u, e.v, r) for r, e in enumerate(graph.edges, 1))
    return "\n".join(lines) + "\n"


def load_graph(source: str) -> AnyGraph:
    """Read a graph from a ``P:`` path spec or from a graph file."""
    if source.startswith("P:"):
        return parse_path_spec(source)
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as e:
        raise ValueError("Cannot read graph file '%s': %s" % (source, e)) from e
    logger.debug("Loaded graph file %s", path)
    return parse_graph(text)
