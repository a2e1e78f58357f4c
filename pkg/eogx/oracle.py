#!/usr/bin/env python3
"""
Exact Turán numbers of small edge-ordered graphs

ex_<(n, H) is the largest number of edges of an edge-ordered graph on n
vertices avoiding H. The search below grows graphs edge by edge in increasing
label order (the parent of a graph is the graph minus its largest edge), so
every edge-ordered graph without isolated vertices is reached exactly once up
to isomorphism. A branch dies as soon as its new edge completes a copy of H;
a pair that completes a copy once does so in every extension, which gives the
upper bound used for pruning.
"""

import enum
import itertools
import logging
import multiprocessing
import time
from dataclasses import dataclass
from math import comb
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from eogx.classify import KNOWN_PATH_BOUNDS, classify_path, ocn2_forest_test
from eogx.containment import contains, contains_through_last_edge, find_embedding
from eogx.graph import (
    AnyGraph,
    EdgeOrderedGraph,
    Vertex,
    parse_path_spec,
    path_spec,
)

logger = logging.getLogger(__name__)

Pairs = Tuple[Tuple[int, int], ...]

FRONTIER_DEPTH = 3

TABLE1_LABELINGS = tuple(labels for labels in KNOWN_PATH_BOUNDS if len(labels) == 5)


class SearchStatus(enum.Enum):
    EXACT = "Exact"
    LOWER_BOUND_ONLY = "LowerBoundOnly"


@dataclass(frozen=True)
class Budget:
    nodes: int = 5_000_000
    seconds: float = 600.0

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "Budget":
        return cls(nodes=int(config["budget_nodes"]), seconds=float(config["budget_secs"]))


@dataclass(frozen=True)
class TuranResult:
    n: int
    value: int
    witness: EdgeOrderedGraph
    status: SearchStatus
    nodes_explored: int

    @property
    def is_exact(self) -> bool:
        return self.status is SearchStatus.EXACT

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "value": self.value,
            "status": self.status.value,
            "nodes_explored": self.nodes_explored,
            "witness": [[e.u, e.v, r] for r, e in enumerate(self.witness.edges, 1)],
        }


# -- index-form helpers --------------------------------------------------------


def _order(pairs: Pairs) -> int:
    return 1 + max((max(pair) for pair in pairs), default=-1)


def _code(pairs: Pairs, order: int) -> tuple:
    incident: List[List[int]] = [[] for _ in range(order)]
    for r, (x, y) in enumerate(pairs, 1):
        incident[x].append(r)
        incident[y].append(r)
    return tuple(sorted(tuple(ranks) for ranks in incident))


def _to_graph(pairs: Pairs, n: int) -> EdgeOrderedGraph:
    return EdgeOrderedGraph(((x, y, r) for r, (x, y) in enumerate(pairs, 1)), range(n))


def _candidate_pairs(pairs: Pairs, order: int, n: int) -> List[Tuple[int, int]]:
    """Pairs that can carry the next (largest) edge. One representative is
    listed for pairs touching vertices that do not exist yet."""
    present = {frozenset(pair) for pair in pairs}
    candidates = [
        (i, j)
        for i in range(order)
        for j in range(i + 1, order)
        if frozenset((i, j)) not in present
    ]
    if order < n:
        candidates.extend((i, order) for i in range(order))
    if order + 2 <= n:
        candidates.append((order, order + 1))
    return candidates


def _children(
    pairs: Pairs, order: int, candidates: Sequence[Tuple[int, int]]
) -> List[Tuple[Pairs, int]]:
    children = []
    seen = set()
    for pair in candidates:
        child = pairs + (pair,)
        child_order = max(order, pair[1] + 1)
        code = _code(child, child_order)
        if code not in seen:
            seen.add(code)
            children.append((child, child_order))
    return children


# -- orderly enumeration ---------------------------------------------------------


def enumerate_eogs(
    n: int, m_max: int, visitor: Optional[Callable[[EdgeOrderedGraph], None]] = None
) -> Iterator[EdgeOrderedGraph]:
    """One representative of every edge-ordered graph with 1..m_max edges on
    at most n vertices and no isolated vertices."""
    if n < 2 or m_max < 1:
        return
    stack: List[Pairs] = [((0, 1),)]
    while stack:
        pairs = stack.pop()
        graph = _to_graph(pairs, _order(pairs))
        if visitor is not None:
            visitor(graph)
        yield graph
        if len(pairs) < m_max:
            order = _order(pairs)
            children = _children(pairs, order, _candidate_pairs(pairs, order, n))
            stack.extend(child for child, _ in reversed(children))


# -- branch and bound ----------------------------------------------------------


@dataclass
class _Task:
    pairs: Pairs
    order: int
    n: int
    pattern: Pairs
    pattern_order: int
    best: int
    target: Optional[int]
    node_cap: int
    deadline: float


@dataclass
class _Outcome:
    nodes: int
    best: int
    best_pairs: Optional[Pairs]
    complete: bool


def _live(task: _Task, pairs: Pairs, order: int) -> List[Tuple[int, int]]:
    return [
        pair
        for pair in _candidate_pairs(pairs, order, task.n)
        if not contains_through_last_edge(
            pairs + (pair,), max(order, pair[1] + 1), task.pattern, task.pattern_order
        )
    ]


def _upper_bound(pairs: Pairs, order: int, n: int, live: Sequence[Tuple[int, int]]) -> int:
    fresh = n - order
    bound = len(pairs)
    for i, j in live:
        if j < order:
            bound += 1
        elif i < order:
            bound += fresh
        else:
            bound += comb(fresh, 2)
    return bound


def _search_subtree(task: _Task) -> _Outcome:
    outcome = _Outcome(nodes=0, best=task.best, best_pairs=None, complete=True)

    def visit(pairs: Pairs, order: int) -> None:
        if not outcome.complete:
            return
        if task.target is not None and outcome.best >= task.target:
            return
        outcome.nodes += 1
        if outcome.nodes > task.node_cap or (
            outcome.nodes % 512 == 0 and time.time() > task.deadline
        ):
            outcome.complete = False
            return
        if len(pairs) > outcome.best:
            outcome.best = len(pairs)
            outcome.best_pairs = pairs
        live = _live(task, pairs, order)
        bound = _upper_bound(pairs, order, task.n, live)
        if task.target is not None:
            if bound < task.target:
                return
        elif bound <= outcome.best:
            return
        for child, child_order in _children(pairs, order, live):
            visit(child, child_order)

    visit(task.pairs, task.order)
    return outcome


def _frontier(
    n: int, pattern: Pairs, pattern_order: int, depth: int
) -> Tuple[List[Tuple[Pairs, int]], int, Optional[Pairs], int]:
    """Expand the first ``depth`` levels breadth first; returns the nodes at
    that depth, the best value seen above it, its witness and a node count."""
    scout = _Task((), 0, n, pattern, pattern_order, 0, None, 0, 0.0)
    level: List[Tuple[Pairs, int]] = [((), 0)]
    best, best_pairs, nodes = 0, None, 0
    for _ in range(depth):
        following: List[Tuple[Pairs, int]] = []
        for pairs, order in level:
            nodes += 1
            if len(pairs) > best:
                best, best_pairs = len(pairs), pairs
            following.extend(_children(pairs, order, _live(scout, pairs, order)))
        level = following
    return level, best, best_pairs, nodes


def _run_tasks(tasks: List[_Task], threads: int) -> List[_Outcome]:
    if threads > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=min(threads, len(tasks))) as pool:
            return pool.map(_search_subtree, tasks)
    return [_search_subtree(task) for task in tasks]


def canonical_complete_orderings(n: int) -> List[Tuple[str, EdgeOrderedGraph]]:
    """The eight orderings of K_n that sort pairs i<j by (min or max end,
    then the other end), each key ascending or descending."""
    pairs = list(itertools.combinations(range(n), 2))
    orderings = []
    for primary in ("min", "max"):
        for first_sign in (1, -1):
            for second_sign in (1, -1):

                def key(pair: Tuple[int, int]) -> Tuple[int, int]:
                    lead, other = (pair[0], pair[1]) if primary == "min" else (pair[1], pair[0])
                    return first_sign * lead, second_sign * other

                ordered = sorted(pairs, key=key)
                name = "%s%s%s" % (primary, "+" if first_sign > 0 else "-", "+" if second_sign > 0 else "-")
                orderings.append(
                    (name, EdgeOrderedGraph(((i, j, r) for r, (i, j) in enumerate(ordered, 1)), range(n)))
                )
    return orderings


def _complete_witness(n: int, pattern: EdgeOrderedGraph) -> Optional[EdgeOrderedGraph]:
    for name, ordering in canonical_complete_orderings(n):
        if not contains(ordering, pattern):
            logger.debug("Canonical ordering %s of K_%d avoids the pattern", name, n)
            return ordering
    return None


def _first_optimum(candidates: Sequence[Tuple[int, Optional[Pairs]]]) -> Tuple[int, Pairs]:
    """Largest value and the first witness reaching it, in frontier-then-task order."""
    value = max(v for v, _ in candidates)
    winner = next((p for v, p in candidates if v == value and p is not None), ())
    return value, winner


def exact_ex(
    n: int,
    pattern: AnyGraph,
    budget: Optional[Budget] = None,
    threads: int = 1,
    witness_only: bool = False,
) -> TuranResult:
    """ex_<(n, pattern) with a witness graph.

    With ``witness_only`` the search only looks for an H-free ordering of K_n,
    which settles the value binom(n, 2) when it exists. Results and node counts
    do not depend on ``threads``. The witness is the first optimum found,
    taking the frontier first and then the subtrees in frontier order; each
    subtree keeps only its first optimum.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if pattern.m == 0:
        raise ValueError("The forbidden graph must be non-trivial: it needs at least one edge")
    budget = budget or Budget()
    base = pattern.underlying()
    complete_edges = comb(n, 2)

    if base.n > n:
        witness = canonical_complete_orderings(n)[0][1] if n > 1 else _to_graph((), n)
        return TuranResult(n, complete_edges, witness, SearchStatus.EXACT, 0)

    core = base.without_isolated()
    core_pairs = core.index_pairs()
    core_order = core.n

    if n >= 2:
        witness = _complete_witness(n, core)
        if witness is not None:
            return TuranResult(n, complete_edges, witness, SearchStatus.EXACT, 0)

    started = time.time()
    frontier, best, best_pairs, frontier_nodes = _frontier(n, core_pairs, core_order, FRONTIER_DEPTH)
    target = complete_edges if witness_only else None
    node_cap = max(1, budget.nodes // max(1, len(frontier)))
    tasks = [
        _Task(pairs, order, n, core_pairs, core_order, best, target, node_cap, started + budget.seconds)
        for pairs, order in frontier
    ]
    logger.info("Searching ex(%d) over %d subtrees with %d thread(s)", n, len(tasks), threads)
    outcomes = _run_tasks(tasks, threads)

    nodes = frontier_nodes + sum(o.nodes for o in outcomes)
    complete = all(o.complete for o in outcomes)
    candidates = [(best, best_pairs)] + [(o.best, o.best_pairs) for o in outcomes]
    value, winner = _first_optimum(candidates)
    witness = _to_graph(winner, n)
    if contains(witness, core):
        raise RuntimeError(f"Witness for ex({n}) contains the forbidden graph")

    if witness_only:
        status = SearchStatus.EXACT if value == complete_edges else SearchStatus.LOWER_BOUND_ONLY
    else:
        status = SearchStatus.EXACT if complete else SearchStatus.LOWER_BOUND_ONLY
    if not complete:
        logger.warning("Budget exhausted after %d nodes: %d is a lower bound", nodes, value)
    return TuranResult(n, value, witness, status, nodes)


# -- short-path constructions ----------------------------------------------------


class PendantEnd(enum.Enum):
    END1 = "end1"
    END2 = "end2"


def _fresh_vertex(graph: AnyGraph) -> Vertex:
    if all(isinstance(x, int) for x in graph.vertices):
        return 1 + max((int(x) for x in graph.vertices), default=-1)
    names = {str(x) for x in graph.vertices}
    return next(f"v{i}" for i in itertools.count() if f"v{i}" not in names)


def pendant_extension(pattern: AnyGraph, end: PendantEnd) -> EdgeOrderedGraph:
    """Add a new smallest edge from an end of the current smallest edge to a
    new vertex. END1/END2 are the ends of that edge as it is stored."""
    base = pattern.underlying()
    if base.m == 0:
        raise ValueError("pendant_extension needs a non-trivial graph")
    smallest = base.edges[0]
    anchor = smallest.u if end is PendantEnd.END1 else smallest.v
    fresh = _fresh_vertex(base)
    edges = [(anchor, fresh, 1)] + [(e.u, e.v, r + 1) for r, e in enumerate(base.edges, 1)]
    return EdgeOrderedGraph(edges, base.vertices + (fresh,))


@dataclass(frozen=True)
class SandwichCheck:
    n: int
    lower: TuranResult
    upper: TuranResult
    slack: int

    @property
    def holds(self) -> bool:
        """ex(n, H) <= ex(n, H') <= ex(n, H) + |V(H')| n"""
        return self.lower.value <= self.upper.value <= self.lower.value + self.slack


def sandwich_check(
    pattern: AnyGraph, n: int, end: PendantEnd, budget: Optional[Budget] = None, threads: int = 1
) -> SandwichCheck:
    extended = pendant_extension(pattern, end)
    lower = exact_ex(n, pattern, budget, threads)
    upper = exact_ex(n, extended, budget, threads)
    return SandwichCheck(n, lower, upper, extended.n * n)


# -- order chromatic number 3 certificate -----------------------------------------


def _k33_graph(rng: np.random.Generator, largest: bool) -> EdgeOrderedGraph:
    """Tripartite K_{3,3,3} on u1..u3, v1..v3, w1..w3 whose v-w edges carry
    the nine smallest (or largest) labels ordered by 3i + j, the other
    eighteen edges a random order."""
    u = [f"u{i}" for i in range(1, 4)]
    v = [f"v{i}" for i in range(1, 4)]
    w = [f"w{i}" for i in range(1, 4)]
    inner = [(v[i], w[j]) for i in range(3) for j in range(3)]
    outer = [(a, b) for a in u for b in v + w]
    offset = 18 if largest else 0
    edges = [(a, b, offset + 1 + k) for k, (a, b) in enumerate(inner)]
    others = rng.permutation(len(outer)) + (1 if largest else 10)
    edges.extend((a, b, int(label)) for (a, b), label in zip(outer, others))
    return EdgeOrderedGraph(edges, u + v + w)


@dataclass(frozen=True)
class SampleRate:
    hits: int
    samples: int

    @property
    def rate(self) -> float:
        return self.hits / self.samples if self.samples else 0.0


def k33_canonical_sample(seed: int, samples: int, largest: bool = False) -> SampleRate:
    """How often the K_{3,3,3} orderings above contain P6^{21354}."""
    rng = np.random.default_rng(seed)
    pattern = parse_path_spec("P:21354")
    hits = 0
    for _ in range(samples):
        graph = _k33_graph(rng, largest)
        if find_embedding(graph, pattern) is not None:
            hits += 1
    return SampleRate(hits, samples)


# -- the 5-edge path table ----------------------------------------------------------


@dataclass(frozen=True)
class Table1Row:
    labeling: str
    chi: str
    stated_bound: str
    growth: str
    ocn2: bool
    values: Tuple[Tuple[int, int, str], ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "labeling": self.labeling,
            "chi": self.chi,
            "stated_bound": self.stated_bound,
            "class": self.growth,
            "ocn2": self.ocn2,
            "ex": [{"n": n, "value": value, "status": status} for n, value, status in self.values],
        }


def table1_rows() -> List[Tuple[str, str, str]]:
    """(labeling, order chromatic number, stated bound) for every 5-edge path."""
    return [(labels, *KNOWN_PATH_BOUNDS[labels]) for labels in TABLE1_LABELINGS]


def table1_report(
    max_n: int,
    budget: Optional[Budget] = None,
    threads: int = 1,
    labelings: Optional[Sequence[str]] = None,
) -> List[Table1Row]:
    wanted = set(labelings) if labelings else None
    report = []
    for labels, chi, bound in table1_rows():
        if wanted is not None and labels not in wanted:
            continue
        path = parse_path_spec("P:" + labels)
        verdict = classify_path(path)
        values = []
        for n in range(1, max_n + 1):
            result = exact_ex(n, path, budget, threads, witness_only=chi == "inf")
            values.append((n, result.value, result.status.value))
        logger.info("%s: %s %s", path_spec(path), verdict.growth.value, values)
        report.append(
            Table1Row(
                labeling=labels,
                chi=chi,
                stated_bound=bound,
                growth=verdict.growth.value,
                ocn2=ocn2_forest_test(path) is not None,
                values=tuple(values),
            )
        )
    return report
