#!/usr/bin/env python3
"""
Conformance suites

Each suite sweeps a family of instances (exhaustive small cases and seeded
random ones), checks one structural claim per instance and collects the
counterexamples together with the tightest observed slack of every bound.
Identical settings give identical reports whatever the number of threads.
Sweeps stop at the time budget, which the report then counts as a failure.
"""

import csv
import io
import json
import logging
import multiprocessing
import time
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from eogx.classify import (
    KNOWN_PATH_BOUNDS,
    ExtensionSequence,
    ExtensionStep,
    Growth,
    alt_right_caterpillar_check,
    check_verdict,
    classify_connected,
    classify_path,
    is_caterpillar_ordered,
    is_right_caterpillar,
    is_semi_caterpillar,
    ocn2_forest_test,
    path_shape_growth,
    peel_extensions,
    semi_via_forbidden_paths,
    spine_distances,
)
from eogx.containment import contains_bigraph, is_embedding
from eogx.generate import (
    bigraph_frontier,
    bigraph_trees,
    edge_ordered_paths,
    edge_ordered_trees,
    expand_bigraphs,
    random_bigraph,
    state_to_bigraph,
)
from eogx.graph import (
    EdgeOrderedBigraph,
    EdgeOrderedGraph,
    Side,
    bipartitions,
    format_graph,
    is_isomorphic,
    parse_path_spec,
    reverse,
)
from eogx.leaning import (
    LONG_ZIGZAG_MINUS,
    SHORT_ZIGZAG_MINUS,
    extract_caterpillar,
    halves_decomposition,
    inclined_partition,
    iterate,
    lean_counts,
    lem1_check,
    lem1_premise,
)
from eogx.matrix01 import (
    Matrix01,
    all_matrices,
    contains_pattern,
    eex_bruteforce,
    eex_exact,
    forbidden_family,
    is_connected_matrix,
    reach_from_unit,
    staircase_certificate,
)
from eogx.oracle import (
    Budget,
    PendantEnd,
    SearchStatus,
    exact_ex,
    k33_canonical_sample,
    sandwich_check,
    table1_rows,
)

logger = logging.getLogger(__name__)

MAX_STORED_FAILURES = 20
SPLIT_EDGES = 4
CHUNK_SIZE = 250
LEANING_CS = (1, 2, 3)
LEANING_DEPTHS = (1, 2, 3)
# bound suites draw this many random bigraphs per configured sample
BOUND_SAMPLE_FACTOR = 10
# extraction hosts are dense, at most EXTRACT_HOST_FACTOR of them per wanted instance
EXTRACT_VERTICES = (56, 72)
EXTRACT_DENSITY = (0.9, 1.0)
EXTRACT_CHUNK_SIZE = 25
EXTRACT_HOST_FACTOR = 4


@dataclass(frozen=True)
class VerifySettings:
    seed: int = 7
    samples: int = 1000
    max_tree_edges: int = 6
    max_bigraph_edges: int = 8
    max_matrix_size: int = 4
    random_vertices: int = 40
    max_n: int = 6
    threads: int = 1
    budget: Budget = Budget()

    @classmethod
    def from_config(cls, config: Dict[str, Any], threads: int) -> "VerifySettings":
        return cls(
            seed=int(config["seed"]),
            samples=int(config["samples"]),
            max_tree_edges=int(config["exhaustive_max_edges"]),
            max_bigraph_edges=int(config["exhaustive_bigraph_edges"]),
            max_matrix_size=int(config["exhaustive_matrix_size"]),
            random_vertices=int(config["random_vertices"]),
            max_n=int(config["max_n"]),
            threads=threads,
            budget=Budget.from_config(config),
        )


@dataclass
class Counterexample:
    claim: str
    instance: str

    def to_json(self) -> Dict[str, str]:
        return {"claim": self.claim, "instance": self.instance}


@dataclass
class VerifyReport:
    suite: str
    instances: int = 0
    failure_count: int = 0
    failures: List[Counterexample] = field(default_factory=list)
    margins: Dict[str, float] = field(default_factory=dict)
    tallies: Dict[str, int] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def check(self, ok: bool, claim: str, instance: Any) -> bool:
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_STORED_FAILURES:
                self.failures.append(Counterexample(claim, serialize_instance(instance)))
            logger.warning("%s: %s", self.suite, claim)
        return ok

    def tighten(self, bound: str, slack: float) -> None:
        """Keep the smallest slack seen for a bound."""
        if bound not in self.margins or slack < self.margins[bound]:
            self.margins[bound] = slack

    def tally(self, name: str, count: int = 1) -> None:
        self.tallies[name] = self.tallies.get(name, 0) + count

    def merge(self, other: "VerifyReport") -> None:
        self.instances += other.instances
        self.failure_count += other.failure_count
        room = MAX_STORED_FAILURES - len(self.failures)
        self.failures.extend(other.failures[: max(0, room)])
        for bound, slack in other.margins.items():
            self.tighten(bound, slack)
        for name, count in other.tallies.items():
            self.tally(name, count)
        self.notes.extend(other.notes)

    def to_json(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "failures": self.failure_count,
            "counterexamples": [f.to_json() for f in self.failures],
            "margins": dict(sorted(self.margins.items())),
            "tallies": dict(sorted(self.tallies.items())),
            "notes": list(self.notes),
            "passed": self.passed,
        }


def serialize_instance(instance: Any) -> str:
    """Text that load_graph / load_matrix read back."""
    if isinstance(instance, Matrix01):
        return instance.to_text()
    if isinstance(instance, EdgeOrderedGraph):
        return format_graph(instance)
    return str(instance)


def reports_to_json(reports: Iterable[VerifyReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2) + "\n"


def reports_to_csv(reports: Iterable[VerifyReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["suite", "instances", "failures", "passed", "margins"])
    for r in reports:
        margins = ";".join(f"{k}={v:g}" for k, v in sorted(r.margins.items()))
        writer.writerow([r.suite, r.instances, r.failure_count, r.passed, margins])
    return buffer.getvalue()


# -- per-bigraph checks -------------------------------------------------------------


def check_bounds(bigraph: EdgeOrderedBigraph, report: VerifyReport) -> None:
    """Non-leaning edges are at most 2cn, edges outside both i-th iterates
    at most 2 i^2 c n and non-inclined edges at most 2n."""
    report.instances += 1
    n = bigraph.n
    all_labels = set(bigraph.labels)
    depth = max(LEANING_DEPTHS)
    for c in LEANING_CS:
        counts = lean_counts(bigraph, c)
        report.tighten(f"non-leaning c={c}", 2 * c * n - counts.non_leaning)
        report.check(
            counts.non_leaning <= 2 * c * n,
            f"{counts.non_leaning} {c}-non-leaning edges exceed 2cn = {2 * c * n}",
            bigraph,
        )
        left = iterate(bigraph, c, depth, Side.LEFT)
        right = iterate(bigraph, c, depth, Side.RIGHT)
        for chain in (left, right):
            for outer, inner in zip(chain.graphs, chain.graphs[1:]):
                report.check(
                    set(inner.labels) <= set(outer.labels),
                    f"{chain.side.name.lower()} iterates for c={c} are not nested",
                    bigraph,
                )
        for i in LEANING_DEPTHS:
            residual = all_labels - set(left.graphs[i].labels) - set(right.graphs[i].labels)
            bound = 2 * i * i * c * n
            report.tighten(f"residual c={c} i={i}", bound - len(residual))
            report.check(
                len(residual) <= bound,
                f"{len(residual)} edges outside both iterates (c={c}, i={i}) exceed {bound}",
                bigraph,
            )
    partition = inclined_partition(bigraph)
    report.tighten("non-inclined", 2 * n - len(partition.non_inclined))
    report.check(
        len(partition.non_inclined) <= 2 * n,
        f"{len(partition.non_inclined)} non-inclined edges exceed 2n = {2 * n}",
        bigraph,
    )


def check_inclined(bigraph: EdgeOrderedBigraph, report: VerifyReport) -> None:
    """Inclined parts of zigzag avoiders and the halves split."""
    report.instances += 1
    partition = inclined_partition(bigraph)
    report.check(
        not (partition.left & partition.right),
        "an edge is both left and right inclined",
        bigraph,
    )
    for mirrored in (False, True):
        if lem1_premise(bigraph, mirrored):
            report.tally("right premise" if mirrored else "left premise")
            report.check(
                lem1_check(bigraph, mirrored),
                "avoids P6^{%s13254} but its %s-inclined part contains P5^{%s2143}"
                % ("-" if mirrored else "+", "right" if mirrored else "left", "+" if mirrored else "-"),
                bigraph,
            )
    if not contains_bigraph(bigraph, LONG_ZIGZAG_MINUS) and not contains_bigraph(
        bigraph, SHORT_ZIGZAG_MINUS
    ):
        report.tally("halves")
        halves = halves_decomposition(bigraph)
        report.check(
            halves.separated,
            "lower and upper left-inclined halves share a vertex",
            bigraph,
        )


def extraction_targets() -> List[Tuple[str, EdgeOrderedBigraph]]:
    """T0, P4^{+132} and a right caterpillar of depth two."""
    depth_two = ExtensionSequence(
        root=("a", "b"),
        steps=(
            ExtensionStep(base=("a", "b"), left_leaves=("c",), right_leaves=("d",)),
            ExtensionStep(base=("a", "c"), left_leaves=("e",), right_leaves=("f",)),
        ),
    ).replay()
    return [
        ("T0", parse_path_spec("P:+1")),  # type: ignore[list-item]
        ("P:+132", parse_path_spec("P:+132")),  # type: ignore[list-item]
        ("depth-2", depth_two),
    ]


@lru_cache(maxsize=None)
def _certified_targets() -> Tuple[Tuple[str, EdgeOrderedBigraph, ExtensionSequence], ...]:
    certified = []
    for name, target in extraction_targets():
        sequence = peel_extensions(target)
        if sequence is None:
            raise RuntimeError(f"Extraction target {name} is not a right caterpillar")
        certified.append((name, target, sequence))
    return tuple(certified)


def check_extract(bigraph: EdgeOrderedBigraph, report: VerifyReport) -> None:
    """Wherever the needed left iterate is non-empty the extracted map is a copy."""
    for name, target, sequence in _certified_targets():
        if iterate(bigraph, target.n, sequence.depth, Side.LEFT).last.m == 0:
            continue
        report.instances += 1
        report.tally(name)
        embedding = extract_caterpillar(bigraph, target, sequence)
        report.check(
            embedding is not None and is_embedding(bigraph, target, embedding, sided=True),
            f"no valid copy of {name} extracted from a non-empty iterate",
            bigraph,
        )


BIGRAPH_CHECKS: Dict[str, Callable[[EdgeOrderedBigraph, VerifyReport], None]] = {
    "leaning": check_bounds,
    "inclined": check_inclined,
    "extract": check_extract,
}


# -- sweeps, split into tasks with fixed boundaries ------------------------------------


@dataclass(frozen=True)
class _SweepTask:
    suite: str
    root: Any = None
    max_edges: int = 0
    seed: int = 0
    chunk: int = 0
    count: int = 0
    min_vertices: int = 2
    max_vertices: int = 0
    min_density: float = 0.1
    max_density: float = 0.95
    deadline: float = 0.0


def chunk_bigraphs(
    seed: int,
    chunk: int,
    count: int,
    max_vertices: int,
    min_density: float = 0.1,
    min_vertices: int = 2,
    max_density: float = 0.95,
) -> Iterator[EdgeOrderedBigraph]:
    """The ``count`` random bigraphs of one chunk; chunk k always draws the same ones."""
    rng = np.random.default_rng([seed, chunk])
    for _ in range(count):
        n = int(rng.integers(min_vertices, max(min_vertices + 1, max_vertices + 1)))
        density = float(rng.uniform(min_density, max_density))
        yield random_bigraph(rng, n, density)


def _task_bigraphs(task: _SweepTask) -> Iterator[EdgeOrderedBigraph]:
    if task.root is not None:
        for state in expand_bigraphs(task.root, task.max_edges):
            yield state_to_bigraph(state)
    else:
        yield from chunk_bigraphs(
            task.seed,
            task.chunk,
            task.count,
            task.max_vertices,
            task.min_density,
            task.min_vertices,
            task.max_density,
        )


def _run_sweep_task(task: _SweepTask) -> Tuple[VerifyReport, bool]:
    """The task's report, and whether it got through all of its instances."""
    check = BIGRAPH_CHECKS[task.suite]
    report = VerifyReport(task.suite)
    for bigraph in _task_bigraphs(task):
        if task.deadline and time.time() > task.deadline:
            return report, False
        check(bigraph, report)
    return report, True


def _run_sweep(
    tasks: List[_SweepTask],
    threads: int,
    report: VerifyReport,
    deadline: float,
    done: Optional[Callable[[VerifyReport], bool]] = None,
) -> int:
    """Merge task reports in task order and return how many tasks finished.

    Stops at the deadline, or after the first task whose merge makes
    ``done(report)`` true.
    """
    tasks = [replace(task, deadline=deadline) for task in tasks]
    finished = 0

    def consume(partials: Iterable[Tuple[VerifyReport, bool]]) -> None:
        nonlocal finished
        for partial, complete in partials:
            report.merge(partial)
            if not complete:
                return
            finished += 1
            logger.info(
                "%s: %d of %d tasks, %d instances, %d failures",
                report.suite,
                finished,
                len(tasks),
                report.instances,
                report.failure_count,
            )
            if done is not None and done(report):
                return

    if threads > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=min(threads, len(tasks))) as pool:
            consume(pool.imap(_run_sweep_task, tasks))
    else:
        consume(_run_sweep_task(task) for task in tasks)
    return finished


def _sweep(tasks: List[_SweepTask], settings: VerifySettings, report: VerifyReport, started: float) -> None:
    finished = _run_sweep(tasks, settings.threads, report, started + settings.budget.seconds)
    report.check(
        finished == len(tasks),
        f"time budget of {settings.budget.seconds:g} s exhausted after {finished} of {len(tasks)} tasks",
        f"budget_secs={settings.budget.seconds:g}",
    )


def _exhaustive_tasks(suite: str, settings: VerifySettings, report: VerifyReport) -> List[_SweepTask]:
    """Checks the states above the split level directly, returns tasks for the rest."""
    if settings.max_bigraph_edges < 1:
        return []
    above, roots = bigraph_frontier(settings.max_bigraph_edges, SPLIT_EDGES)
    check = BIGRAPH_CHECKS[suite]
    for state in above:
        check(state_to_bigraph(state), report)
    return [_SweepTask(suite, root=root, max_edges=settings.max_bigraph_edges) for root in roots]


def _random_tasks(
    suite: str, settings: VerifySettings, salt: int, total: int, min_density: float = 0.1
) -> List[_SweepTask]:
    tasks = []
    for chunk, start in enumerate(range(0, total, CHUNK_SIZE)):
        tasks.append(
            _SweepTask(
                suite,
                seed=settings.seed * 1000 + salt,
                chunk=chunk,
                count=min(CHUNK_SIZE, total - start),
                max_vertices=settings.random_vertices,
                min_density=min_density,
            )
        )
    return tasks


def _extraction_tasks(settings: VerifySettings) -> List[_SweepTask]:
    """Dense host chunks, enough for EXTRACT_HOST_FACTOR hosts per wanted instance."""
    size = max(1, min(EXTRACT_CHUNK_SIZE, settings.samples))
    chunks = EXTRACT_HOST_FACTOR * -(-settings.samples // size)
    low, high = EXTRACT_VERTICES
    return [
        _SweepTask(
            "extract",
            seed=settings.seed * 1000 + 3,
            chunk=chunk,
            count=size,
            min_vertices=low,
            max_vertices=high,
            min_density=EXTRACT_DENSITY[0],
            max_density=EXTRACT_DENSITY[1],
        )
        for chunk in range(chunks)
    ]


# -- suites ------------------------------------------------------------------------


def suite_semi(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("semi")
    for tree in edge_ordered_trees(settings.max_tree_edges):
        if ocn2_forest_test(tree) is None:
            continue
        report.instances += 1
        semi = is_semi_caterpillar(tree)
        via_paths = semi_via_forbidden_paths(tree)
        report.check(
            semi == via_paths,
            f"semi-caterpillar test says {semi}, forbidden-path test says {via_paths}",
            tree,
        )
        if is_caterpillar_ordered(tree):
            report.check(semi, "caterpillar ordering that is not a semi-caterpillar", tree)
    return report


def suite_semi_right(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("semi-right")
    for tree in edge_ordered_trees(settings.max_tree_edges):
        report.instances += 1
        expected = is_semi_caterpillar(tree) and ocn2_forest_test(tree) is not None
        found = any(is_right_caterpillar(b) for b in bipartitions(tree))
        report.check(
            expected == found,
            f"semi-caterpillar with a close 2-coloring = {expected}, right caterpillar bipartition = {found}",
            tree,
        )
        verdict = classify_connected(tree)
        report.check(check_verdict(tree, verdict), f"evidence does not re-check: {verdict.describe()}", tree)
        mirrored = classify_connected(reverse(tree))
        report.check(
            verdict.growth is mirrored.growth,
            "classification changes when the edge order is reversed",
            tree,
        )
    return report


def suite_equivalence(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("equivalence")
    for bigraph in bigraph_trees(settings.max_tree_edges):
        report.instances += 1
        right = is_right_caterpillar(bigraph)
        sequence = peel_extensions(bigraph)
        report.check(
            right == (sequence is not None),
            f"right caterpillar = {right} but extension sequence found = {sequence is not None}",
            bigraph,
        )
        if sequence is not None:
            report.tally(f"depth {sequence.depth}")
            report.check(
                is_isomorphic(sequence.replay(), bigraph),
                "replayed extension sequence differs from the input",
                bigraph,
            )
        if is_semi_caterpillar(bigraph):
            report.check(
                alt_right_caterpillar_check(bigraph) == right,
                "bridge-end test disagrees with the close-vertex test",
                bigraph,
            )
    return report


def _connected_subgraphs(bigraph: EdgeOrderedBigraph) -> Iterator[EdgeOrderedBigraph]:
    labels = bigraph.labels
    for size in range(1, len(labels)):
        for chosen in combinations(labels, size):
            part = bigraph.edge_subgraph(chosen).without_isolated()
            if part.is_connected():
                yield part  # type: ignore[misc]


def suite_remarks(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("remarks")
    example = None
    for bigraph in bigraph_trees(settings.max_tree_edges):
        if example is None and is_semi_caterpillar(bigraph):
            if any(not is_semi_caterpillar(part) for part in _connected_subgraphs(bigraph)):
                example = bigraph
        if not is_right_caterpillar(bigraph):
            continue
        report.instances += 1
        _, distance, right_distance = spine_distances(bigraph)
        report.tighten("spine distance", 2 - distance)
        report.tighten("right spine distance", 1 - right_distance)
        report.check(
            distance <= 2 and right_distance <= 1,
            f"no path within distance 2 (right vertices 1) of every vertex: {distance}/{right_distance}",
            bigraph,
        )
        report.check(
            all(is_right_caterpillar(part) for part in _connected_subgraphs(bigraph)),
            "connected subgraph of a right caterpillar is not one",
            bigraph,
        )
    if example is not None:
        report.notes.append("semi-caterpillar with a connected subgraph that is not one:\n" + format_graph(example))
    else:
        report.notes.append(
            f"every connected subgraph of a semi-caterpillar is one up to {settings.max_tree_edges} edges"
        )
    return report


def suite_paths(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("paths")
    for k in range(2, 6):
        for path in edge_ordered_paths(k):
            report.instances += 1
            shape, _ = path_shape_growth(path)
            structural = classify_connected(path)
            if report.check(
                shape is structural.growth,
                f"monotone/flipped test says {shape.value}, structure says {structural.growth.value}",
                path,
            ):
                verdict = classify_path(path)
                report.check(check_verdict(path, verdict), f"evidence does not re-check: {verdict.describe()}", path)
    for labels, (chi, bound) in KNOWN_PATH_BOUNDS.items():
        report.instances += 1
        path = parse_path_spec("P:" + labels)
        shape, _ = path_shape_growth(path)
        linear = bound == "Theta(n)"
        report.check(
            (shape is Growth.LINEAR) == linear,
            f"P:{labels} classified {shape.value}, known bound {bound}",
            path,
        )
        report.check(
            (ocn2_forest_test(path) is not None) == (chi == "2"),
            f"P:{labels} has order chromatic number {chi} but the 2-coloring test disagrees",
            path,
        )
    report.tally("five-edge rows", len(table1_rows()))
    report.notes.append("computed values for linear-class paths have no published ground truth")
    return report


def suite_leaning(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("leaning")
    started = time.time()
    tasks = _exhaustive_tasks("leaning", settings, report)
    tasks += _random_tasks("leaning", settings, 1, BOUND_SAMPLE_FACTOR * settings.samples)
    _sweep(tasks, settings, report, started)
    return report


def suite_inclined(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("inclined")
    started = time.time()
    tasks = _exhaustive_tasks("inclined", settings, report)
    tasks += _random_tasks("inclined", settings, 2, BOUND_SAMPLE_FACTOR * settings.samples)
    _sweep(tasks, settings, report, started)
    return report


def suite_extract(settings: VerifySettings) -> VerifyReport:
    """Extraction on dense random hosts until every target has ``samples``
    hosts with a non-empty iterate."""
    report = VerifyReport("extract")
    names = [name for name, _ in extraction_targets()]

    def enough(current: VerifyReport) -> bool:
        return all(current.tallies.get(name, 0) >= settings.samples for name in names)

    tasks = _extraction_tasks(settings)
    finished = _run_sweep(tasks, settings.threads, report, time.time() + settings.budget.seconds, enough)
    for name in names:
        seen = report.tallies.get(name, 0)
        report.check(
            seen >= settings.samples,
            f"only {seen} of {settings.samples} hosts have a non-empty iterate for {name} "
            f"after {finished} of {len(tasks)} chunks",
            f"seed={settings.seed}",
        )
    return report


def suite_k33(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("k33")
    for largest in (False, True):
        sample = k33_canonical_sample(settings.seed, settings.samples, largest)
        variant = "largest" if largest else "smallest"
        report.instances += sample.samples
        report.tighten(f"rate ({variant})", sample.rate - 1.0)
        report.check(
            sample.hits == sample.samples,
            f"{sample.samples - sample.hits} of {sample.samples} orderings ({variant} nine) avoid P6^21354",
            f"seed={settings.seed}",
        )
    return report


def suite_add(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("add")
    for spec in ("P:12", "P:123", "P:132"):
        pattern = parse_path_spec(spec)
        for end in PendantEnd:
            for n in range(1, min(settings.max_n, 5) + 1):
                report.instances += 1
                result = sandwich_check(pattern, n, end, settings.budget, settings.threads)
                exact = result.lower.is_exact and result.upper.is_exact
                report.tighten("sandwich", result.lower.value + result.slack - result.upper.value)
                report.check(
                    exact and result.holds,
                    f"{spec} at {end.value}, n={n}: ex={result.lower.value}, "
                    f"extended ex={result.upper.value}, slack {result.slack}",
                    pattern,
                )
    return report


def suite_oracle(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("oracle")
    for labels in ("1423", "2413"):
        report.instances += 1
        result = exact_ex(5, parse_path_spec("P:" + labels), settings.budget, settings.threads)
        report.check(
            result.is_exact and result.value == 10,
            f"ex(5, P5^{labels}) = {result.value} ({result.status.value}), expected 10",
            "P:" + labels,
        )
    if settings.max_n >= 6:
        for labels, chi, _ in table1_rows():
            if chi != "inf":
                continue
            report.instances += 1
            result = exact_ex(6, parse_path_spec("P:" + labels), settings.budget, settings.threads, witness_only=True)
            report.check(
                result.status is SearchStatus.EXACT and result.value == 15,
                f"ex(6, P6^{labels}) = {result.value} ({result.status.value}), expected 15",
                "P:" + labels,
            )
    for spec in ("P:123", "P:132"):
        pattern = parse_path_spec(spec)
        previous = 0
        for n in range(1, min(settings.max_n, 5) + 1):
            report.instances += 1
            value = exact_ex(n, pattern, settings.budget, settings.threads).value
            mirrored = exact_ex(n, reverse(pattern), settings.budget, settings.threads).value
            report.check(value >= previous, f"ex(n, {spec}) decreases at n={n}", pattern)
            report.check(value == mirrored, f"ex({n}, {spec}) changes when the order is reversed", pattern)
            previous = value
    return report


def suite_matrix(settings: VerifySettings) -> VerifyReport:
    report = VerifyReport("matrix")
    unit = Matrix01([[1]])
    square = Matrix01([[1, 1], [1, 1]])
    for n in range(1, 7):
        report.instances += 1
        report.check(eex_exact(n, unit, settings.budget).value == 0, f"eex({n}, (1)) is not 0", unit)
    for n, expected in ((2, 3), (3, 6)):
        report.instances += 1
        result = eex_exact(n, square, settings.budget)
        brute = eex_bruteforce(n, square)
        report.check(
            result.value == expected == brute and not contains_pattern(result.witness, square),
            f"eex({n}, (11;11)) = {result.value}, brute force {brute}, expected {expected}",
            square,
        )
    family = forbidden_family()
    size = settings.max_matrix_size
    for matrix in all_matrices(size, size):
        if matrix.is_zero or not is_connected_matrix(matrix):
            continue
        report.instances += 1
        if staircase_certificate(matrix) is None:
            report.tally("non-staircase")
            report.check(
                any(contains_pattern(matrix, member) for member in family),
                "connected non-staircase matrix avoids the whole forbidden family",
                matrix,
            )
        else:
            report.tally("staircase")
            report.check(
                reach_from_unit(matrix) is not None,
                "staircase matrix not reachable from (1) by elementary operations",
                matrix,
            )
    return report


SUITES: Dict[str, Callable[[VerifySettings], VerifyReport]] = {
    "semi": suite_semi,
    "semi-right": suite_semi_right,
    "equivalence": suite_equivalence,
    "remarks": suite_remarks,
    "paths": suite_paths,
    "leaning": suite_leaning,
    "inclined": suite_inclined,
    "extract": suite_extract,
    "k33": suite_k33,
    "add": suite_add,
    "oracle": suite_oracle,
    "matrix": suite_matrix,
}


def run_suites(names: Iterable[str], settings: VerifySettings) -> List[VerifyReport]:
    chosen: List[str] = []
    for name in names:
        if name == "all":
            chosen.extend(s for s in SUITES if s not in chosen)
        elif name in SUITES:
            if name not in chosen:
                chosen.append(name)
        else:
            raise ValueError(f"Unknown suite '{name}', expected one of: all, {', '.join(SUITES)}")
    reports = []
    for name in chosen:
        logger.info("Running suite %s", name)
        reports.append(SUITES[name](settings))
        logger.info("Suite %s: %d instances, %d failures", name, reports[-1].instances, reports[-1].failure_count)
    return reports
