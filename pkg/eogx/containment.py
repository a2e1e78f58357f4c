#!/usr/bin/env python3
"""
Order-preserving subgraph containment

A copy of H in G is an injective vertex map sending every edge of H to an edge
of G such that the images keep the relative order of H's labels. The search
walks H's edges in increasing order and asks for strictly increasing image
ranks, so most branches die after the first couple of edges.
"""

import bisect
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from eogx.graph import AnyGraph, EdgeOrderedBigraph, Side, Vertex

logger = logging.getLogger(__name__)

IndexPairs = Sequence[Tuple[int, int]]


@dataclass(frozen=True)
class Embedding:
    """Vertex map of one copy, as (pattern vertex, host vertex) pairs."""

    vertex_map: Tuple[Tuple[Vertex, Vertex], ...]

    def as_dict(self) -> Dict[Vertex, Vertex]:
        return dict(self.vertex_map)

    def __getitem__(self, x: Vertex) -> Vertex:
        for source, target in self.vertex_map:
            if source == x:
                return target
        raise KeyError(x)

    def describe(self) -> str:
        return ", ".join(f"{source} -> {target}" for source, target in self.vertex_map)

    def to_json(self) -> Dict[str, Vertex]:
        return {str(source): target for source, target in self.vertex_map}


class _Matcher:
    """Backtracking search over index-form graphs.

    Host and pattern are given as edge lists in rank order over vertices
    0..order-1. Sides, when given, have to match vertex by vertex.
    """

    def __init__(
        self,
        host_pairs: IndexPairs,
        host_order: int,
        pattern_pairs: IndexPairs,
        pattern_order: int,
        host_sides: Optional[Sequence[Side]] = None,
        pattern_sides: Optional[Sequence[Side]] = None,
    ):
        self._host = list(host_pairs)
        self._pattern = list(pattern_pairs)
        self._host_order = host_order
        self._pattern_order = pattern_order
        self._host_sides = host_sides
        self._pattern_sides = pattern_sides

        self._adjacent: List[Dict[int, int]] = [dict() for _ in range(host_order)]
        self._incident: List[List[int]] = [[] for _ in range(host_order)]
        for r, (x, y) in enumerate(self._host):
            self._adjacent[x][y] = r
            self._adjacent[y][x] = r
            self._incident[x].append(r)
            self._incident[y].append(r)

        degree = [0] * pattern_order
        for a, b in self._pattern:
            degree[a] += 1
            degree[b] += 1
        self._isolated = [p for p in range(pattern_order) if degree[p] == 0]

    @classmethod
    def for_graphs(cls, host: AnyGraph, pattern: AnyGraph, sided: bool) -> "_Matcher":
        host_sides = pattern_sides = None
        if sided:
            if not (
                isinstance(host, EdgeOrderedBigraph)
                and isinstance(pattern, EdgeOrderedBigraph)
            ):
                raise ValueError("Side-respecting containment needs two bigraphs")
            host_sides = [host.side(x) for x in host.vertices]
            pattern_sides = [pattern.side(x) for x in pattern.vertices]
        return cls(
            host.index_pairs(),
            host.n,
            pattern.index_pairs(),
            pattern.n,
            host_sides,
            pattern_sides,
        )

    def _fits(self, p: int, h: int) -> bool:
        if self._host_sides is None:
            return True
        return self._host_sides[h] is self._pattern_sides[p]  # type: ignore[index]

    def search(self, pin_first: bool = False) -> Iterator[List[int]]:
        """Yield pattern->host index maps; with ``pin_first`` the smallest
        pattern edge must land on the smallest host edge."""
        if self._pattern_order > self._host_order or len(self._pattern) > len(self._host):
            return
        image = [-1] * self._pattern_order
        used = [False] * self._host_order
        yield from self._extend(0, -1, image, used, pin_first)

    def _extend(
        self, j: int, bound: int, image: List[int], used: List[bool], pinned: bool
    ) -> Iterator[List[int]]:
        host = self._host
        pattern = self._pattern
        if j == len(pattern):
            yield from self._place_isolated(0, image, used)
            return
        # every remaining pattern edge needs its own host rank above bound
        if len(host) - bound - 1 < len(pattern) - j:
            return

        a, b = pattern[j]
        image_a, image_b = image[a], image[b]

        if image_a >= 0 and image_b >= 0:
            r = self._adjacent[image_a].get(image_b)
            if r is not None and r > bound:
                yield from self._extend(j + 1, r, image, used, False)
            return

        if image_a >= 0 or image_b >= 0:
            known, free = (image_a, b) if image_a >= 0 else (image_b, a)
            ranks = self._incident[known]
            for r in ranks[bisect.bisect_right(ranks, bound):]:
                x, y = host[r]
                w = y if x == known else x
                if used[w] or not self._fits(free, w):
                    continue
                image[free] = w
                used[w] = True
                yield from self._extend(j + 1, r, image, used, False)
                image[free] = -1
                used[w] = False
            return

        last = bound + 2 if pinned else len(host)
        for r in range(bound + 1, last):
            x, y = host[r]
            if used[x] or used[y]:
                continue
            for s, t in ((x, y), (y, x)):
                if not (self._fits(a, s) and self._fits(b, t)):
                    continue
                image[a], image[b] = s, t
                used[s] = used[t] = True
                yield from self._extend(j + 1, r, image, used, False)
                image[a] = image[b] = -1
                used[s] = used[t] = False

    def _place_isolated(
        self, i: int, image: List[int], used: List[bool]
    ) -> Iterator[List[int]]:
        if i == len(self._isolated):
            yield list(image)
            return
        p = self._isolated[i]
        for h in range(self._host_order):
            if used[h] or not self._fits(p, h):
                continue
            image[p] = h
            used[h] = True
            yield from self._place_isolated(i + 1, image, used)
            image[p] = -1
            used[h] = False


def _require_pattern(pattern: AnyGraph) -> None:
    if pattern.m == 0:
        raise ValueError("The pattern must be non-trivial: it needs at least one edge")


def _to_embedding(host: AnyGraph, pattern: AnyGraph, image: List[int]) -> Embedding:
    return Embedding(
        tuple((x, host.vertices[image[i]]) for i, x in enumerate(pattern.vertices))
    )


def enumerate_embeddings(
    host: AnyGraph, pattern: AnyGraph, sided: bool = False
) -> Iterator[Embedding]:
    """All copies of ``pattern`` in ``host`` as distinct vertex maps."""
    _require_pattern(pattern)
    matcher = _Matcher.for_graphs(host, pattern, sided)
    for image in matcher.search():
        yield _to_embedding(host, pattern, image)


def find_embedding(
    host: AnyGraph, pattern: AnyGraph, sided: bool = False
) -> Optional[Embedding]:
    return next(enumerate_embeddings(host, pattern, sided), None)


def contains(host: AnyGraph, pattern: AnyGraph) -> bool:
    """Whether ``host`` has an order-preserving copy of ``pattern``; sides,
    if any, are ignored."""
    return find_embedding(host, pattern) is not None


def contains_bigraph(host: EdgeOrderedBigraph, pattern: EdgeOrderedBigraph) -> bool:
    """Like ``contains`` but left vertices must go to left vertices and right
    vertices to right vertices."""
    return find_embedding(host, pattern, sided=True) is not None


def is_embedding(
    host: AnyGraph, pattern: AnyGraph, embedding: Embedding, sided: bool = False
) -> bool:
    """Independent re-check of a claimed copy."""
    mapping = embedding.as_dict()
    if set(mapping) != set(pattern.vertices) or len(mapping) != len(embedding.vertex_map):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images) or not all(host.has_vertex(y) for y in images):
        return False
    previous = 0
    for e in pattern.edges:
        r = host.rank(mapping[e.u], mapping[e.v])
        if r is None or r <= previous:
            return False
        previous = r
    if sided:
        if not (
            isinstance(host, EdgeOrderedBigraph)
            and isinstance(pattern, EdgeOrderedBigraph)
        ):
            return False
        return all(host.side(mapping[x]) is pattern.side(x) for x in pattern.vertices)
    return True


def contains_through_last_edge(
    host_pairs: IndexPairs,
    host_order: int,
    pattern_pairs: IndexPairs,
    pattern_order: int,
) -> bool:
    """Whether the host has a copy of the pattern that uses the host's largest
    edge as the image of the pattern's largest edge.

    Both graphs are in index form (edges in rank order). This is the check
    run when a new largest edge is added to a host that avoided the pattern:
    any new copy must use the new edge, and it must be the copy's top edge.
    """
    if not host_pairs:
        return False
    matcher = _Matcher(
        list(reversed(host_pairs)),
        host_order,
        list(reversed(pattern_pairs)),
        pattern_order,
    )
    return next(matcher.search(pin_first=True), None) is not None
