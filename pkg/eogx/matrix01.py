#!/usr/bin/env python3
"""
Extremal theory of 0-1 matrices under the edge order

A 0-1 matrix is read as an edge-ordered bigraph: rows are left vertices,
columns right vertices and the 1 entries edges, ordered row by row
(row-major). Pattern containment keeps the row order and the column order.
"""

import enum
import itertools
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from eogx.classify import Growth
from eogx.oracle import Budget, SearchStatus

logger = logging.getLogger(__name__)


class Matrix01:
    """Immutable 0-1 matrix with at least one row and one column."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Any):
        array = np.array(entries, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] == 0 or array.shape[1] == 0:
            raise ValueError(f"A 0-1 matrix needs a non-empty 2D shape, got {array.shape}")
        if not np.isin(array, (0, 1)).all():
            raise ValueError("A 0-1 matrix may only contain 0 and 1 entries")
        array = array.astype(np.uint8)
        array.setflags(write=False)
        self._entries = array

    @classmethod
    def parse(cls, text: str) -> "Matrix01":
        """Rows of 0/1 characters, one per line or separated by ';'."""
        rows = [
            row.strip()
            for line in text.splitlines()
            for row in line.split("#", 1)[0].split(";")
            if row.strip()
        ]
        if not rows:
            raise ValueError("Empty matrix")
        if len({len(row) for row in rows}) != 1:
            raise ValueError("Matrix rows have different lengths")
        bad = {ch for row in rows for ch in row} - {"0", "1"}
        if bad:
            raise ValueError(f"Unexpected matrix characters {sorted(bad)}")
        return cls([[int(ch) for ch in row] for row in rows])

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def shape(self) -> Tuple[int, int]:
        rows, cols = self._entries.shape
        return int(rows), int(cols)

    @property
    def n_rows(self) -> int:
        return self.shape[0]

    @property
    def n_cols(self) -> int:
        return self.shape[1]

    def count_ones(self) -> int:
        return int(self._entries.sum())

    @property
    def is_zero(self) -> bool:
        return not self._entries.any()

    def ones(self) -> List[Tuple[int, int]]:
        """Positions of the 1 entries in row-major order (0-based)."""
        return [(int(i), int(j)) for i, j in np.argwhere(self._entries)]

    def transpose(self) -> "Matrix01":
        return Matrix01(self._entries.T)

    def rotate90(self, times: int = 1) -> "Matrix01":
        return Matrix01(np.rot90(self._entries, times))

    def reverse_columns(self) -> "Matrix01":
        return Matrix01(self._entries[:, ::-1])

    def reverse_rows(self) -> "Matrix01":
        return Matrix01(self._entries[::-1, :])

    def to_text(self) -> str:
        return "\n".join("".join(str(int(v)) for v in row) for row in self._entries) + "\n"

    def compact(self) -> str:
        return ";".join("".join(str(int(v)) for v in row) for row in self._entries)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix01)
            and self.shape == other.shape
            and bool((self._entries == other._entries).all())
        )

    def __hash__(self) -> int:
        return hash((self.shape, self._entries.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix01({self.compact()!r})"


def load_matrix(source: str) -> Matrix01:
    """Read a matrix from an inline ``M:11;01`` spec or from a file."""
    if source.startswith("M:"):
        return Matrix01.parse(source[2:])
    try:
        text = Path(source).read_text()
    except OSError as e:
        raise ValueError(f"Cannot read matrix file '{source}': {e}") from e
    return Matrix01.parse(text)


def _require_pattern(pattern: Matrix01) -> None:
    if pattern.is_zero:
        raise ValueError("The forbidden pattern must contain at least one 1 entry")


def find_pattern(
    matrix: Matrix01, pattern: Matrix01
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Rows and columns of a submatrix dominating ``pattern`` entrywise."""
    _require_pattern(pattern)
    p, q = pattern.shape
    n, m = matrix.shape
    if p > n or q > m:
        return None
    host = matrix.entries.astype(bool)
    want = pattern.entries.astype(bool)
    for rows in itertools.combinations(range(n), p):
        sub = host[list(rows), :]
        # fits[j, c]: host column c covers pattern column j on these rows
        fits = ~(want[:, :, None] & ~sub[:, None, :]).any(axis=0)
        columns = []
        start = 0
        for j in range(q):
            hits = np.flatnonzero(fits[j, start:])
            if hits.size == 0:
                break
            start += int(hits[0])
            columns.append(start)
            start += 1
        else:
            return tuple(rows), tuple(columns)
    return None


def contains_pattern(matrix: Matrix01, pattern: Matrix01) -> bool:
    return find_pattern(matrix, pattern) is not None


def is_connected_matrix(matrix: Matrix01) -> bool:
    """Connectivity of the bigraph with a vertex for every row and column."""
    graph = nx.Graph()
    graph.add_nodes_from(("r", i) for i in range(matrix.n_rows))
    graph.add_nodes_from(("c", j) for j in range(matrix.n_cols))
    graph.add_edges_from((("r", i), ("c", j)) for i, j in matrix.ones())
    return nx.is_connected(graph)


def is_tree_matrix(matrix: Matrix01) -> bool:
    return is_connected_matrix(matrix) and matrix.count_ones() == matrix.n_rows + matrix.n_cols - 1


def is_light(matrix: Matrix01) -> bool:
    """Exactly one 1 entry in every column."""
    return bool((matrix.entries.sum(axis=0) == 1).all())


# -- staircases ----------------------------------------------------------------


@dataclass(frozen=True)
class Staircase:
    """Positions (1-based) of a walk of 1 entries moving right or down."""

    positions: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.positions:
            raise ValueError("A staircase needs at least one position")
        for (i, j), (k, l) in zip(self.positions, self.positions[1:]):
            if (k - i, l - j) not in ((1, 0), (0, 1)):
                raise ValueError(f"Staircase step from {(i, j)} to {(k, l)} is not right or down")

    def described(self, n_rows: int, n_cols: int) -> Matrix01:
        """The matrix with ones on the staircase and on its four arms."""
        entries = np.zeros((n_rows, n_cols), dtype=np.uint8)
        for i, j in self.positions:
            entries[i - 1, j - 1] = 1
        (i1, j1), (it, jt) = self.positions[0], self.positions[-1]
        entries[i1 - 1, : j1 - 1] = 1
        entries[: i1 - 1, j1 - 1] = 1
        entries[it - 1, jt:] = 1
        entries[it:, jt - 1] = 1
        return Matrix01(entries)


@dataclass(frozen=True)
class StaircaseCertificate:
    staircase: Staircase
    columns_reversed: bool

    def to_json(self) -> Dict[str, Any]:
        return {
            "positions": [list(p) for p in self.staircase.positions],
            "columns_reversed": self.columns_reversed,
        }


def _walks(entries: np.ndarray, start: Tuple[int, int], length: int) -> Iterator[List[Tuple[int, int]]]:
    n, m = entries.shape
    walk = [start]

    def extend() -> Iterator[List[Tuple[int, int]]]:
        if len(walk) == length:
            yield list(walk)
            return
        i, j = walk[-1]
        for k, l in ((i, j + 1), (i + 1, j)):
            if k < n and l < m and entries[k, l]:
                walk.append((k, l))
                yield from extend()
                walk.pop()

    yield from extend()


def staircase_certificate(matrix: Matrix01) -> Optional[StaircaseCertificate]:
    """Find a staircase describing the matrix, or its column mirror image.

    Lengths are tried from 1 upward, then the plain orientation before the
    mirrored one, then start positions in row-major order.
    """
    if matrix.is_zero:
        raise ValueError("staircase_certificate needs a matrix with a 1 entry")
    if not is_tree_matrix(matrix):
        return None
    n, m = matrix.shape
    total = matrix.count_ones()
    oriented = ((False, matrix), (True, matrix.reverse_columns()))
    for length in range(1, n + m):
        for reversed_, candidate in oriented:
            entries = candidate.entries
            for start in candidate.ones():
                for walk in _walks(entries, start, length):
                    (i1, j1), (it, jt) = walk[0], walk[-1]
                    if length + j1 + i1 + (m - 1 - jt) + (n - 1 - it) != total:
                        continue
                    staircase = Staircase(tuple((i + 1, j + 1) for i, j in walk))
                    if staircase.described(n, m) == candidate:
                        return StaircaseCertificate(staircase, reversed_)
    return None


# -- building staircases by elementary operations ------------------------------------


class Boundary(enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class ElementaryOp:
    """Add a boundary line with a single 1 next to a 1 of the current
    boundary line; ``position`` is its 0-based index along the line."""

    boundary: Boundary
    position: int

    def describe(self) -> str:
        return f"{self.boundary.value}@{self.position}"


def elementary_op(matrix: Matrix01, op: ElementaryOp) -> Matrix01:
    entries = matrix.entries
    n, m = matrix.shape
    vertical = op.boundary in (Boundary.TOP, Boundary.BOTTOM)
    limit = m if vertical else n
    if not 0 <= op.position < limit:
        raise ValueError(f"Position {op.position} is outside the {op.boundary.value} line")
    neighbor = {
        Boundary.TOP: entries[0, :],
        Boundary.BOTTOM: entries[-1, :],
        Boundary.LEFT: entries[:, 0],
        Boundary.RIGHT: entries[:, -1],
    }[op.boundary]
    if not neighbor[op.position]:
        raise ValueError(f"The new 1 at {op.describe()} is not next to a 1 entry")
    line = np.zeros(limit, dtype=np.uint8)
    line[op.position] = 1
    if op.boundary is Boundary.TOP:
        return Matrix01(np.vstack([line, entries]))
    if op.boundary is Boundary.BOTTOM:
        return Matrix01(np.vstack([entries, line]))
    if op.boundary is Boundary.LEFT:
        return Matrix01(np.hstack([line[:, None], entries]))
    return Matrix01(np.hstack([entries, line[:, None]]))


def _peelable(matrix: Matrix01) -> Iterator[Tuple[ElementaryOp, Matrix01]]:
    """Boundary lines that the last elementary operation could have added."""
    entries = matrix.entries
    n, m = matrix.shape
    if n >= 2:
        for boundary, line, inner, rest in (
            (Boundary.TOP, entries[0, :], entries[1, :], entries[1:, :]),
            (Boundary.BOTTOM, entries[-1, :], entries[-2, :], entries[:-1, :]),
        ):
            ones = np.flatnonzero(line)
            if ones.size == 1 and inner[ones[0]]:
                yield ElementaryOp(boundary, int(ones[0])), Matrix01(rest)
    if m >= 2:
        for boundary, line, inner, rest in (
            (Boundary.LEFT, entries[:, 0], entries[:, 1], entries[:, 1:]),
            (Boundary.RIGHT, entries[:, -1], entries[:, -2], entries[:, :-1]),
        ):
            ones = np.flatnonzero(line)
            if ones.size == 1 and inner[ones[0]]:
                yield ElementaryOp(boundary, int(ones[0])), Matrix01(rest)


def reach_from_unit(matrix: Matrix01) -> Optional[List[ElementaryOp]]:
    """Elementary operations turning (1) into the matrix, if there are any."""
    if matrix.count_ones() != matrix.n_rows + matrix.n_cols - 1:
        return None
    unit = Matrix01([[1]])
    failed: Set[Matrix01] = set()

    def backward(current: Matrix01) -> Optional[List[ElementaryOp]]:
        if current == unit:
            return []
        if current in failed:
            return None
        for op, smaller in _peelable(current):
            found = backward(smaller)
            if found is not None:
                return found + [op]
        failed.add(current)
        return None

    return backward(matrix)


# -- classification --------------------------------------------------------------


SQUARE = Matrix01([[1, 1], [1, 1]])
ZIGZAG = Matrix01([[1, 1, 0], [1, 0, 1]])
# tree matrix whose extremal function is n 2^Theta(sqrt(log n))
SUPERPOLYLOG_PATTERN = Matrix01([[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 0, 1]])


def forbidden_family() -> Tuple[Matrix01, ...]:
    """(11;11), and the rotations of (110;101) and of its transpose."""
    family: List[Matrix01] = [SQUARE]
    for base in (ZIGZAG, ZIGZAG.transpose()):
        for times in range(4):
            rotated = base.rotate90(times)
            if rotated not in family:
                family.append(rotated)
    return tuple(family)


@dataclass(frozen=True)
class MatrixVerdict:
    growth: Growth
    certificate: Optional[StaircaseCertificate] = None
    member: Optional[Matrix01] = None
    rows: Tuple[int, ...] = ()
    columns: Tuple[int, ...] = ()

    def describe(self) -> str:
        if self.certificate is not None:
            steps = " ".join(f"({i},{j})" for i, j in self.certificate.staircase.positions)
            mirror = ", columns reversed" if self.certificate.columns_reversed else ""
            return f"{self.growth.value} (staircase {steps}{mirror})"
        assert self.member is not None
        return f"{self.growth.value} (contains {self.member.compact()} at rows {list(self.rows)} columns {list(self.columns)})"

    def to_json(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"growth": self.growth.value}
        if self.certificate is not None:
            result["staircase"] = self.certificate.to_json()
        if self.member is not None:
            result["contains"] = self.member.compact()
            result["rows"] = list(self.rows)
            result["columns"] = list(self.columns)
        return result


def classify_matrix(matrix: Matrix01) -> MatrixVerdict:
    """Connected matrices: Linear iff a staircase or its mirror image,
    otherwise n log n with a member of the forbidden family as evidence."""
    if matrix.is_zero or not is_connected_matrix(matrix):
        raise ValueError("classify_matrix only covers connected matrices")
    certificate = staircase_certificate(matrix)
    if certificate is not None:
        return MatrixVerdict(Growth.LINEAR, certificate=certificate)
    for member in forbidden_family():
        found = find_pattern(matrix, member)
        if found is not None:
            return MatrixVerdict(Growth.OMEGA_N_LOG_N, member=member, rows=found[0], columns=found[1])
    raise RuntimeError(f"{matrix!r} is neither a staircase nor contains a forbidden matrix")


# -- extremal numbers ------------------------------------------------------------


@dataclass(frozen=True)
class MatrixTuranResult:
    n: int
    value: int
    witness: Matrix01
    status: SearchStatus
    nodes_explored: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "value": self.value,
            "status": self.status.value,
            "nodes_explored": self.nodes_explored,
            "witness": self.witness.compact(),
        }


def _column_needs(pattern: Matrix01) -> Tuple[Tuple[int, ...], ...]:
    """Pattern rows holding a 1, per pattern column."""
    entries = pattern.entries
    return tuple(
        tuple(int(i) for i in np.flatnonzero(entries[:, j])) for j in range(pattern.n_cols)
    )


def _rows_fit(rows: Sequence[int], needs: Sequence[Tuple[int, ...]], full: int) -> bool:
    """Whether host rows, given as column bitmasks, carry the pattern with rows matched in order.

    Columns are matched greedily left to right, as in find_pattern.
    """
    start = 0
    for need in needs:
        mask = full
        for i in need:
            mask &= rows[i]
        mask >>= start
        if not mask:
            return False
        start += (mask & -mask).bit_length()
    return True


def _free_axes(pattern: Matrix01) -> Tuple[bool, bool]:
    """(rows all equal, columns all equal). Host rows (columns) may then be permuted freely."""
    entries = pattern.entries
    return bool((entries == entries[0]).all()), bool((entries == entries[:, :1]).all())


@dataclass
class _RowSearch:
    needs: Tuple[Tuple[int, ...], ...]
    n_pattern_rows: int
    n: int
    budget: Budget
    deadline: float
    rows_free: bool
    cols_free: bool
    nodes: int = 0
    complete: bool = True

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget.nodes or (self.nodes % 512 == 0 and time.time() > self.deadline):
            self.complete = False
        return self.complete

    def compatible(self, prefix: Sequence[int], row: int) -> bool:
        """Whether ``prefix + [row]`` avoids the pattern.

        Both ``prefix`` and ``prefix[:-1] + [row]`` must already avoid it, so
        only copies through the last two rows are looked for.
        """
        p = self.n_pattern_rows
        if p == 1 or len(prefix) + 1 < p:
            return True
        newest = prefix[-1]
        for older in itertools.combinations(prefix[:-1], p - 2):
            if _rows_fit(older + (newest, row), self.needs, self.full):
                return False
        return True


def _greedy_block(search: _RowSearch, k: int, pool: List[Tuple[int, int]]) -> Optional[List[int]]:
    rows: List[int] = []
    for _ in range(k):
        if not pool:
            return None
        rows.append(pool[0][0])
        pool = [(mask, weight) for mask, weight in pool if search.compatible(rows, mask)]
    return rows


def _best_block(
    search: _RowSearch, k: int, upper: List[int], pool: List[Tuple[int, int]]
) -> Tuple[int, Optional[List[int]]]:
    """Heaviest k-row block avoiding the pattern; ``upper[r]`` bounds any r-row block."""
    n = search.n
    best_rows = _greedy_block(search, k, pool)
    best = sum(bin(mask).count("1") for mask in best_rows) if best_rows is not None else -1

    def cap(remaining: int, weight: int) -> int:
        block = upper[remaining] if remaining < len(upper) else remaining * n
        # later rows are no heavier only when they follow candidate order
        return min(block, remaining * weight) if search.rows_free else block

    def visit(prefix: List[int], ones: int, candidates: List[Tuple[int, int]]) -> None:
        nonlocal best, best_rows
        if not search.tick():
            return
        remaining = k - len(prefix)
        if remaining == 0:
            if ones > best:
                best, best_rows = ones, list(prefix)
            return
        for position, (mask, weight) in enumerate(candidates):
            if search.cols_free and not prefix and mask & (mask + 1):
                continue
            # candidates are sorted heaviest first
            if ones + weight + cap(remaining - 1, weight) <= best:
                break
            child = prefix + [mask]
            rest = candidates[position:] if search.rows_free else candidates
            visit(child, ones + weight, [(m, w) for m, w in rest if search.compatible(child, m)])
            if not search.complete:
                return

    visit([], 0, pool)
    return best, best_rows


def eex_exact(n: int, pattern: Matrix01, budget: Optional[Budget] = None) -> MatrixTuranResult:
    """Largest number of 1 entries in an n x n matrix avoiding ``pattern``.

    Rows are column bitmasks placed top to bottom, heaviest first, and a row
    is kept only while no copy of the pattern ends in it. Blocks of k rows
    are solved for k = 1, 2, ... and each exact block value bounds the rows
    still missing in the larger searches.

    When all pattern rows are equal the host rows are kept in candidate
    order, and when all pattern columns are equal the first row is packed to
    the left.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    _require_pattern(pattern)
    budget = budget or Budget()
    if pattern.shape[0] > n or pattern.shape[1] > n:
        return MatrixTuranResult(n, n * n, Matrix01(np.ones((n, n))), SearchStatus.EXACT, 0)

    rows_free, cols_free = _free_axes(pattern)
    search = _RowSearch(
        needs=_column_needs(pattern),
        n_pattern_rows=pattern.n_rows,
        n=n,
        budget=budget,
        deadline=time.time() + budget.seconds,
        rows_free=rows_free,
        cols_free=cols_free,
    )
    pool = sorted(
        (
            (mask, bin(mask).count("1"))
            for mask in range(1 << n)
            if pattern.n_rows > 1 or not _rows_fit((mask,), search.needs, search.full)
        ),
        key=lambda entry: (-entry[1], entry[0]),
    )

    upper = [0]
    best, best_rows = -1, None
    for k in range(1, n + 1):
        if k < pattern.n_rows:
            upper.append(k * n)
            continue
        best, best_rows = _best_block(search, k, upper, pool)
        if not search.complete:
            if k < n:
                best_rows = _greedy_block(search, n, pool)
                best = sum(bin(mask).count("1") for mask in best_rows) if best_rows else -1
            break
        upper.append(best)
    logger.debug("eex(%d) block values %s after %d nodes", n, upper, search.nodes)

    if best_rows is None:
        best, witness = 0, Matrix01(np.zeros((n, n)))
    else:
        witness = Matrix01([[(mask >> c) & 1 for c in range(n)] for mask in best_rows])
    status = SearchStatus.EXACT if search.complete else SearchStatus.LOWER_BOUND_ONLY
    return MatrixTuranResult(n, best, witness, status, search.nodes)


def eex_bruteforce(n: int, pattern: Matrix01) -> int:
    """Same value as eex_exact by trying every n x n matrix (tiny n only)."""
    _require_pattern(pattern)
    best = 0
    for bits in itertools.product((0, 1), repeat=n * n):
        ones = sum(bits)
        if ones <= best:
            continue
        if not contains_pattern(Matrix01(np.array(bits).reshape(n, n)), pattern):
            best = ones
    return best


def all_matrices(max_rows: int, max_cols: int) -> Iterator[Matrix01]:
    for rows in range(1, max_rows + 1):
        for cols in range(1, max_cols + 1):
            for bits in itertools.product((0, 1), repeat=rows * cols):
                yield Matrix01(np.array(bits).reshape(rows, cols))
