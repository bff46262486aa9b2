"""Undirected social network: edge-list ingestion, adjacency and degree queries."""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, TextIO

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph


class EdgeListError(ValueError):
    """Raised for malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"{message} at line {line}")
        self.line = line


def floor_share(n: int, fraction: float) -> int:
    """``floor(n * fraction)`` with the fraction read as the decimal it prints as.

    Guards against binary round-off, e.g. ``100 * 0.29 == 28.999999999999996``.
    """
    return int(n * Fraction(str(fraction)))


def floor_percent(n: int, pct: float) -> int:
    """``floor(n * pct / 100)`` with the same decimal reading as :func:`floor_share`."""
    return int(n * Fraction(str(pct)) / 100)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Network:
    """Immutable simple undirected graph over dense node ids ``0..N-1``.

    ``edge_array`` keeps edges in order of first appearance with their input
    orientation, which is what makes serialisation round-trip exactly.
    Neighbour lists are stored CSR-style and sorted ascending.
    """

    edge_array: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    original_ids: np.ndarray
    _degree_order: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[int, int]], node_count: int | None = None,
        original_ids: Iterable[int] | None = None,
    ) -> "Network":
        """Build from dense-id pairs. Duplicates (either orientation) collapse."""
        seen: set[tuple[int, int]] = set()
        kept: list[tuple[int, int]] = []
        top = -1
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop on node {a}")
            if a < 0 or b < 0:
                raise ValueError(f"negative node id in edge ({a}, {b})")
            key = (a, b) if a < b else (b, a)
            if key in seen:
                continue
            seen.add(key)
            kept.append((a, b))
            top = max(top, a, b)
        n = top + 1 if node_count is None else int(node_count)
        if n <= top:
            raise ValueError(f"node_count={n} but edges reference node {top}")
        edge_array = np.array(kept, dtype=np.int64).reshape(-1, 2)

        both = np.concatenate([edge_array, edge_array[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        degree = np.bincount(both[:, 0], minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degree, out=indptr[1:])
        indices = both[:, 1].copy()

        ids = np.arange(n, dtype=np.int64) if original_ids is None else np.asarray(list(original_ids), dtype=np.int64)
        if len(ids) != n:
            raise ValueError(f"original_ids has {len(ids)} entries for {n} nodes")
        # highest degree first, ties by ascending id
        degree_order = np.lexsort((np.arange(n), -degree))
        return cls(
            _frozen(edge_array), _frozen(indptr), _frozen(indices),
            _frozen(ids), _frozen(degree_order),
        )

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.edge_array)

    @property
    def degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def mean_degree(self) -> float:
        return 2.0 * self.edge_count / self.node_count if self.node_count else 0.0

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        """Unordered edges as ``(min, max)`` pairs."""
        lo = np.minimum(self.edge_array[:, 0], self.edge_array[:, 1])
        hi = np.maximum(self.edge_array[:, 0], self.edge_array[:, 1])
        return frozenset(zip(lo.tolist(), hi.tolist()))

    def neighbors(self, node: int) -> np.ndarray:
        return self.indices[self.indptr[node]:self.indptr[node + 1]]

    @property
    def adjacency(self) -> list[list[int]]:
        return [self.neighbors(i).tolist() for i in range(self.node_count)]

    def to_sparse(self) -> sparse.csr_matrix:
        n = self.node_count
        data = np.ones(len(self.indices), dtype=np.int32)
        return sparse.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def components(self) -> tuple[int, np.ndarray]:
        """Number of connected components and the per-node component label."""
        return csgraph.connected_components(self.to_sparse(), directed=False)

    def is_connected(self) -> bool:
        return self.node_count > 0 and self.components()[0] == 1

    def same_as(self, other: "Network") -> bool:
        """Structural identity including edge order and the original-id map."""
        return (
            np.array_equal(self.edge_array, other.edge_array)
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.original_ids, other.original_ids)
        )


def load_edge_list(source: TextIO | str | os.PathLike) -> Network:
    """Parse a SNAP-style edge list (two integers per line, ``#`` comments).

    Node ids are remapped to ``0..N-1`` in order of first appearance and the
    original ids are kept on ``Network.original_ids``.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return load_edge_list(fh)

    dense: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected two node ids, got {len(parts)} fields", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer node id in {line!r}", lineno) from None
        if a < 0 or b < 0:
            raise EdgeListError(f"negative node id in {line!r}", lineno)
        if a == b:
            raise EdgeListError("self-loop", lineno)
        da = dense.setdefault(a, len(dense))
        db = dense.setdefault(b, len(dense))
        pairs.append((da, db))
    return Network.from_edges(pairs, node_count=len(dense), original_ids=dense.keys())


def save_edge_list(net: Network, sink: TextIO | str | os.PathLike) -> None:
    """Write edges with original ids in stored order; inverse of :func:`load_edge_list`."""
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            return save_edge_list(net, fh)
    ids = net.original_ids
    for a, b in net.edge_array.tolist():
        sink.write(f"{ids[a]} {ids[b]}\n")


def dumps_edge_list(net: Network) -> str:
    buf = io.StringIO()
    save_edge_list(net, buf)
    return buf.getvalue()


def top_fraction_by_degree(net: Network, fraction: float, excluded: Iterable[int] = ()) -> np.ndarray:
    """The ``floor(N * fraction)`` highest-degree nodes outside ``excluded``.

    Ties at the cutoff go to the smaller node id. Returned sorted ascending.
    Fewer nodes come back only when the exclusions leave too few candidates.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {fraction}")
    want = floor_share(net.node_count, fraction)
    if want == 0:
        return np.empty(0, dtype=np.int64)
    order = net._degree_order
    excluded = np.fromiter(excluded, dtype=np.int64)
    if len(excluded):
        order = order[~np.isin(order, excluded)]
    return np.sort(order[:want])
