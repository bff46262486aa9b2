"""Asynchronous fluid-communities partitioning and partition file I/O.

Each of k fluids starts on one seed vertex with total density 1, spread evenly
over the vertices it holds (``1 / size`` each). Vertices are visited in a fresh
random order every sweep and join whichever community has the largest summed
density over the vertex and its neighbours. Scores are compared exactly as
rationals (``count / size``) so ties are real ties, not float accidents.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .graph import Network
from .rng import SplitMix64

PARTITION_HEADER = "node_id,community_id"


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Partition:
    community_of: np.ndarray
    k: int
    converged: bool = True
    sweeps: int = 0

    def __post_init__(self) -> None:
        c = np.asarray(self.community_of, dtype=np.int64)
        c.flags.writeable = False
        object.__setattr__(self, "community_of", c)
        _validate(c, self.k)

    @property
    def node_count(self) -> int:
        return len(self.community_of)

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.community_of, minlength=self.k)

    def members(self, community: int) -> np.ndarray:
        return np.flatnonzero(self.community_of == community)

    def share(self, community: int) -> float:
        return float(self.sizes[community]) / self.node_count

    def nearest_by_share(self, target: float) -> int:
        """Community whose size share of N is closest to ``target`` (a fraction)."""
        shares = self.sizes / self.node_count
        return int(np.argmin(np.abs(shares - target)))


def _validate(community_of: np.ndarray, k: int) -> None:
    if k < 1:
        raise PartitionError(f"k must be >= 1, got {k}")
    if len(community_of) and (community_of.min() < 0 or community_of.max() >= k):
        bad = int(np.flatnonzero((community_of < 0) | (community_of >= k))[0])
        raise PartitionError(f"node {bad} has community {community_of[bad]} outside 0..{k - 1}")
    sizes = np.bincount(community_of, minlength=k)
    if (sizes == 0).any():
        raise PartitionError(f"community {int(np.flatnonzero(sizes == 0)[0])} is empty")


def canonical_labels(community_of: np.ndarray) -> np.ndarray:
    """Relabel so communities are numbered by ascending smallest member id."""
    _, first = np.unique(community_of, return_index=True)
    order = np.argsort(first)
    remap = np.empty(community_of.max() + 1, dtype=np.int64)
    remap[np.unique(community_of)[order]] = np.arange(len(order))
    return remap[community_of]


def fluid_communities(net: Network, k: int, seed: int, max_sweeps: int = 100) -> Partition:
    """Partition a connected network into exactly ``k`` communities.

    Deterministic in ``(net, k, seed, max_sweeps)``. When ``max_sweeps`` runs
    out before a quiet sweep the current partition comes back with
    ``converged=False``; any vertex not yet reached by a fluid is then filled
    in by further assignment-only passes so the result is always complete.
    """
    n = net.node_count
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds node count {n}")
    if max_sweeps < 1:
        raise ValueError(f"max_sweeps must be >= 1, got {max_sweeps}")
    ncomp, labels = net.components()
    if ncomp > 1:
        a = 0
        b = int(np.flatnonzero(labels != labels[0])[0])
        raise ValueError(
            f"graph is disconnected ({ncomp} components): node {net.original_ids[a]} "
            f"and node {net.original_ids[b]} lie in different components"
        )
    if k == 1:
        return Partition(np.zeros(n, dtype=np.int64), 1, converged=True, sweeps=1)

    rng = SplitMix64(seed)
    adjacency = net.adjacency
    comm = [-1] * n
    size = [0] * k
    for c, v in enumerate(rng.sample(range(n), k)):
        comm[v] = c
        size[c] = 1

    def visit(v: int) -> bool:
        counts: dict[int, int] = {}
        own = comm[v]
        if own >= 0:
            counts[own] = 1
        for u in adjacency[v]:
            c = comm[u]
            if c >= 0:
                counts[c] = counts.get(c, 0) + 1
        if not counts:
            return False
        best: list[int] = []
        bn, bd = 0, 1  # best score as the fraction bn / bd
        for c in sorted(counts):
            cn, cd = counts[c], size[c]
            lhs, rhs = cn * bd, bn * cd
            if lhs > rhs:
                best, bn, bd = [c], cn, cd
            elif lhs == rhs:
                best.append(c)
        if own in best:
            return False
        if own >= 0 and size[own] == 1:
            return False
        new = best[0] if len(best) == 1 else best[rng.randbelow(len(best))]
        if own >= 0:
            size[own] -= 1
        size[new] += 1
        comm[v] = new
        return True

    order = list(range(n))
    converged = False
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        rng.shuffle(order)
        changed = False
        for v in order:
            changed |= visit(v)
        if not changed:
            converged = True
            break

    while -1 in comm:
        rng.shuffle(order)
        for v in order:
            if comm[v] < 0:
                visit(v)

    labels = canonical_labels(np.array(comm, dtype=np.int64))
    return Partition(labels, k, converged=converged, sweeps=sweeps)


def save_partition(p: Partition, sink: TextIO | str | os.PathLike) -> None:
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            return save_partition(p, fh)
    sink.write(PARTITION_HEADER + "\n")
    for node, c in enumerate(p.community_of.tolist()):
        sink.write(f"{node},{c}\n")


def load_partition(source: TextIO | str | os.PathLike, node_count: int | None = None) -> Partition:
    """Read and validate a partition file.

    ``node_count`` pins N (normally the network's size). Without it, N is
    taken as one past the largest node id in the file.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return load_partition(fh, node_count)

    header = source.readline()
    if header.strip() != PARTITION_HEADER:
        raise PartitionError(f"line 1: expected header {PARTITION_HEADER!r}, got {header.strip()!r}")
    assigned: dict[int, int] = {}
    for lineno, raw in enumerate(source, start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise PartitionError(f"line {lineno}: expected 'node_id,community_id', got {line!r}")
        try:
            node, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise PartitionError(f"line {lineno}: non-integer field in {line!r}") from None
        if node < 0 or c < 0:
            raise PartitionError(f"line {lineno}: negative id in {line!r}")
        if node_count is not None and node >= node_count:
            raise PartitionError(f"line {lineno}: unknown node id {node} (network has {node_count} nodes)")
        if node in assigned:
            raise PartitionError(f"line {lineno}: node {node} assigned twice")
        assigned[node] = c

    n = node_count if node_count is not None else (max(assigned) + 1 if assigned else 0)
    community_of = np.full(n, -1, dtype=np.int64)
    for node, c in assigned.items():
        community_of[node] = c
    missing = np.flatnonzero(community_of < 0)
    if len(missing):
        raise PartitionError(f"node {int(missing[0])} unassigned")
    k = int(community_of.max()) + 1 if n else 0
    sizes = np.bincount(community_of, minlength=k)
    if (sizes == 0).any():
        raise PartitionError(f"community {int(np.flatnonzero(sizes == 0)[0])} is empty")
    return Partition(community_of, k)
