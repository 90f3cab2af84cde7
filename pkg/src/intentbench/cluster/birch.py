"""BIRCH: one-pass CF-tree summarization plus a global Ward phase.

Each clustering feature (CF) is the additive triple (count, linear sum,
squared-norm sum), enough to compute centroids and radii of merged entries
without revisiting points.  Rows are absorbed into the nearest leaf entry
whose post-merge radius stays within the threshold; overfull nodes split by
farthest-pair seeding.  Leaf-entry centroids are then grouped with Ward
agglomerative clustering and every row inherits its entry's group.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateDataError
from .common import ClusterResult, as_matrix, finalize_result, sq_dists
from .hierarchy import agglomerative


class CFEntry:
    """Additive clustering feature: point count, linear sum, squared-norm sum."""

    __slots__ = ("n", "ls", "ss", "child", "rows")

    def __init__(self, n: int, ls: np.ndarray, ss: float, child=None, rows=None):
        self.n = n
        self.ls = ls
        self.ss = ss
        self.child = child
        self.rows = rows if rows is not None else []

    @classmethod
    def from_point(cls, x: np.ndarray, row: int | None = None) -> "CFEntry":
        return cls(1, x.copy(), float(x @ x), rows=[] if row is None else [row])

    @property
    def centroid(self) -> np.ndarray:
        return self.ls / self.n

    def radius(self) -> float:
        """Root-mean-square distance of member points from the centroid."""
        r2 = self.ss / self.n - float(self.centroid @ self.centroid)
        return float(np.sqrt(max(r2, 0.0)))

    def merged_radius(self, other: "CFEntry") -> float:
        n = self.n + other.n
        ls = self.ls + other.ls
        r2 = (self.ss + other.ss) / n - float(ls @ ls) / (n * n)
        return float(np.sqrt(max(r2, 0.0)))

    def absorb(self, other: "CFEntry") -> None:
        self.n += other.n
        self.ls = self.ls + other.ls
        self.ss += other.ss
        self.rows.extend(other.rows)


class _CFNode:
    __slots__ = ("leaf", "entries")

    def __init__(self, leaf: bool):
        self.leaf = leaf
        self.entries: list[CFEntry] = []


def _nearest_entry(entries: list[CFEntry], x: np.ndarray) -> int:
    centroids = np.stack([e.centroid for e in entries])
    return int(np.argmin(sq_dists(x[None, :], centroids)[0]))


def _split(node: _CFNode) -> tuple[_CFNode, _CFNode]:
    """Split an overfull node around its farthest pair of entry centroids."""
    centroids = np.stack([e.centroid for e in node.entries])
    d2 = sq_dists(centroids, centroids)
    a, b = divmod(int(np.argmax(d2)), len(node.entries))
    left, right = _CFNode(node.leaf), _CFNode(node.leaf)
    for idx, entry in enumerate(node.entries):
        if d2[idx, a] <= d2[idx, b]:
            left.entries.append(entry)
        else:
            right.entries.append(entry)
    if not right.entries:  # all centroids identical: force a non-trivial split
        right.entries.append(left.entries.pop())
    return left, right


def _wrap(node: _CFNode) -> CFEntry:
    """Summarize a node as a CF entry pointing at it."""
    n = sum(e.n for e in node.entries)
    ls = np.sum([e.ls for e in node.entries], axis=0)
    ss = float(sum(e.ss for e in node.entries))
    return CFEntry(n, ls, ss, child=node)


def _insert(node: _CFNode, point: CFEntry, threshold: float, branching: int):
    """Insert a single-point CF; returns a (left, right) pair when the node splits."""
    if node.leaf:
        if node.entries:
            i = _nearest_entry(node.entries, point.centroid)
            if node.entries[i].merged_radius(point) <= threshold:
                node.entries[i].absorb(point)
                return None
        node.entries.append(point)
    else:
        i = _nearest_entry(node.entries, point.centroid)
        entry = node.entries[i]
        split = _insert(entry.child, point, threshold, branching)
        if split is None:
            entry.n += point.n
            entry.ls = entry.ls + point.ls
            entry.ss += point.ss
        else:
            node.entries[i : i + 1] = [_wrap(split[0]), _wrap(split[1])]
    if len(node.entries) > branching:
        return _split(node)
    return None


def _leaf_entries(node: _CFNode) -> list[CFEntry]:
    if node.leaf:
        return list(node.entries)
    out: list[CFEntry] = []
    for entry in node.entries:
        out.extend(_leaf_entries(entry.child))
    return out


def birch(X, k: int, threshold: float = 0.5, branching: int = 50) -> ClusterResult:
    """CF-tree summarization followed by Ward clustering of leaf-entry centroids.

    The default threshold assumes unit-normalized embeddings; raise it for
    unnormalized data.  Raises DegenerateDataError when the tree resolves to
    fewer entries than k (advising a smaller threshold).
    """
    if threshold <= 0:
        raise ValueError("threshold must be > 0")
    if branching < 2:
        raise ValueError("branching factor must be >= 2")
    data = as_matrix(X)
    n = data.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must be in [1, {n}]")

    root = _CFNode(leaf=True)
    for row in range(n):
        split = _insert(root, CFEntry.from_point(data[row], row), threshold, branching)
        if split is not None:
            root = _CFNode(leaf=False)
            root.entries = [_wrap(split[0]), _wrap(split[1])]

    entries = _leaf_entries(root)
    if k > len(entries):
        raise DegenerateDataError(
            f"CF tree has only {len(entries)} leaf entries for k={k}; use a smaller threshold"
        )
    centroids = np.stack([e.centroid for e in entries])
    grouping = agglomerative(centroids, k, linkage="ward")
    labels = np.empty(n, dtype=np.int64)
    for entry, group in zip(entries, grouping.assignments):
        labels[entry.rows] = group
    return finalize_result(
        labels, "birch", X=data, meta={"leaf_entries": len(entries), "threshold": threshold}
    )
