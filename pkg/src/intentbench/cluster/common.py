"""Shared clustering plumbing: distance kernels, result container, config."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..embedstore import EmbeddingMatrix


def as_matrix(X) -> np.ndarray:
    """Accept an EmbeddingMatrix or any array-like; return a float64 (n, d) array."""
    if isinstance(X, EmbeddingMatrix):
        return X.data
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D point matrix, got ndim={arr.ndim}")
    return arr


def sq_dists(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances between rows of A (n) and rows of B (m), shape (n, m)."""
    d2 = (
        np.sum(A * A, axis=1)[:, None]
        + np.sum(B * B, axis=1)[None, :]
        - 2.0 * (A @ B.T)
    )
    return np.maximum(d2, 0.0)


def pairwise_sq_dists(X: np.ndarray) -> np.ndarray:
    d2 = sq_dists(X, X)
    np.fill_diagonal(d2, 0.0)
    return d2


def pairwise_dists(X: np.ndarray) -> np.ndarray:
    return np.sqrt(pairwise_sq_dists(X))


@dataclass(frozen=True)
class KMeansConfig:
    """Lloyd-iteration settings; the defaults are the toolkit's declared ones."""

    max_iter: int = 300
    tol: float = 1e-6
    restarts: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class CentroidSet:
    """A k-by-d matrix of cluster centers."""

    points: np.ndarray

    def __post_init__(self):
        if self.points.ndim != 2 or self.points.shape[0] < 1:
            raise ValueError("centroid set must be a non-empty 2-D matrix")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("centroid set contains non-finite values")

    @property
    def k(self) -> int:
        return self.points.shape[0]


@dataclass
class ClusterResult:
    """Hard assignment of each row to a cluster; -1 marks density-algorithm noise."""

    assignments: np.ndarray
    k: int
    algorithm: str
    barycenters: np.ndarray | None = None
    seed: int | None = None
    meta: dict = field(default_factory=dict)

    def sizes(self) -> dict[int, int]:
        """Cluster-size histogram, including a -1 entry when noise is present."""
        values, counts = np.unique(self.assignments, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}


def finalize_result(
    labels,
    algorithm: str,
    X=None,
    seed: int | None = None,
    meta: dict | None = None,
) -> ClusterResult:
    """Canonicalize labels by first appearance and attach per-cluster means.

    Noise labels (-1) are preserved; all other clusters are renumbered 0..k-1
    in order of first appearance so identical partitions always serialize
    identically.
    """
    labels = np.asarray(labels, dtype=np.int64)
    remap: dict[int, int] = {}
    canonical = np.empty_like(labels)
    for i, label in enumerate(labels):
        label = int(label)
        if label == -1:
            canonical[i] = -1
            continue
        if label not in remap:
            remap[label] = len(remap)
        canonical[i] = remap[label]
    k = len(remap)
    barycenters = None
    if X is not None and k > 0:
        data = as_matrix(X)
        barycenters = np.stack([data[canonical == c].mean(axis=0) for c in range(k)])
    return ClusterResult(
        assignments=canonical,
        k=k,
        algorithm=algorithm,
        barycenters=barycenters,
        seed=seed,
        meta=dict(meta or {}),
    )
