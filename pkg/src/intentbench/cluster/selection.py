"""Silhouette scoring and silhouette-based selection of the cluster count.

The tables this toolkit reproduces never state how their cluster counts were
chosen, so automatic selection is a declared substitute: reports label any
auto-selected k as silhouette-chosen.
"""

from __future__ import annotations

import numpy as np

from .common import ClusterResult, as_matrix, pairwise_dists
from .dispatch import K_PARAMETERIZED, cluster_with


def silhouette(X, result: ClusterResult) -> float:
    """Mean per-point (b - a) / max(a, b) over non-noise points.

    ``a`` is the mean distance to the point's own cluster, ``b`` the smallest
    mean distance to another cluster.  Singleton-cluster points contribute 0.
    """
    data = as_matrix(X)
    labels = np.asarray(result.assignments)
    mask = labels >= 0
    labels = labels[mask]
    data = data[mask]
    clusters = np.unique(labels)
    if clusters.size < 2:
        raise ValueError("silhouette requires at least 2 non-noise clusters")
    dists = pairwise_dists(data)
    cluster_masks = [labels == c for c in clusters]
    sizes = np.array([m.sum() for m in cluster_masks])
    # mean distance from every point to every cluster, own cluster excluding self
    sums = np.stack([dists[:, m].sum(axis=1) for m in cluster_masks], axis=1)
    scores = np.zeros(len(labels))
    for ci, m in enumerate(cluster_masks):
        if sizes[ci] == 1:
            continue  # singleton members score 0
        a = sums[m, ci] / (sizes[ci] - 1)
        other = np.ones(len(clusters), dtype=bool)
        other[ci] = False
        b = (sums[m][:, other] / sizes[other]).min(axis=1)
        denom = np.maximum(a, b)
        with np.errstate(invalid="ignore"):
            s = np.where(denom > 0, (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
        scores[m] = s
    return float(scores.mean())


def select_k(X, algorithm: str, k_range: tuple[int, int], seed: int = 0, params: dict | None = None) -> int:
    """Return the k in the inclusive range that maximizes the silhouette score.

    Ties break toward the smaller k.  A single-value range short-circuits to
    that value without touching the data.
    """
    if algorithm not in K_PARAMETERIZED:
        raise ValueError(f"automatic k selection requires a k-parameterized algorithm, got {algorithm!r}")
    lo, hi = int(k_range[0]), int(k_range[1])
    if lo > hi:
        raise ValueError(f"empty k range [{lo}, {hi}]")
    if lo == hi:
        return lo
    data = as_matrix(X)
    if not 2 <= lo <= hi <= data.shape[0]:
        raise ValueError(f"k range [{lo}, {hi}] must lie within [2, {data.shape[0]}]")
    best_k, best_score = lo, -np.inf
    for k in range(lo, hi + 1):
        result = cluster_with(algorithm, data, k=k, seed=seed, params=params)
        score = silhouette(data, result)
        if score > best_score:
            best_k, best_score = k, score
    return best_k
