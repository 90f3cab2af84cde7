"""K-means: Lloyd iterations with k-means++ seeding, restarts, and a bisecting variant.

The objective is the within-cluster sum of squared Euclidean distances.  It
is non-increasing across every assignment step and every centroid update;
``ClusterResult.meta["objective_history"]`` records the value after each
half-step of the winning restart so the property is checkable.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateDataError
from .common import CentroidSet, ClusterResult, KMeansConfig, as_matrix, finalize_result, sq_dists


def min_sq_dists(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Squared distance from each row of X to its nearest centroid."""
    return sq_dists(np.asarray(X, dtype=np.float64), np.asarray(centroids, dtype=np.float64)).min(axis=1)


def kmeans_pp_init(X, k: int, seed: int) -> CentroidSet:
    """Choose k distinct rows: the first uniformly, the rest D^2-weighted.

    Each subsequent centroid is drawn with probability proportional to the
    squared distance to the nearest centroid already chosen.  Deterministic
    for a given seed.
    """
    data = as_matrix(X)
    n = data.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must be in [1, {n}]")
    rng = np.random.default_rng(seed)
    chosen = [int(rng.integers(n))]
    d2 = None
    for _ in range(1, k):
        new = sq_dists(data, data[chosen[-1]][None, :])[:, 0]
        d2 = new if d2 is None else np.minimum(d2, new)
        total = float(d2.sum())
        if total <= 0.0:
            raise DegenerateDataError(
                f"cannot pick {k} distinct centroids: remaining points coincide with chosen ones"
            )
        chosen.append(int(rng.choice(n, p=d2 / total)))
    return CentroidSet(points=data[chosen].copy())


def _objective(data: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> float:
    diff = data - centroids[labels]
    return float(np.sum(diff * diff))


def _repair_empty(data, labels, centroids, counts):
    """Give every empty cluster the farthest point of some multi-member cluster.

    Donors always keep at least one member, so the repair terminates and the
    objective cannot increase (the moved point lands at distance zero).
    """
    k = centroids.shape[0]
    counts = counts.copy()
    for j in range(k):
        if counts[j] == 0:
            donors = counts[labels] > 1
            dist = sq_dists(data, centroids[j][None, :])[:, 0]
            dist[~donors] = -np.inf
            far = int(np.argmax(dist))
            counts[labels[far]] -= 1
            labels[far] = j
            counts[j] += 1
            centroids[j] = data[far]
    return labels, centroids, counts


def _lloyd(data: np.ndarray, centroids: np.ndarray, max_iter: int, tol: float):
    """Alternate assignment and update steps; returns labels, centroids, history."""
    k = centroids.shape[0]
    centroids = centroids.copy()
    history: list[float] = []
    labels = None
    for _ in range(max_iter):
        d2 = sq_dists(data, centroids)
        labels = np.argmin(d2, axis=1)  # ties resolve to the lowest index
        counts = np.bincount(labels, minlength=k)
        if np.any(counts == 0):
            labels, centroids, counts = _repair_empty(data, labels, centroids, counts)
        history.append(_objective(data, labels, centroids))
        new_centroids = np.empty_like(centroids)
        for c in range(k):
            new_centroids[c] = data[labels == c].mean(axis=0)
        history.append(_objective(data, labels, new_centroids))
        shift = float(np.max(np.linalg.norm(new_centroids - centroids, axis=1)))
        centroids = new_centroids
        if shift < tol:
            break
    return labels, centroids, history


def kmeans(X, k: int, config: KMeansConfig | None = None) -> ClusterResult:
    """Best-of-restarts Lloyd clustering with k-means++ initialization.

    Returns the restart with the lowest final objective; ``meta`` carries the
    winning objective, its per-half-step history, and the restart count.
    """
    cfg = config or KMeansConfig()
    data = as_matrix(X)
    n = data.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must be in [1, {n}]")
    child_seeds = np.random.SeedSequence(cfg.seed).generate_state(cfg.restarts)
    best = None
    for child in child_seeds:
        init = kmeans_pp_init(data, k, int(child))
        labels, centroids, history = _lloyd(data, init.points, cfg.max_iter, cfg.tol)
        if best is None or history[-1] < best[2][-1]:
            best = (labels, centroids, history)
    labels, _, history = best
    return finalize_result(
        labels,
        "kmeans",
        X=data,
        seed=cfg.seed,
        meta={
            "objective": history[-1],
            "objective_history": history,
            "restarts": cfg.restarts,
        },
    )


def _wcss(data: np.ndarray, idx: np.ndarray) -> float:
    sub = data[idx]
    diff = sub - sub.mean(axis=0)
    return float(np.sum(diff * diff))


def bisecting_kmeans(X, k: int, config: KMeansConfig | None = None) -> ClusterResult:
    """Repeatedly 2-means-split the cluster with the largest within-cluster scatter."""
    cfg = config or KMeansConfig()
    data = as_matrix(X)
    n = data.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must be in [1, {n}]")
    split_seeds = np.random.SeedSequence(cfg.seed).generate_state(max(k, 1))
    clusters: list[np.ndarray] = [np.arange(n)]
    for split_no in range(k - 1):
        candidates = [i for i, idx in enumerate(clusters) if len(idx) > 1]
        scores = [_wcss(data, clusters[i]) for i in candidates]
        target = candidates[int(np.argmax(scores))]
        idx = clusters.pop(target)
        sub_cfg = KMeansConfig(
            max_iter=cfg.max_iter,
            tol=cfg.tol,
            restarts=cfg.restarts,
            seed=int(split_seeds[split_no]),
        )
        try:
            sub = kmeans(data[idx], 2, sub_cfg)
            half = sub.assignments == 0
        except DegenerateDataError:
            # all points identical: peel off one point so k clusters stay reachable
            half = np.zeros(len(idx), dtype=bool)
            half[0] = True
        clusters.append(idx[half])
        clusters.append(idx[~half])
    labels = np.empty(n, dtype=np.int64)
    for c, idx in enumerate(clusters):
        labels[idx] = c
    return finalize_result(labels, "bisecting", X=data, seed=cfg.seed)
