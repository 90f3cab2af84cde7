"""Density-based clustering with noise (DBSCAN).

Core points have at least ``min_pts`` neighbors (themselves included) within
``eps``; clusters are maximal density-connected sets grown breadth-first in
row order, which makes the labeling deterministic.  Unreachable non-core
points keep the noise label -1.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .common import ClusterResult, as_matrix, finalize_result, pairwise_dists


def dbscan(X, eps: float, min_pts: int) -> ClusterResult:
    """Standard density clustering; an all-noise result (k = 0) is legal."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    if min_pts < 1:
        raise ValueError("min_pts must be >= 1")
    data = as_matrix(X)
    n = data.shape[0]
    dists = pairwise_dists(data)
    neighbor_lists = [np.flatnonzero(dists[i] <= eps) for i in range(n)]
    core = np.array([len(nb) >= min_pts for nb in neighbor_lists])

    labels = np.full(n, -1, dtype=np.int64)
    cluster = 0
    for start in range(n):
        if labels[start] != -1 or not core[start]:
            continue
        labels[start] = cluster
        queue = deque([start])
        while queue:
            p = queue.popleft()
            if not core[p]:
                continue
            for q in neighbor_lists[p]:
                if labels[q] == -1:
                    labels[q] = cluster
                    queue.append(q)
        cluster += 1
    return finalize_result(labels, "dbscan", X=data if cluster else None, meta={"eps": eps, "min_pts": min_pts})
