"""Agglomerative clustering via Lance-Williams updates.

Starts from singletons and repeatedly merges the pair of clusters with the
minimum linkage dissimilarity until k clusters remain.  Ties break toward
the lexicographically smallest (i, j) pair of cluster ids, so the procedure
is fully deterministic.

Ward linkage runs on squared Euclidean distances, where the Lance-Williams
recursion keeps d(A, B) proportional to the variance increase of merging A
and B; the other linkages run on plain Euclidean distances.
"""

from __future__ import annotations

import numpy as np

from .common import ClusterResult, as_matrix, finalize_result, pairwise_dists, pairwise_sq_dists

LINKAGES = ("ward", "average", "complete", "single")


def _merged_distances(linkage, d_il, d_jl, d_ij, s_i, s_j, s_l):
    if linkage == "single":
        return np.minimum(d_il, d_jl)
    if linkage == "complete":
        return np.maximum(d_il, d_jl)
    if linkage == "average":
        return (s_i * d_il + s_j * d_jl) / (s_i + s_j)
    # ward, on squared distances
    total = s_i + s_j + s_l
    return ((s_i + s_l) * d_il + (s_j + s_l) * d_jl - s_l * d_ij) / total


def agglomerative(X, k: int, linkage: str = "ward") -> ClusterResult:
    """Bottom-up merging until k clusters remain; deterministic, no randomness."""
    if linkage not in LINKAGES:
        raise ValueError(f"linkage must be one of {LINKAGES}, got {linkage!r}")
    data = as_matrix(X)
    n = data.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must be in [1, {n}]")

    D = pairwise_sq_dists(data) if linkage == "ward" else pairwise_dists(data)
    np.fill_diagonal(D, np.inf)
    active = np.ones(n, dtype=bool)
    sizes = np.ones(n, dtype=np.int64)
    members: list[list[int] | None] = [[i] for i in range(n)]

    for _ in range(n - k):
        # row-major argmin over the symmetric matrix = smallest (i, j) among ties
        flat = int(np.argmin(D))
        i, j = divmod(flat, n)
        if i > j:
            i, j = j, i
        others = np.flatnonzero(active)
        others = others[(others != i) & (others != j)]
        if others.size:
            D[i, others] = D[others, i] = _merged_distances(
                linkage, D[i, others], D[j, others], D[i, j], sizes[i], sizes[j], sizes[others]
            )
        members[i].extend(members[j])
        members[j] = None
        sizes[i] += sizes[j]
        active[j] = False
        D[j, :] = np.inf
        D[:, j] = np.inf

    labels = np.empty(n, dtype=np.int64)
    for c, idx in enumerate(np.flatnonzero(active)):
        labels[members[idx]] = c
    return finalize_result(labels, f"agglomerative-{linkage}", X=data)
