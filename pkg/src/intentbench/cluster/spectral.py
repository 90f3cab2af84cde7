"""Spectral clustering on the symmetric normalized Laplacian.

Builds a non-negative symmetric affinity (RBF with median-distance bandwidth
by default, or a cosine k-NN graph), embeds rows into the k eigenvectors of
L = I - D^(-1/2) W D^(-1/2) with the smallest eigenvalues, row-normalizes the
embedding, and k-means-clusters it.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import DegenerateDataError
from .common import ClusterResult, KMeansConfig, as_matrix, finalize_result, pairwise_dists
from .kmeans import kmeans

AFFINITIES = ("rbf", "cosine_knn")


def rbf_affinity(data: np.ndarray, bandwidth: float | None = None) -> np.ndarray:
    """Gaussian affinity exp(-d^2 / (2 sigma^2)); sigma defaults to the median distance."""
    dists = pairwise_dists(data)
    if bandwidth is None:
        off_diag = dists[np.triu_indices_from(dists, k=1)]
        bandwidth = float(np.median(off_diag)) if off_diag.size else 1.0
        if bandwidth == 0.0:
            bandwidth = 1.0
    return np.exp(-(dists**2) / (2.0 * bandwidth**2))


def cosine_knn_affinity(data: np.ndarray, neighbors: int) -> np.ndarray:
    """Symmetrized k-nearest-neighbor graph weighted by clipped cosine similarity."""
    n = data.shape[0]
    norms = np.linalg.norm(data, axis=1)
    unit = np.divide(data, norms[:, None], out=np.zeros_like(data), where=norms[:, None] > 0)
    sims = np.clip(unit @ unit.T, 0.0, None)
    np.fill_diagonal(sims, 0.0)
    m = min(neighbors, n - 1)
    W = np.zeros_like(sims)
    for i in range(n):
        order = np.argsort(-sims[i], kind="stable")[:m]
        W[i, order] = sims[i, order]
    return np.maximum(W, W.T)


def spectral_from_affinity(W: np.ndarray, k: int, seed: int = 0, config: KMeansConfig | None = None) -> ClusterResult:
    """Cluster rows of a precomputed affinity matrix.

    A disconnected affinity graph with more than k components is not an
    error: a warning is recorded in ``meta`` and clustering proceeds.
    """
    W = np.asarray(W, dtype=np.float64)
    n = W.shape[0]
    if W.ndim != 2 or W.shape[1] != n:
        raise ValueError("affinity must be a square matrix")
    if not 2 <= k <= n:
        raise ValueError(f"k={k} must be in [2, {n}]")
    meta: dict = {}
    components, _ = connected_components(csr_matrix(W > 0), directed=False)
    if components > k:
        meta["warnings"] = [f"affinity graph has {components} connected components for k={k}"]

    degrees = W.sum(axis=1)
    inv_sqrt = np.divide(1.0, np.sqrt(degrees), out=np.zeros_like(degrees), where=degrees > 0)
    M = inv_sqrt[:, None] * W * inv_sqrt[None, :]
    M = (M + M.T) / 2.0
    _, vecs = np.linalg.eigh(M)
    embedding = vecs[:, -k:]  # largest of M = smallest of the normalized Laplacian
    row_norms = np.linalg.norm(embedding, axis=1)
    embedding = np.divide(
        embedding, row_norms[:, None], out=np.zeros_like(embedding), where=row_norms[:, None] > 0
    )
    cfg = config or KMeansConfig(seed=seed)
    grouped = kmeans(embedding, k, cfg)
    result = finalize_result(grouped.assignments, "spectral", seed=cfg.seed, meta=meta)
    return result


def spectral(
    X,
    k: int,
    affinity: str = "rbf",
    seed: int = 0,
    neighbors: int = 10,
    config: KMeansConfig | None = None,
) -> ClusterResult:
    """Spectral clustering of point rows with a built-in affinity choice."""
    if affinity not in AFFINITIES:
        raise ValueError(f"affinity must be one of {AFFINITIES}, got {affinity!r}")
    data = as_matrix(X)
    n = data.shape[0]
    if not 2 <= k <= n:
        raise ValueError(f"k={k} must be in [2, {n}]")
    if np.all(data == data[0]):
        raise DegenerateDataError("all points identical: no structure to split into distinct centroids")
    W = rbf_affinity(data) if affinity == "rbf" else cosine_knn_affinity(data, neighbors)
    result = spectral_from_affinity(W, k, seed=seed, config=config)
    final = finalize_result(
        result.assignments, "spectral", X=data, seed=result.seed,
        meta={**result.meta, "affinity": affinity},
    )
    return final
