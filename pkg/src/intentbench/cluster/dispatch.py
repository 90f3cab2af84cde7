"""Uniform entry point over the clustering algorithms, keyed by tag name."""

from __future__ import annotations

from .common import ClusterResult, KMeansConfig, as_matrix
from .birch import birch
from .dbscan import dbscan
from .hierarchy import agglomerative
from .kmeans import bisecting_kmeans, kmeans
from .spectral import spectral

ALGORITHMS = ("kmeans", "bisecting", "agglomerative", "birch", "spectral", "dbscan")
K_PARAMETERIZED = ("kmeans", "bisecting", "agglomerative", "birch", "spectral")


def _kmeans_config(seed: int, params: dict) -> KMeansConfig:
    return KMeansConfig(
        max_iter=int(params.get("max_iter", 300)),
        tol=float(params.get("tol", 1e-6)),
        restarts=int(params.get("restarts", 10)),
        seed=seed,
    )


def cluster_with(algorithm: str, X, k: int | None = None, seed: int = 0, params: dict | None = None) -> ClusterResult:
    """Run one algorithm by tag; ``params`` carries algorithm-specific knobs."""
    params = dict(params or {})
    data = as_matrix(X)
    if algorithm in K_PARAMETERIZED and k is None:
        raise ValueError(f"{algorithm} requires k")
    if algorithm == "kmeans":
        return kmeans(data, k, _kmeans_config(seed, params))
    if algorithm == "bisecting":
        return bisecting_kmeans(data, k, _kmeans_config(seed, params))
    if algorithm == "agglomerative":
        return agglomerative(data, k, linkage=params.get("linkage", "ward"))
    if algorithm == "birch":
        return birch(
            data,
            k,
            threshold=float(params.get("threshold", 0.5)),
            branching=int(params.get("branching", 50)),
        )
    if algorithm == "spectral":
        return spectral(
            data,
            k,
            affinity=params.get("affinity", "rbf"),
            seed=seed,
            neighbors=int(params.get("neighbors", 10)),
        )
    if algorithm == "dbscan":
        return dbscan(data, eps=float(params.get("eps", 0.5)), min_pts=int(params.get("min_pts", 5)))
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
