"""Clustering algorithms compared by the toolkit, plus automatic k selection."""

from .common import CentroidSet, ClusterResult, KMeansConfig
from .birch import CFEntry, birch
from .dbscan import dbscan
from .dispatch import ALGORITHMS, K_PARAMETERIZED, cluster_with
from .hierarchy import LINKAGES, agglomerative
from .kmeans import bisecting_kmeans, kmeans, kmeans_pp_init, min_sq_dists
from .selection import select_k, silhouette
from .spectral import cosine_knn_affinity, rbf_affinity, spectral, spectral_from_affinity

__all__ = [
    "ALGORITHMS",
    "CFEntry",
    "CentroidSet",
    "ClusterResult",
    "KMeansConfig",
    "K_PARAMETERIZED",
    "LINKAGES",
    "agglomerative",
    "birch",
    "bisecting_kmeans",
    "cluster_with",
    "cosine_knn_affinity",
    "dbscan",
    "kmeans",
    "kmeans_pp_init",
    "min_sq_dists",
    "rbf_affinity",
    "select_k",
    "silhouette",
    "spectral",
    "spectral_from_affinity",
]
