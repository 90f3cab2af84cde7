"""intentbench: clustering and evaluation toolkit for dialogue intent induction.

The library ingests conversation transcripts and precomputed utterance
embeddings, runs a suite of clustering algorithms (k-means and bisecting
k-means, agglomerative, BIRCH, spectral, DBSCAN), and scores induced intent
clusters against reference intents with NMI, ARI, one-to-one accuracy,
many-to-one precision/recall/F1, and example coverage.
"""

from . import cluster, corpus, embedstore, metrics, pipeline
from .cluster import (
    ClusterResult,
    KMeansConfig,
    agglomerative,
    birch,
    bisecting_kmeans,
    cluster_with,
    dbscan,
    kmeans,
    kmeans_pp_init,
    select_k,
    silhouette,
    spectral,
)
from .corpus import ActSource, Dialogue, Turn, UtteranceRecord, load_transcripts, select_intent_turns
from .embedstore import EmbeddingMatrix, align, l2_normalize, load_embeddings, save_embeddings
from .errors import DegenerateDataError, FormatError, IntentBenchError, ValidationError
from .metrics import LabelPair, MetricReport, evaluate, resolve_noise
from .pipeline import ExperimentConfig, ExperimentResult, emit_report, project_2d, run_experiment, sweep_k

__version__ = "0.1.0"
