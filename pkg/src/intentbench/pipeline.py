"""End-to-end experiment orchestration.

A run is: load transcripts -> select intent-bearing customer turns (gold acts
for the clustering task, predicted acts for the induction task) -> align the
embedding rows -> optionally L2-normalize -> pick k (fixed or silhouette-auto)
-> cluster -> score against the reference intents -> write artifacts.

Given one config and seed, a run is fully deterministic: the assignments file
and the report row are byte-identical across repeats.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from . import corpus, embedstore, metrics
from .cluster import K_PARAMETERIZED, ClusterResult, cluster_with, select_k
from .errors import ValidationError

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ("NMI", "ARI", "ACC", "Precision", "Recall", "F1", "Example Coverage", "#K")

Task = Literal["intent_clustering", "intent_induction"]


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: data paths, algorithm choice, and determinism knobs."""

    transcripts: str
    embeddings: str
    algorithm: str
    output_dir: str
    task: Task = "intent_clustering"
    predicted_acts: str | None = None
    algorithm_params: dict = field(default_factory=dict)
    k: int | str = "auto"
    k_range: tuple[int, int] = (5, 50)
    normalize: bool = True
    seed: int = 42
    act_name: str = "InformIntent"
    per_intent_cap: int | None = None

    def __post_init__(self):
        if self.task not in ("intent_clustering", "intent_induction"):
            raise ValidationError(f"unknown task {self.task!r}")
        if self.task == "intent_induction" and not self.predicted_acts:
            raise ValidationError("intent_induction requires a predicted-acts file")
        if self.k == "auto":
            if self.algorithm not in K_PARAMETERIZED:
                raise ValidationError(f"k='auto' requires a k-parameterized algorithm, got {self.algorithm!r}")
        elif not (isinstance(self.k, int) and self.k >= 1):
            raise ValidationError(f"k must be a positive integer or 'auto', got {self.k!r}")

    def label(self) -> str:
        """Short deterministic tag used in report rows."""
        parts = [self.algorithm]
        for key in sorted(self.algorithm_params):
            parts.append(f"{key}={self.algorithm_params[key]}")
        parts.append(f"k={self.k}")
        parts.append(f"seed={self.seed}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "transcripts": str(self.transcripts),
            "embeddings": str(self.embeddings),
            "predicted_acts": str(self.predicted_acts) if self.predicted_acts else None,
            "algorithm": self.algorithm,
            "algorithm_params": dict(self.algorithm_params),
            "k": self.k,
            "k_range": list(self.k_range),
            "normalize": self.normalize,
            "seed": self.seed,
            "act_name": self.act_name,
            "per_intent_cap": self.per_intent_cap,
            "output_dir": str(self.output_dir),
        }


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    report: metrics.MetricReport
    cluster: ClusterResult
    utterance_ids: list[str]
    k_used: int | None
    k_auto_selected: bool
    duration_s: float
    sizes: dict[int, int]


def _apply_cap(records, cap: int | None):
    if cap is None:
        return list(records)
    kept, seen = [], {}
    for record in records:
        count = seen.get(record.reference_intent, 0)
        if count < cap:
            kept.append(record)
            seen[record.reference_intent] = count + 1
    return kept


def _select_records(config: ExperimentConfig):
    dialogues = corpus.load_transcripts(config.transcripts)
    if config.task == "intent_clustering":
        source = corpus.ActSource(mode="gold", act_name=config.act_name)
        predicted = None
    else:
        source = corpus.ActSource(mode="predicted", act_name=config.act_name)
        predicted = corpus.load_predicted_acts(config.predicted_acts)
    records = corpus.select_intent_turns(dialogues, source, predicted)
    return _apply_cap(records, config.per_intent_cap)


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Execute one experiment and write result.json / assignments.jsonl / report.csv."""
    start = time.perf_counter()
    records = _select_records(config)
    if not records:
        raise ValidationError("no utterances selected; check the act source and act name")
    refs = corpus.reference_labels(records)
    matrix = embedstore.align(embedstore.load_embeddings(config.embeddings), records)
    if config.normalize:
        matrix = embedstore.l2_normalize(matrix)

    auto = config.k == "auto"
    if config.algorithm in K_PARAMETERIZED:
        k_used = (
            select_k(matrix, config.algorithm, config.k_range, seed=config.seed, params=config.algorithm_params)
            if auto
            else int(config.k)
        )
    else:
        k_used = None
    logger.info("clustering %d utterances with %s (k=%s)", len(records), config.algorithm, k_used)
    result = cluster_with(config.algorithm, matrix, k=k_used, seed=config.seed, params=config.algorithm_params)

    predicted = metrics.resolve_noise(result.assignments)
    report = metrics.evaluate(metrics.LabelPair(predicted, refs))
    duration = time.perf_counter() - start
    experiment = ExperimentResult(
        config=config,
        report=report,
        cluster=result,
        utterance_ids=[r.utterance_id for r in records],
        k_used=k_used,
        k_auto_selected=auto,
        duration_s=duration,
        sizes=result.sizes(),
    )
    _write_outputs(experiment)
    return experiment


def _write_outputs(experiment: ExperimentResult) -> None:
    out = Path(experiment.config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_assignments(experiment, out / "assignments.jsonl")
    emit_report([experiment], "csv", out / "report.csv")
    payload = {
        "config": experiment.config.to_dict(),
        "metrics": experiment.report.to_dict(),
        "cluster": {
            "algorithm": experiment.cluster.algorithm,
            "k": experiment.cluster.k,
            "seed": experiment.cluster.seed,
            "k_auto_selected": experiment.k_auto_selected,
            "sizes": {str(c): n for c, n in sorted(experiment.sizes.items())},
            "meta": {key: val for key, val in experiment.cluster.meta.items() if key != "objective_history"},
        },
        "n_utterances": len(experiment.utterance_ids),
        "duration_s": experiment.duration_s,
        "label": experiment.config.label(),
    }
    (out / "result.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_assignments(experiment: ExperimentResult, path) -> None:
    """Serialize cluster assignments: a metadata header line, then one id per line."""
    result = experiment.cluster
    header = {"algorithm": result.algorithm, "k": result.k, "seed": result.seed}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for uid, label in zip(experiment.utterance_ids, result.assignments):
            fh.write(json.dumps({"id": uid, "cluster": int(label)}, sort_keys=True) + "\n")


def _percent(value: float) -> str:
    return f"{100.0 * value:.1f}"


def _report_rows(results: Sequence[ExperimentResult]) -> list[list[str]]:
    rows = []
    for exp in sorted(results, key=lambda e: (e.config.label(), e.report.k_predicted)):
        r = exp.report
        rows.append(
            [
                exp.config.label(),
                _percent(r.nmi),
                _percent(r.ari),
                _percent(r.acc),
                _percent(r.precision),
                _percent(r.recall),
                _percent(r.f1),
                _percent(r.example_coverage),
                str(r.k_predicted),
            ]
        )
    return rows


def emit_report(results: Sequence[ExperimentResult], format: str, path) -> str:
    """Write a metric table (one row per result) in the tables' column order.

    Values are x100 with one decimal, matching how results are conventionally
    displayed; raw JSON artifacts keep full precision.
    """
    if not results:
        raise ValueError("emit_report requires at least one result")
    if format not in ("md", "csv"):
        raise ValueError(f"format must be 'md' or 'csv', got {format!r}")
    header = ["Run", *REPORT_COLUMNS]
    rows = _report_rows(results)
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buffer.getvalue()
    else:
        lines = [
            "| " + " | ".join(header) + " |",
            "| " + " | ".join("---" for _ in header) + " |",
        ]
        lines += ["| " + " | ".join(row) + " |" for row in rows]
        text = "\n".join(lines) + "\n"
    Path(path).write_text(text, encoding="utf-8")
    return text


@dataclass
class SweepOutcome:
    results: list[ExperimentResult]
    failures: dict[int, str]


def sweep_k(config: ExperimentConfig, k_values: Sequence[int]) -> SweepOutcome:
    """Run one experiment per k with a shared seed; failures are isolated per k.

    Writes sweep.csv with (k, nmi, ari, f1, coverage) rows for curve plotting,
    in natural [0, 1] scale.  INTENTBENCH_THREADS > 1 evaluates ks in a thread
    pool; outputs are identical to sequential execution.
    """
    if config.algorithm not in K_PARAMETERIZED:
        raise ValidationError(f"sweep requires a k-parameterized algorithm, got {config.algorithm!r}")
    if not k_values:
        raise ValueError("sweep requires at least one k")

    def run_one(k: int) -> ExperimentResult:
        sub = replace(config, k=int(k), output_dir=str(Path(config.output_dir) / f"k={k}"))
        return run_experiment(sub)

    threads = int(os.environ.get("INTENTBENCH_THREADS", "1"))
    results: dict[int, ExperimentResult] = {}
    failures: dict[int, str] = {}
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {k: pool.submit(run_one, k) for k in k_values}
        for k, future in futures.items():
            try:
                results[k] = future.result()
            except Exception as exc:  # noqa: BLE001 - isolation is the contract
                failures[k] = f"{type(exc).__name__}: {exc}"
    else:
        for k in k_values:
            try:
                results[k] = run_one(k)
            except Exception as exc:  # noqa: BLE001
                failures[k] = f"{type(exc).__name__}: {exc}"
    for k, message in failures.items():
        logger.warning("sweep k=%d failed: %s", k, message)

    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "sweep.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k", "nmi", "ari", "f1", "coverage"])
        for k in sorted(results):
            r = results[k].report
            writer.writerow([k, repr(r.nmi), repr(r.ari), repr(r.f1), repr(r.example_coverage)])
    ordered = [results[k] for k in sorted(results)]
    return SweepOutcome(results=ordered, failures=failures)


def project_2d(matrix, result: ClusterResult | None, path) -> None:
    """Project rows (and barycenters, if any) onto the top-2 principal components.

    Writes CSV columns (id, x, y, cluster, is_barycenter).  Deterministic: the
    component signs are fixed so repeated runs produce identical files.  Data
    of rank < 2 gets a zero-filled second component and a warning.
    """
    import warnings

    if isinstance(matrix, embedstore.EmbeddingMatrix):
        ids = list(matrix.ids)
        data = matrix.data
    else:
        data = np.asarray(matrix, dtype=np.float64)
        ids = [str(i) for i in range(data.shape[0])]
    n, d = data.shape
    if n < 2 or d < 2:
        raise ValueError("projection requires at least 2 rows and 2 dimensions")
    center = data.mean(axis=0)
    centered = data - center
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:2].copy()
    for i in range(2):  # fix the sign: largest-magnitude coordinate positive
        pivot = int(np.argmax(np.abs(components[i])))
        if components[i, pivot] < 0:
            components[i] = -components[i]
    rank_deficient = singular.size < 2 or singular[1] <= singular[0] * 1e-12
    if rank_deficient:
        warnings.warn("data has rank < 2; second component is zero-filled", stacklevel=2)
    coords = centered @ components.T
    if rank_deficient:
        coords[:, 1] = 0.0

    labels = result.assignments if result is not None else np.zeros(n, dtype=int)
    rows = [(ids[i], coords[i, 0], coords[i, 1], int(labels[i]), 0) for i in range(n)]
    if result is not None and result.barycenters is not None:
        proj = (result.barycenters - center) @ components.T
        if rank_deficient:
            proj[:, 1] = 0.0
        for c in range(proj.shape[0]):
            rows.append((f"barycenter-{c}", proj[c, 0], proj[c, 1], c, 1))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "x", "y", "cluster", "is_barycenter"])
        for uid, x, y, cluster, is_bc in rows:
            writer.writerow([uid, repr(float(x)), repr(float(y)), cluster, is_bc])
