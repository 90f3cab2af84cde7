"""Command-line interface: run / sweep / report / project.

Exit codes: 0 on success, 1 on validation or argument errors, 2 on I/O
errors.  INTENTBENCH_THREADS caps sweep parallelism.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import embedstore, pipeline
from .cluster import ALGORITHMS, ClusterResult
from .errors import IntentBenchError


def _parse_k_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(part) for part in text.split(","))
    except ValueError:
        raise click.BadParameter("expected A,B with integers A <= B") from None
    return lo, hi


def _build_config(task, transcripts, embeddings, predicted_acts, algo, k, k_range,
                  linkage, eps, min_pts, threshold, branching, affinity, neighbors,
                  restarts, no_normalize, per_intent_cap, seed, out) -> pipeline.ExperimentConfig:
    params = {}
    if algo == "agglomerative":
        params["linkage"] = linkage
    if algo == "dbscan":
        params["eps"] = eps
        params["min_pts"] = min_pts
    if algo == "birch":
        params["threshold"] = threshold
        params["branching"] = branching
    if algo == "spectral":
        params["affinity"] = affinity
        params["neighbors"] = neighbors
    if algo in ("kmeans", "bisecting"):
        params["restarts"] = restarts
    if k is None:  # unspecified: auto-select where k matters, placeholder otherwise
        k = "auto" if algo != "dbscan" else "1"
    k_value: int | str = "auto" if k == "auto" else int(k)
    return pipeline.ExperimentConfig(
        task="intent_clustering" if task == "1" else "intent_induction",
        transcripts=transcripts,
        embeddings=embeddings,
        predicted_acts=predicted_acts,
        algorithm=algo,
        algorithm_params=params,
        k=k_value,
        k_range=_parse_k_range(k_range),
        normalize=not no_normalize,
        seed=seed,
        per_intent_cap=per_intent_cap,
        output_dir=out,
    )


_shared_options = [
    click.option("--task", type=click.Choice(["1", "2"]), default="1", show_default=True,
                 help="1 = intent clustering (gold acts), 2 = intent induction (predicted acts)"),
    click.option("--transcripts", required=True, type=click.Path(), help="Transcript JSONL file"),
    click.option("--embeddings", required=True, type=click.Path(), help="Embedding JSONL file"),
    click.option("--predicted-acts", type=click.Path(), default=None, help="Predicted-acts sidecar (task 2)"),
    click.option("--algo", type=click.Choice(ALGORITHMS), default="kmeans", show_default=True),
    click.option("--k-range", default="5,50", show_default=True, help="Inclusive range for k=auto"),
    click.option("--linkage", type=click.Choice(["ward", "average", "complete", "single"]),
                 default="ward", show_default=True),
    click.option("--eps", type=float, default=0.5, show_default=True, help="DBSCAN radius"),
    click.option("--min-pts", type=int, default=5, show_default=True, help="DBSCAN core threshold"),
    click.option("--threshold", type=float, default=0.5, show_default=True, help="BIRCH CF radius cap"),
    click.option("--branching", type=int, default=50, show_default=True, help="BIRCH branching factor"),
    click.option("--affinity", type=click.Choice(["rbf", "cosine_knn"]), default="rbf", show_default=True),
    click.option("--neighbors", type=int, default=10, show_default=True, help="Cosine k-NN graph degree"),
    click.option("--restarts", type=int, default=10, show_default=True, help="K-means restarts"),
    click.option("--no-normalize", is_flag=True, help="Skip L2 normalization of embeddings"),
    click.option("--per-intent-cap", type=int, default=None, help="Keep at most N utterances per intent"),
    click.option("--seed", type=int, default=42, show_default=True),
    click.option("--out", required=True, type=click.Path(), help="Output directory"),
]


def _with_shared_options(fn):
    for option in reversed(_shared_options):
        fn = option(fn)
    return fn


@click.group()
def cli():
    """Intent-clustering experiment toolkit."""


@cli.command()
@_with_shared_options
@click.option("--k", default=None, help="Cluster count, or 'auto' [default: auto]")
def run(k, **kwargs):
    """Run one clustering experiment and score it against reference intents."""
    config = _build_config(k=k, **kwargs)
    experiment = pipeline.run_experiment(config)
    click.echo(pipeline.emit_report([experiment], "md", Path(config.output_dir) / "report.md"), nl=False)
    click.echo(f"artifacts in {config.output_dir}")


@cli.command()
@_with_shared_options
@click.option("--k-list", required=True, help="Comma-separated cluster counts, e.g. 2,3,4")
def sweep(k_list, **kwargs):
    """Run one experiment per k and emit a (k, nmi, ari, f1, coverage) curve CSV."""
    try:
        k_values = [int(part) for part in k_list.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter("--k-list expects comma-separated integers") from None
    config = _build_config(k=k_values[0] if k_values else "auto", **kwargs)
    outcome = pipeline.sweep_k(config, k_values)
    for k, message in sorted(outcome.failures.items()):
        click.echo(f"k={k} failed: {message}", err=True)
    click.echo(f"swept {len(outcome.results)} of {len(k_values)} k values; curves in {config.output_dir}/sweep.csv")


@cli.command()
@click.option("--results", "results_dirs", required=True, multiple=True, type=click.Path(),
              help="Directory searched recursively for result.json files (repeatable)")
@click.option("--format", "fmt", type=click.Choice(["md", "csv"]), default="md", show_default=True)
@click.option("--out", required=True, type=click.Path(), help="Report file to write")
def report(results_dirs, fmt, out):
    """Collect result.json files into one table in the standard column order."""
    results = []
    for root in results_dirs:
        for path in sorted(Path(root).rglob("result.json")):
            results.append(_load_result(path))
    if not results:
        raise click.ClickException("no result.json files found")
    text = pipeline.emit_report(results, fmt, out)
    click.echo(text, nl=False)


@cli.command()
@click.option("--embeddings", required=True, type=click.Path(), help="Embedding JSONL file")
@click.option("--assignments", required=True, type=click.Path(), help="assignments.jsonl from a run")
@click.option("--out", required=True, type=click.Path(), help="CSV of projected coordinates")
def project(embeddings, assignments, out):
    """Project clustered embeddings to 2-D principal components for plotting."""
    matrix = embedstore.load_embeddings(embeddings)
    header, mapping = _load_assignments(assignments)
    matrix = embedstore.align(matrix, list(mapping))
    labels = np.array([mapping[uid] for uid in matrix.ids], dtype=np.int64)
    result = ClusterResult(assignments=labels, k=int(header.get("k", 0)),
                           algorithm=str(header.get("algorithm", "unknown")))
    pipeline.project_2d(matrix, result, out)
    click.echo(f"wrote {out}")


def _load_result(path: Path) -> pipeline.ExperimentResult:
    from .metrics import MetricReport

    payload = json.loads(path.read_text(encoding="utf-8"))
    config = pipeline.ExperimentConfig(
        task=payload["config"]["task"],
        transcripts=payload["config"]["transcripts"],
        embeddings=payload["config"]["embeddings"],
        predicted_acts=payload["config"]["predicted_acts"],
        algorithm=payload["config"]["algorithm"],
        algorithm_params=payload["config"]["algorithm_params"],
        k=payload["config"]["k"],
        k_range=tuple(payload["config"]["k_range"]),
        normalize=payload["config"]["normalize"],
        seed=payload["config"]["seed"],
        act_name=payload["config"].get("act_name", "InformIntent"),
        per_intent_cap=payload["config"].get("per_intent_cap"),
        output_dir=payload["config"]["output_dir"],
    )
    report = MetricReport(**payload["metrics"])
    cluster = ClusterResult(
        assignments=np.zeros(payload["n_utterances"], dtype=int),
        k=payload["cluster"]["k"],
        algorithm=payload["cluster"]["algorithm"],
        seed=payload["cluster"]["seed"],
    )
    return pipeline.ExperimentResult(
        config=config,
        report=report,
        cluster=cluster,
        utterance_ids=[],
        k_used=payload["cluster"]["k"],
        k_auto_selected=payload["cluster"].get("k_auto_selected", False),
        duration_s=payload.get("duration_s", 0.0),
        sizes={int(c): n for c, n in payload["cluster"].get("sizes", {}).items()},
    )


def _load_assignments(path) -> tuple[dict, dict[str, int]]:
    mapping: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            mapping[obj["id"]] = int(obj["cluster"])
    return header, mapping


def main(argv=None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        return 2
    except (IntentBenchError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
