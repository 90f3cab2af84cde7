"""Full pipeline run on the committed synthetic corpus.

Builds the same artifacts the CLI produces: assignments.jsonl, report.csv,
result.json, and a 2-D PCA projection for plotting.  The equivalent shell
command is shown at the end.
"""

import tempfile
from pathlib import Path

from intentbench.embedstore import align, l2_normalize, load_embeddings
from intentbench.pipeline import ExperimentConfig, project_2d, run_experiment

FIXTURES = Path(__file__).parent.parent / "tests" / "fixtures"
workdir = Path(tempfile.mkdtemp(prefix="intentbench-demo-"))

config = ExperimentConfig(
    transcripts=str(FIXTURES / "transcripts.jsonl"),
    embeddings=str(FIXTURES / "embeddings.jsonl"),
    algorithm="kmeans",
    k="auto",                 # silhouette-selected within k_range
    k_range=(2, 8),
    normalize=True,
    seed=42,
    output_dir=str(workdir),
)
experiment = run_experiment(config)

print(f"selected k = {experiment.k_used} (auto: {experiment.k_auto_selected})")
print(f"metrics: {experiment.report.to_dict()}")
print(f"cluster sizes: {experiment.sizes}")
print(f"artifacts: {sorted(p.name for p in workdir.iterdir())}")

# project the clustered embeddings to 2-D for inspection
matrix = l2_normalize(align(load_embeddings(config.embeddings), experiment.utterance_ids))
project_2d(matrix, experiment.cluster, workdir / "projection.csv")
print(f"\nwrote {workdir / 'projection.csv'} (columns: id, x, y, cluster, is_barycenter)")

print(
    "\nsame run via the CLI:\n"
    f"  intentbench run --task 1 --transcripts {config.transcripts} \\\n"
    f"      --embeddings {config.embeddings} --algo kmeans --k auto \\\n"
    f"      --k-range 2,8 --seed 42 --out {workdir}"
)
