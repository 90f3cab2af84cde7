"""Scoring of a predicted clustering against reference intent labels.

Implements the full metric suite: NMI (mutual information over the minimum
of the two entropies), ARI (chance-adjusted pair counting), many-to-one
precision/recall/F1, example coverage, and one-to-one accuracy.

Two definitions here are interpretation choices and deliberately isolated in
this module so they can be swapped:

* precision and recall are macro-averaged over the reference labels that are
  COVERED, i.e. receive at least one cluster under the many-to-one alignment
  (this is what makes tiny cluster counts score high recall alongside low
  example coverage);
* accuracy uses an exact one-to-one assignment between clusters and labels
  (rectangular, unmatched rows/columns contribute nothing), distinguishing
  it from the many-to-one F1 family.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, log
from typing import Hashable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ValidationError


@dataclass(frozen=True)
class LabelPair:
    """Aligned predicted / reference label sequences for one evaluation."""

    predicted: tuple
    reference: tuple

    def __init__(self, predicted: Sequence[Hashable], reference: Sequence[Hashable]):
        if len(predicted) != len(reference):
            raise ValueError(
                f"predicted length {len(predicted)} != reference length {len(reference)}"
            )
        if len(predicted) == 0:
            raise ValueError("label pair must be non-empty")
        if any(p == -1 for p in predicted):
            raise ValidationError("noise label -1 in predictions; resolve noise before scoring")
        object.__setattr__(self, "predicted", tuple(predicted))
        object.__setattr__(self, "reference", tuple(reference))

    def __len__(self) -> int:
        return len(self.predicted)


@dataclass(frozen=True)
class ContingencyTable:
    """Joint counts between predicted clusters (rows) and reference labels (columns).

    Row and column keys are kept in first-appearance order, which is also the
    tie-breaking order for the many-to-one alignment.
    """

    counts: np.ndarray
    row_keys: tuple
    col_keys: tuple

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class MetricReport:
    """Full-precision metric values; display scaling (x100) happens at report time."""

    nmi: float
    ari: float
    acc: float
    precision: float
    recall: float
    f1: float
    example_coverage: float
    k_predicted: int
    k_reference: int

    def to_dict(self) -> dict:
        return {
            "nmi": self.nmi,
            "ari": self.ari,
            "acc": self.acc,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "example_coverage": self.example_coverage,
            "k_predicted": self.k_predicted,
            "k_reference": self.k_reference,
        }


def _first_appearance_index(values) -> dict:
    index: dict = {}
    for v in values:
        if v not in index:
            index[v] = len(index)
    return index


def contingency(pair: LabelPair) -> ContingencyTable:
    """Count co-occurrences of predicted clusters and reference labels."""
    rows = _first_appearance_index(pair.predicted)
    cols = _first_appearance_index(pair.reference)
    counts = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for p, r in zip(pair.predicted, pair.reference):
        counts[rows[p], cols[r]] += 1
    return ContingencyTable(counts=counts, row_keys=tuple(rows), col_keys=tuple(cols))


def _entropy(sums: np.ndarray, n: int) -> float:
    p = sums[sums > 0] / n
    return float(-np.sum(p * np.log(p)))


def nmi(pair: LabelPair) -> float:
    """Mutual information normalized by the minimum of the two entropies.

    Degenerate cases: both partitions constant (hence identical) give 1.0;
    one constant partition against a non-constant one gives 0.0.
    """
    table = contingency(pair)
    n = table.total
    h_pred = _entropy(table.row_sums, n)
    h_ref = _entropy(table.col_sums, n)
    h_min = min(h_pred, h_ref)
    if h_min == 0.0:
        return 1.0 if h_pred == h_ref else 0.0
    a, b = table.row_sums, table.col_sums
    info = 0.0
    for i, j in zip(*np.nonzero(table.counts)):
        nij = int(table.counts[i, j])
        info += (nij / n) * log(nij * n / (int(a[i]) * int(b[j])))
    return float(info / h_min)


def ari(pair: LabelPair) -> float:
    """Chance-adjusted pair-counting agreement, computed in exact integer arithmetic.

    Returns 1.0 for a degenerate denominator (both partitions all singletons,
    or both a single cluster), the standard convention.
    """
    n = len(pair)
    if n < 2:
        raise ValueError("ARI requires at least 2 examples")
    table = contingency(pair)
    index = sum(comb(int(c), 2) for c in table.counts.flat)
    a_pairs = sum(comb(int(c), 2) for c in table.row_sums)
    b_pairs = sum(comb(int(c), 2) for c in table.col_sums)
    total_pairs = comb(n, 2)
    # ARI = (index - AB/T) / ((A+B)/2 - AB/T), scaled by 2T to stay integral.
    numer = 2 * (index * total_pairs - a_pairs * b_pairs)
    denom = total_pairs * (a_pairs + b_pairs) - 2 * a_pairs * b_pairs
    if denom == 0:
        return 1.0
    return numer / denom


def many_to_one_map(table: ContingencyTable) -> dict:
    """Map each predicted cluster to its majority reference label.

    Ties break toward the reference label that appears first in the data.
    """
    if table.total < 1:
        raise ValueError("empty contingency table")
    mapping = {}
    for i, key in enumerate(table.row_keys):
        mapping[key] = table.col_keys[int(np.argmax(table.counts[i]))]
    return mapping


def precision_recall_f1(pair: LabelPair) -> tuple[float, float, float]:
    """Macro precision/recall/F1 over reference labels covered by the alignment.

    For a covered label r, precision is the fraction of examples in clusters
    mapped to r that truly carry r, and recall is the fraction of r's examples
    that land in those clusters.  Labels no cluster maps to are excluded from
    both averages.
    """
    table = contingency(pair)
    mapping = many_to_one_map(table)
    label_col = {key: j for j, key in enumerate(table.col_keys)}
    mapped_rows: dict = {}
    for row_idx, key in enumerate(table.row_keys):
        mapped_rows.setdefault(mapping[key], []).append(row_idx)

    precisions, recalls = [], []
    for label in table.col_keys:
        rows = mapped_rows.get(label)
        if not rows:
            continue
        j = label_col[label]
        hit = int(table.counts[rows, j].sum())
        predicted = int(table.row_sums[rows].sum())
        truth = int(table.col_sums[j])
        precisions.append(hit / predicted)
        recalls.append(hit / truth)

    precision = float(np.mean(precisions)) if precisions else 0.0
    recall = float(np.mean(recalls)) if recalls else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f1


def example_coverage(pair: LabelPair) -> float:
    """Fraction of examples whose reference label receives at least one cluster."""
    table = contingency(pair)
    mapping = many_to_one_map(table)
    covered = set(mapping.values())
    label_col = {key: j for j, key in enumerate(table.col_keys)}
    covered_examples = sum(int(table.col_sums[label_col[r]]) for r in covered)
    return covered_examples / table.total


def hungarian_accuracy(pair: LabelPair) -> float:
    """Accuracy under the best one-to-one cluster-to-label matching.

    Solved exactly as a rectangular assignment; unmatched clusters and labels
    contribute nothing.
    """
    table = contingency(pair)
    rows, cols = linear_sum_assignment(table.counts, maximize=True)
    return float(table.counts[rows, cols].sum()) / table.total


def evaluate(pair: LabelPair) -> MetricReport:
    """Assemble the full metric suite for one predicted/reference pair."""
    precision, recall, f1 = precision_recall_f1(pair)
    return MetricReport(
        nmi=nmi(pair),
        ari=ari(pair),
        acc=hungarian_accuracy(pair),
        precision=precision,
        recall=recall,
        f1=f1,
        example_coverage=example_coverage(pair),
        k_predicted=len(set(pair.predicted)),
        k_reference=len(set(pair.reference)),
    )


def resolve_noise(assignments: Sequence[int]) -> list[int]:
    """Replace each noise label (-1) with a fresh singleton cluster id.

    Keeps the metric domain total for density-based algorithms: every example
    is scored, with noise points counting as their own clusters.
    """
    labels = list(assignments)
    next_id = max((l for l in labels if l != -1), default=-1) + 1
    for i, label in enumerate(labels):
        if label == -1:
            labels[i] = next_id
            next_id += 1
    return labels
