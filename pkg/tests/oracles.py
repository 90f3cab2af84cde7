"""Independent brute-force reference implementations used to check the library.

Everything here is deliberately written against the definitions, not against
the library code paths: entropies by direct p*log(p) sums over dict counts,
ARI by O(n^2) pair counting, accuracy by exhaustive injective matching, and
k-means optima by enumerating every partition.
"""

from collections import Counter
from itertools import permutations, product
from math import log

import numpy as np


def nmi_oracle(pred, ref) -> float:
    """NMI by direct entropy summation over dictionary counts."""
    n = len(pred)
    px = Counter(pred)
    py = Counter(ref)
    pxy = Counter(zip(pred, ref))

    def entropy(counter):
        return -sum((c / n) * log(c / n) for c in counter.values())

    hx, hy = entropy(px), entropy(py)
    if min(hx, hy) == 0.0:
        return 1.0 if hx == hy else 0.0
    info = sum(
        (c / n) * log((c / n) / ((px[x] / n) * (py[y] / n))) for (x, y), c in pxy.items()
    )
    return info / min(hx, hy)


def ari_oracle(pred, ref) -> float:
    """ARI from explicit pair counting over all O(n^2) index pairs."""
    n = len(pred)
    together_both = together_pred = together_ref = 0
    for i in range(n):
        for j in range(i + 1, n):
            same_p = pred[i] == pred[j]
            same_r = ref[i] == ref[j]
            together_pred += same_p
            together_ref += same_r
            together_both += same_p and same_r
    total = n * (n - 1) // 2
    numer = 2 * (together_both * total - together_pred * together_ref)
    denom = total * (together_pred + together_ref) - 2 * together_pred * together_ref
    if denom == 0:
        return 1.0
    return numer / denom


def accuracy_oracle(pred, ref) -> float:
    """Best one-to-one accuracy by exhaustive search over injective matchings."""
    clusters = sorted(set(pred), key=str)
    labels = sorted(set(ref), key=str)
    counts = {
        (c, l): sum(1 for p, r in zip(pred, ref) if p == c and r == l)
        for c, l in product(clusters, labels)
    }
    if len(clusters) <= len(labels):
        best = max(
            sum(counts[c, l] for c, l in zip(clusters, choice))
            for choice in permutations(labels, len(clusters))
        )
    else:
        best = max(
            sum(counts[c, l] for c, l in zip(choice, labels))
            for choice in permutations(clusters, len(labels))
        )
    return best / len(pred)


def many_to_one_micro_accuracy(pred, ref) -> float:
    """Micro accuracy when every cluster maps to its majority label."""
    by_cluster = {}
    for p, r in zip(pred, ref):
        by_cluster.setdefault(p, Counter())[r] += 1
    return sum(max(counter.values()) for counter in by_cluster.values()) / len(pred)


def wcss(points: np.ndarray) -> float:
    center = points.mean(axis=0)
    return float(((points - center) ** 2).sum())


def best_two_partition_cost(X: np.ndarray) -> float:
    """Global 2-means optimum by enumerating all non-trivial bipartitions."""
    n = len(X)
    best = np.inf
    for bits in range(1, 2 ** (n - 1)):
        mask = np.array([(bits >> i) & 1 for i in range(n)], dtype=bool)
        cost = wcss(X[mask]) + wcss(X[~mask])
        best = min(best, cost)
    return best


def pairwise_double_sum(X: np.ndarray) -> float:
    """Sum over ordered pairs (i, j) of the squared distance between rows."""
    total = 0.0
    for i in range(len(X)):
        for j in range(len(X)):
            diff = X[i] - X[j]
            total += float(diff @ diff)
    return total


def silhouette_oracle(X: np.ndarray, labels) -> float:
    """Naive per-point silhouette with explicit loops."""
    labels = np.asarray(labels)
    keep = labels >= 0
    X, labels = X[keep], labels[keep]
    clusters = sorted(set(labels.tolist()))
    scores = []
    for i in range(len(X)):
        own = labels[i]
        same = [j for j in range(len(X)) if labels[j] == own and j != i]
        if not same:
            scores.append(0.0)
            continue
        a = np.mean([np.linalg.norm(X[i] - X[j]) for j in same])
        b = min(
            np.mean([np.linalg.norm(X[i] - X[j]) for j in range(len(X)) if labels[j] == other])
            for other in clusters
            if other != own
        )
        scores.append(0.0 if max(a, b) == 0 else (b - a) / max(a, b))
    return float(np.mean(scores))


def random_label_pair(rng, n_max=30, k_max=6):
    """A random predicted/reference pair for oracle comparisons."""
    n = int(rng.integers(2, n_max + 1))
    pred = rng.integers(0, int(rng.integers(1, k_max + 1)), size=n).tolist()
    ref = [f"L{v}" for v in rng.integers(0, int(rng.integers(1, k_max + 1)), size=n)]
    return pred, ref
