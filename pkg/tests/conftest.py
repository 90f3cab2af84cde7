from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def transcripts_path() -> Path:
    return FIXTURES / "transcripts.jsonl"


@pytest.fixture
def embeddings_path() -> Path:
    return FIXTURES / "embeddings.jsonl"


@pytest.fixture
def predicted_acts_path() -> Path:
    return FIXTURES / "predicted_acts.jsonl"


def make_blobs(centers, n_per=20, sigma=0.3, seed=0):
    """Gaussian blobs around the given centers, with generating labels."""
    rng = np.random.default_rng(seed)
    points, labels = [], []
    for idx, center in enumerate(centers):
        points.append(rng.normal(np.asarray(center, dtype=float), sigma, size=(n_per, len(center))))
        labels += [idx] * n_per
    return np.vstack(points), np.array(labels)


@pytest.fixture
def three_blobs():
    return make_blobs([(0, 0), (10, 0), (0, 10)], n_per=20, sigma=0.3, seed=42)


@pytest.fixture
def two_blobs():
    return make_blobs([(0, 0), (10, 10)], n_per=20, sigma=0.3, seed=7)
