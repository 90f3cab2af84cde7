"""Embedding file format and id-aligned matrix operations.

The on-disk format is UTF-8 text: the first line is a JSON header
``{"dim": d, "count": n}``, followed by one ``{"id": str, "vector": [...]}``
object per line.  Coordinates are written as shortest round-trip decimal
text, so save followed by load is bit-exact for 64-bit floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import FormatError, ValidationError

_UNIT_NORM_TOL = 1e-9


@dataclass(frozen=True)
class EmbeddingMatrix:
    """An n-by-d matrix of float64 rows bound to utterance ids."""

    ids: tuple[str, ...]
    data: np.ndarray
    normalized: bool = False

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def __len__(self) -> int:
        return self.data.shape[0]

    def validate(self) -> None:
        if self.data.ndim != 2:
            raise ValidationError("embedding data must be a 2-D matrix")
        n, d = self.data.shape
        if d < 1:
            raise ValidationError("embedding dimension must be >= 1")
        if len(self.ids) != n:
            raise ValidationError(f"ids length {len(self.ids)} != row count {n}")
        if len(set(self.ids)) != n:
            raise ValidationError("duplicate utterance ids in embedding matrix")
        if not np.all(np.isfinite(self.data)):
            raise ValidationError("embedding matrix contains non-finite values")
        if self.normalized and n:
            norms = np.linalg.norm(self.data, axis=1)
            if np.any(np.abs(norms - 1.0) > _UNIT_NORM_TOL):
                raise ValidationError("normalized matrix has rows with non-unit norm")


def load_embeddings(path) -> EmbeddingMatrix:
    """Load an embedding file; rows come back in file order, unnormalized flag."""
    with open(path, encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise FormatError("missing header line", path=path, line=1)
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid header JSON ({exc.msg})", path=path, line=1) from exc
        dim = header.get("dim") if isinstance(header, dict) else None
        count = header.get("count") if isinstance(header, dict) else None
        if not isinstance(dim, int) or dim < 1 or not isinstance(count, int) or count < 0:
            raise FormatError("header must carry integer dim >= 1 and count >= 0", path=path, line=1)

        ids: list[str] = []
        seen: set[str] = set()
        rows = np.empty((count, dim), dtype=np.float64)
        n = 0
        for line_no, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON ({exc.msg})", path=path, line=line_no) from exc
            uid = obj.get("id") if isinstance(obj, dict) else None
            vec = obj.get("vector") if isinstance(obj, dict) else None
            if not isinstance(uid, str) or not uid:
                raise FormatError("missing or invalid id", path=path, line=line_no)
            if not isinstance(vec, list) or len(vec) != dim:
                got = len(vec) if isinstance(vec, list) else "none"
                raise FormatError(
                    f"vector has {got} coordinates, expected {dim}", path=path, line=line_no
                )
            if uid in seen:
                raise ValidationError(f"duplicate id {uid!r} in {path}")
            row = np.asarray(vec, dtype=np.float64)
            if not np.all(np.isfinite(row)):
                raise FormatError("vector contains non-finite value", path=path, line=line_no)
            if n >= count:
                raise FormatError(f"more data lines than header count {count}", path=path, line=line_no)
            seen.add(uid)
            ids.append(uid)
            rows[n] = row
            n += 1
        if n != count:
            raise FormatError(f"header count {count} but found {n} data lines", path=path)
    return EmbeddingMatrix(ids=tuple(ids), data=rows, normalized=False)


def save_embeddings(matrix: EmbeddingMatrix, path) -> None:
    """Write the matrix in the documented format; round-trips bit-exactly."""
    matrix.validate()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"dim": matrix.dim, "count": len(matrix)}) + "\n")
        for uid, row in zip(matrix.ids, matrix.data):
            fh.write(json.dumps({"id": uid, "vector": row.tolist()}) + "\n")


def l2_normalize(matrix: EmbeddingMatrix) -> EmbeddingMatrix:
    """Scale every row to unit Euclidean norm.  Idempotent; ids preserved."""
    norms = np.linalg.norm(matrix.data, axis=1)
    zero = np.where(norms == 0)[0]
    if zero.size:
        raise ValidationError(f"cannot normalize zero-norm row: id={matrix.ids[zero[0]]!r}")
    data = matrix.data / norms[:, None]
    return replace(matrix, data=data, normalized=True)


def align(matrix: EmbeddingMatrix, records: Sequence) -> EmbeddingMatrix:
    """Reorder and restrict rows to the given records.

    ``records`` may be UtteranceRecords or bare utterance-id strings.  Raises
    ValidationError listing any ids absent from the matrix.
    """
    wanted = [getattr(r, "utterance_id", r) for r in records]
    index = {uid: i for i, uid in enumerate(matrix.ids)}
    missing = [uid for uid in wanted if uid not in index]
    if missing:
        shown = ", ".join(repr(u) for u in missing[:10])
        more = f" (+{len(missing) - 10} more)" if len(missing) > 10 else ""
        raise ValidationError(f"embedding matrix is missing ids: {shown}{more}")
    order = [index[uid] for uid in wanted]
    return replace(matrix, ids=tuple(wanted), data=matrix.data[order].copy())
