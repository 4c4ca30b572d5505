"""Pre-trained word vectors with exact cosine nearest-neighbor queries.

The text format is one entry per line — token followed by its vector
components, whitespace-separated — with an optional "count dim" integer
header line that is auto-detected and skipped. This is byte-compatible
with the common published vector releases.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import EmbeddingError


def cosine(a: Sequence[float], b: Sequence[float]) -> float:
    """Cosine similarity clamped to [-1, 1]; zero vectors score 0."""
    va = np.asarray(a, dtype=np.float64)
    vb = np.asarray(b, dtype=np.float64)
    if va.shape != vb.shape:
        raise EmbeddingError(f"vector length mismatch: {va.shape} vs {vb.shape}")
    norm = float(np.linalg.norm(va)) * float(np.linalg.norm(vb))
    if norm == 0.0:
        return 0.0
    return float(min(1.0, max(-1.0, float(va @ vb) / norm)))


class EmbeddingTable:
    """Immutable token -> vector map with brute-force exact k-NN.

    Queries are O(V * dim) with a per-token cache of the full ranking;
    desk-scale vocabularies do not need an approximate index.
    """

    def __init__(self, tokens: Sequence[str], matrix: np.ndarray, duplicates: int = 0):
        matrix = np.asarray(matrix, dtype=np.float64)
        if len(tokens) != matrix.shape[0]:
            raise EmbeddingError(
                f"{len(tokens)} tokens but {matrix.shape[0]} vectors"
            )
        self.tokens = tuple(tokens)
        self.matrix = matrix
        self.dim = int(matrix.shape[1]) if len(tokens) else 0
        self.duplicates = duplicates
        self._index = {tok: i for i, tok in enumerate(self.tokens)}
        norms = np.linalg.norm(matrix, axis=1) if len(tokens) else np.zeros(0)
        safe = np.where(norms == 0.0, 1.0, norms)
        self._unit = matrix / safe[:, None] if len(tokens) else matrix
        self._neighbor_cache: dict[str, list[tuple[str, float]]] = {}

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def vector(self, token: str) -> np.ndarray:
        try:
            return self.matrix[self._index[token]]
        except KeyError:
            raise EmbeddingError(f"token not in table: {token!r}") from None

    def neighbors(
        self, token: str, k: int, min_cosine: float = 0.0
    ) -> list[tuple[str, float]]:
        """Up to k nearest tokens by cosine, similarity >= min_cosine,
        sorted by similarity descending then token ascending. Unknown
        query tokens yield an empty list."""
        if k < 1:
            raise EmbeddingError(f"k must be >= 1, got {k}")
        idx = self._index.get(token)
        if idx is None:
            return []
        ranked = self._neighbor_cache.get(token)
        if ranked is None:
            sims = self._unit @ self._unit[idx]
            np.clip(sims, -1.0, 1.0, out=sims)
            ranked = sorted(
                (
                    (self.tokens[j], float(sims[j]))
                    for j in range(len(self.tokens))
                    if j != idx
                ),
                key=lambda pair: (-pair[1], pair[0]),
            )
            self._neighbor_cache[token] = ranked
        out = []
        for tok, sim in ranked:
            if sim < min_cosine:
                continue
            out.append((tok, sim))
            if len(out) == k:
                break
        return out


def _looks_like_header(parts: list[str]) -> bool:
    if len(parts) != 2:
        return False
    try:
        int(parts[0]), int(parts[1])
    except ValueError:
        return False
    return True


def load_embeddings(lines: Iterable[str]) -> EmbeddingTable:
    """Parse the text vector format; duplicate tokens keep the last vector
    and are counted on the returned table."""
    tokens: list[str] = []
    rows: list[list[float]] = []
    index: dict[str, int] = {}
    duplicates = 0
    dim: int | None = None
    first_entry = True
    for line_no, raw in enumerate(lines, start=1):
        parts = raw.split()
        if not parts:
            continue
        if first_entry:
            first_entry = False
            if _looks_like_header(parts):
                continue
        if dim is not None and len(parts) - 1 != dim:
            raise EmbeddingError(
                f"expected {dim} vector components, got {len(parts) - 1} "
                f"(line {line_no})"
            )
        token = parts[0]
        try:
            values = [float(x) for x in parts[1:]]
        except ValueError as exc:
            raise EmbeddingError(f"non-numeric field (line {line_no}): {exc}") from None
        if dim is None:
            if not values:
                raise EmbeddingError(f"entry has no vector components (line {line_no})")
            dim = len(values)
        if token in index:
            rows[index[token]] = values
            duplicates += 1
        else:
            index[token] = len(tokens)
            tokens.append(token)
            rows.append(values)
    matrix = np.array(rows, dtype=np.float64) if rows else np.zeros((0, 0))
    return EmbeddingTable(tokens, matrix, duplicates=duplicates)


def load_embeddings_file(path: str) -> EmbeddingTable:
    with open(path, encoding="utf-8") as fh:
        return load_embeddings(fh)


def write_embeddings_file(table: EmbeddingTable, path: str) -> None:
    """Write the text format with a "count dim" header."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(table)} {table.dim}\n")
        for token, row in zip(table.tokens, table.matrix):
            components = " ".join(repr(float(x)) for x in row)
            fh.write(f"{token} {components}\n")
