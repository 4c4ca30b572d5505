"""Labeled transaction database over tokenized instances.

Instances are token lists with a binary label (1 = the "plus" group, by
convention the misclassified side). Tokens are kept verbatim and
case-sensitive; duplicates within one instance collapse to a single
presence bit. The database is immutable after construction and safe to
share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CorpusError


class Bitmap:
    """Dense set of instance indices in [0, n), backed by one big int.

    The integer mask keeps bitwise ops (intersection, union, difference,
    popcount) at C speed, which is what makes support counting cheap.
    """

    __slots__ = ("mask", "n")

    def __init__(self, mask: int, n: int):
        self.mask = mask
        self.n = n

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "Bitmap":
        mask = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"index {i} out of range for n={n}")
            mask |= 1 << i
        return cls(mask, n)

    @classmethod
    def empty(cls, n: int) -> "Bitmap":
        return cls(0, n)

    def count(self) -> int:
        return self.mask.bit_count()

    def indices(self) -> list[int]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __and__(self, other: "Bitmap") -> "Bitmap":
        return Bitmap(self.mask & other.mask, self.n)

    def __or__(self, other: "Bitmap") -> "Bitmap":
        return Bitmap(self.mask | other.mask, self.n)

    def __sub__(self, other: "Bitmap") -> "Bitmap":
        return Bitmap(self.mask & ~other.mask, self.n)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Bitmap) and self.mask == other.mask and self.n == other.n
        )

    def __hash__(self) -> int:
        return hash((self.mask, self.n))

    def __len__(self) -> int:
        return self.count()

    def __repr__(self) -> str:
        return f"Bitmap({self.indices()!r}, n={self.n})"


class Vocabulary:
    """Token string <-> dense id map, ids assigned in first-occurrence order."""

    __slots__ = ("_tokens", "_index")

    def __init__(self) -> None:
        self._tokens: list[str] = []
        self._index: dict[str, int] = {}

    def add(self, token: str) -> int:
        idx = self._index.get(token)
        if idx is None:
            idx = len(self._tokens)
            self._tokens.append(token)
            self._index[token] = idx
        return idx

    def id_of(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise CorpusError(f"unknown token: {token!r}") from None

    def token_of(self, token_id: int) -> str:
        if not 0 <= token_id < len(self._tokens):
            raise CorpusError(f"unknown token id: {token_id}")
        return self._tokens[token_id]

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def __len__(self) -> int:
        return len(self._tokens)

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self._tokens)


@dataclass(frozen=True, slots=True)
class LabeledTransactionSet:
    """Immutable binarized corpus: per-token presence bitmaps plus labels.

    n_plus + n_minus = n; group_plus and group_minus partition the
    instances. columns[j] holds the presence bitmap of token id j.
    """

    n: int
    vocab: Vocabulary
    columns: tuple[Bitmap, ...]
    labels: tuple[int, ...]
    group_plus: Bitmap
    group_minus: Bitmap

    @property
    def m(self) -> int:
        return len(self.columns)

    @property
    def n_plus(self) -> int:
        return self.group_plus.count()

    @property
    def n_minus(self) -> int:
        return self.group_minus.count()

    def column(self, token_id: int) -> Bitmap:
        """Presence bitmap of a token id; raises on out-of-range ids."""
        if not 0 <= token_id < self.m:
            raise CorpusError(f"unknown token id: {token_id}")
        return self.columns[token_id]

    def instance_tokens(self, i: int) -> set[int]:
        """Token-id set of instance i (reconstructed from the columns)."""
        if not 0 <= i < self.n:
            raise CorpusError(f"instance index out of range: {i}")
        return {j for j, col in enumerate(self.columns) if i in col}


def parse_corpus(
    instances: Iterable[tuple[Sequence[str], int]],
) -> LabeledTransactionSet:
    """Build the transaction database from (token list, label) pairs.

    Labels must be 0 or 1 (1 = plus group). Empty token lists are allowed
    and contribute an all-zero row. Raises CorpusError on an empty stream
    or a bad label (message carries the 1-based line number).
    """
    vocab = Vocabulary()
    col_masks: list[int] = []
    labels: list[int] = []
    plus_mask = 0
    for line_no, (tokens, label) in enumerate(instances, start=1):
        if label not in (0, 1):
            raise CorpusError(f"bad label {label!r} (line {line_no})")
        i = line_no - 1
        bit = 1 << i
        for token in tokens:
            j = vocab.add(token)
            if j == len(col_masks):
                col_masks.append(0)
            col_masks[j] |= bit
        labels.append(label)
        if label == 1:
            plus_mask |= bit
    n = len(labels)
    if n == 0:
        raise CorpusError("empty corpus")
    full = (1 << n) - 1
    return LabeledTransactionSet(
        n=n,
        vocab=vocab,
        columns=tuple(Bitmap(mask, n) for mask in col_masks),
        labels=tuple(labels),
        group_plus=Bitmap(plus_mask, n),
        group_minus=Bitmap(full ^ plus_mask, n),
    )


def _strip_trailing_blank(lines: list[str]) -> list[str]:
    if lines and lines[-1] == "":
        return lines[:-1]
    return lines


def iter_paired_files(
    corpus_path: str, labels_path: str
) -> Iterator[tuple[list[str], int]]:
    """Paired-file input: one space-separated instance per corpus line,
    one 0/1 per labels line, equal line counts, UTF-8, LF-separated."""
    with open(corpus_path, encoding="utf-8") as fh:
        token_lines = _strip_trailing_blank(fh.read().split("\n"))
    with open(labels_path, encoding="utf-8") as fh:
        label_lines = _strip_trailing_blank(fh.read().split("\n"))
    if len(token_lines) != len(label_lines):
        raise CorpusError(
            f"line count mismatch: {len(token_lines)} instances "
            f"vs {len(label_lines)} labels"
        )
    for line_no, (text, label_text) in enumerate(
        zip(token_lines, label_lines), start=1
    ):
        tokens = text.split(" ") if text else []
        try:
            label = int(label_text.strip())
        except ValueError:
            raise CorpusError(
                f"bad label {label_text.strip()!r} (line {line_no})"
            ) from None
        yield tokens, label


def iter_jsonl(path: str) -> Iterator[tuple[list[str], int]]:
    """JSONL input: one {"tokens": [...], "label": 0|1} object per line."""
    with open(path, encoding="utf-8") as fh:
        lines = _strip_trailing_blank(fh.read().split("\n"))
    for line_no, line in enumerate(lines, start=1):
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"bad JSON record (line {line_no}): {exc.msg}") from None
        if not isinstance(record, dict) or "tokens" not in record or "label" not in record:
            raise CorpusError(
                f"record needs 'tokens' and 'label' fields (line {line_no})"
            )
        tokens = record["tokens"]
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise CorpusError(f"'tokens' must be a list of strings (line {line_no})")
        yield tokens, record["label"]


def write_paired_files(
    instances: Sequence[Sequence[str]],
    labels: Sequence[int],
    corpus_path: str,
    labels_path: str,
) -> None:
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for tokens in instances:
            fh.write(" ".join(tokens) + "\n")
    with open(labels_path, "w", encoding="utf-8") as fh:
        for label in labels:
            fh.write(f"{label}\n")
