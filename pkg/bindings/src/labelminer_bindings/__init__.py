"""One-call scripting interface to the labelminer pattern engine.

Mines label-descriptive patterns from in-memory token lists:

    from labelminer_bindings import mine_tokens

    result = mine_tokens(instances, labels)
    for record in result:
        print(record["pattern"], record["gain_bits"])

This is a thin adapter: all scoring lives in the engine, and the result
is content-identical to the report the `labelminer` CLI would produce on
the same data and configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from labelminer import SearchConfig, build_report, mine, parse_corpus, report_json
from labelminer.embeddings import load_embeddings_file
from labelminer.errors import CorpusError

__version__ = "0.1.0"

__all__ = ["BoundResult", "mine_tokens", "__version__"]


@dataclass(frozen=True)
class BoundResult:
    """Mining outcome as native structures.

    `patterns` holds one dict per mined pattern with the same fields as
    the CLI report records; `metadata` carries the run counters and the
    configuration echo. `to_json()` serializes the full report,
    byte-identical to the CLI's JSON output.
    """

    patterns: list[dict] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return report_json(
            {"schema": 1, "metadata": self.metadata, "patterns": self.patterns}
        )

    def __iter__(self) -> Iterator[dict]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __getitem__(self, index):
        return self.patterns[index]


def mine_tokens(
    instances: Sequence[Sequence[str]],
    labels: Sequence[int],
    embeddings_path: str | None = None,
    **options,
) -> BoundResult:
    """Mine patterns from token lists with a binary label per instance.

    Keyword options mirror the engine configuration (min_support,
    min_token_freq, beam, neighbors_k, min_cosine, epsilon_gain,
    max_rounds, mine_both_labels). Raises the same errors the CLI
    reports for malformed content.
    """
    if len(instances) != len(labels):
        raise CorpusError(
            f"line count mismatch: {len(instances)} instances "
            f"vs {len(labels)} labels"
        )
    config = SearchConfig(**options)
    db = parse_corpus(zip(instances, labels))
    embeddings = (
        load_embeddings_file(embeddings_path) if embeddings_path is not None else None
    )
    result = mine(db, config, embeddings)
    report = build_report(db, result, config)
    return BoundResult(patterns=report["patterns"], metadata=report["metadata"])
