"""Synthetic labeled corpora with planted patterns, plus recovery scoring.

The generator assigns labels first (an exact floor(imbalance * n) plus
group), samples Zipf-distributed background tokens per instance, stamps
each planted pattern onto fixed-size row samples of both groups (choosing
one member per group clause uniformly), and finally deletes each planted
occurrence independently with the destructive-noise probability. Planted
tokens come from the rare half of the vocabulary so the background does
not swamp the signal. Everything is a pure function of the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from .corpus import LabeledTransactionSet, parse_corpus
from .embeddings import EmbeddingTable
from .errors import SynthError
from .patterns import Pattern

_EMBEDDING_DIM = 48


@dataclass(frozen=True, slots=True)
class SynthSpec:
    n: int
    m: int
    num_patterns: int
    pattern_len: int = 3
    group_size: int = 1
    imbalance: float = 0.1
    target_rate: float = 0.05
    leak_rate: float = 0.002
    zipf_exponent: float = 1.1
    background_density: float = 8.0
    destructive_noise: float = 0.05
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2 or self.m < 1:
            raise SynthError("need n >= 2 and m >= 1")
        if self.num_patterns < 0:
            raise SynthError("num_patterns must be >= 0")
        if self.num_patterns and not 2 <= self.pattern_len <= 4:
            raise SynthError("pattern_len must be in 2..4")
        if self.group_size < 1:
            raise SynthError("group_size must be >= 1")
        if not 0.0 < self.imbalance < 1.0:
            raise SynthError("imbalance must be in (0, 1)")
        if self.num_patterns and not self.leak_rate < self.target_rate <= 1.0:
            raise SynthError("need leak_rate < target_rate <= 1")
        if not 0.0 <= self.destructive_noise <= 1.0:
            raise SynthError("destructive_noise must be in [0, 1]")


@dataclass(frozen=True, slots=True)
class PlantedPattern:
    """Ground-truth pattern as clause tuples of token strings."""

    clauses: tuple[tuple[str, ...], ...]
    target: str
    support_plus: int
    support_minus: int

    def flat_tokens(self) -> frozenset[str]:
        return frozenset(t for clause in self.clauses for t in clause)

    def clause_sets(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(clause) for clause in self.clauses)

    def render(self) -> str:
        items = []
        for clause in self.clauses:
            if len(clause) > 1:
                items.append(f"XOR({', '.join(sorted(clause))})")
            else:
                items.append(clause[0])
        if len(items) == 1:
            return items[0]
        return f"AND({', '.join(items)})"


@dataclass(frozen=True, slots=True)
class PlantedTruth:
    patterns: tuple[PlantedPattern, ...]

    def flat_sets(self) -> list[frozenset[str]]:
        return [p.flat_tokens() for p in self.patterns]


def _planted_clause_sizes(spec: SynthSpec) -> list[int]:
    # With group_size > 1 the final clause of each planted pattern is an
    # exclusive group of that size; the preceding clauses are singletons.
    sizes = [1] * spec.pattern_len
    if spec.group_size > 1:
        sizes[-1] = spec.group_size
    return sizes


def generate(
    spec: SynthSpec,
) -> tuple[LabeledTransactionSet, PlantedTruth, EmbeddingTable]:
    """Build (database, planted truth, synthetic embeddings) for the spec.

    The embeddings place members of one planted group near each other
    (mutual cosine well above 0.9) and give every other token an
    independent random direction, so group recovery is testable without
    external vector files.
    """
    if spec.m < spec.num_patterns * spec.pattern_len * spec.group_size + 10:
        raise SynthError("vocabulary too small")
    rng = np.random.default_rng(spec.seed)
    tokens = [f"t{j:05d}" for j in range(spec.m)]

    clause_sizes = _planted_clause_sizes(spec)
    per_pattern = sum(clause_sizes)
    rare_ids = np.arange(spec.m // 2, spec.m)
    total_needed = spec.num_patterns * per_pattern
    if total_needed > len(rare_ids):
        raise SynthError("vocabulary too small")
    planted_ids = rng.choice(rare_ids, size=total_needed, replace=False)

    planted_clauses: list[list[tuple[str, ...]]] = []
    cursor = 0
    for _ in range(spec.num_patterns):
        clauses = []
        for size in clause_sizes:
            ids = sorted(int(j) for j in planted_ids[cursor : cursor + size])
            clauses.append(tuple(tokens[j] for j in ids))
            cursor += size
        planted_clauses.append(clauses)

    n_plus = int(spec.imbalance * spec.n)
    labels = [1] * n_plus + [0] * (spec.n - n_plus)

    ranks = np.arange(1, spec.m + 1, dtype=np.float64)
    probs = ranks ** -spec.zipf_exponent
    probs /= probs.sum()
    counts = rng.poisson(spec.background_density, spec.n)
    draws = rng.choice(spec.m, size=int(counts.sum()), p=probs)
    instances: list[set[str]] = []
    offset = 0
    for count in counts:
        instances.append({tokens[int(j)] for j in draws[offset : offset + count]})
        offset += count

    n_minus = spec.n - n_plus
    for clauses in planted_clauses:
        stamp_plus = rng.choice(
            n_plus, size=int(spec.target_rate * n_plus), replace=False
        ) if n_plus else np.zeros(0, dtype=int)
        stamp_minus = n_plus + rng.choice(
            n_minus, size=int(spec.leak_rate * n_minus), replace=False
        ) if n_minus else np.zeros(0, dtype=int)
        for row in [*stamp_plus.tolist(), *stamp_minus.tolist()]:
            for clause in clauses:
                token = clause[0] if len(clause) == 1 else clause[
                    int(rng.integers(len(clause)))
                ]
                if spec.destructive_noise and rng.random() < spec.destructive_noise:
                    continue
                instances[int(row)].add(token)

    ordered = [sorted(inst) for inst in instances]
    db = parse_corpus(zip(ordered, labels))

    planted = []
    for clauses in planted_clauses:
        sup_plus = sup_minus = 0
        for i, inst in enumerate(instances):
            if all(any(t in inst for t in clause) for clause in clauses):
                if labels[i] == 1:
                    sup_plus += 1
                else:
                    sup_minus += 1
        planted.append(
            PlantedPattern(tuple(clauses), "+", sup_plus, sup_minus)
        )
    truth = PlantedTruth(tuple(planted))

    matrix = rng.standard_normal((spec.m, _EMBEDDING_DIM))
    matrix /= np.linalg.norm(matrix, axis=1)[:, None]
    for clauses in planted_clauses:
        for clause in clauses:
            if len(clause) == 1:
                continue
            base = rng.standard_normal(_EMBEDDING_DIM)
            base /= np.linalg.norm(base)
            for token in clause:
                jitter = rng.standard_normal(_EMBEDDING_DIM)
                jitter -= (jitter @ base) * base
                jitter *= 0.15 / np.linalg.norm(jitter)
                matrix[tokens.index(token)] = base + jitter
    table = EmbeddingTable(tokens, matrix)
    return db, truth, table


def _jaccard(a: frozenset, b: frozenset) -> float:
    if not a and not b:
        return 1.0
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def soft_f1(
    found: Sequence[Iterable[Hashable]], planted: Sequence[Iterable[Hashable]]
) -> tuple[float, float, float]:
    """Jaccard-matched precision/recall/F1 between two pattern collections,
    each pattern given as its flattened token set. Both sides empty scores
    (1, 1, 1); one side empty scores (0, 0, 0)."""
    found_sets = [frozenset(x) for x in found]
    planted_sets = [frozenset(x) for x in planted]
    if not found_sets and not planted_sets:
        return 1.0, 1.0, 1.0
    if not found_sets or not planted_sets:
        return 0.0, 0.0, 0.0
    precision = math.fsum(
        max(_jaccard(f, p) for p in planted_sets) for f in found_sets
    ) / len(found_sets)
    recall = math.fsum(
        max(_jaccard(p, f) for f in found_sets) for p in planted_sets
    ) / len(planted_sets)
    if precision + recall == 0.0:
        return 0.0, 0.0, 0.0
    return precision, recall, 2.0 * precision * recall / (precision + recall)


def baseline_topk(db: LabeledTransactionSet, k: int) -> list[Pattern]:
    """Naive reference: top-k single tokens by absolute difference of
    relative group frequencies, deterministic ordering."""
    n_plus, n_minus = db.n_plus, db.n_minus
    gp = db.group_plus.mask
    scored = []
    for j, column in enumerate(db.columns):
        u_plus = (column.mask & gp).bit_count()
        u_minus = column.count() - u_plus
        rel_plus = u_plus / n_plus if n_plus else 0.0
        rel_minus = u_minus / n_minus if n_minus else 0.0
        scored.append((-abs(rel_plus - rel_minus), db.vocab.token_of(j), j))
    scored.sort()
    return [Pattern.singleton(j) for _, _, j in scored[: max(k, 0)]]
