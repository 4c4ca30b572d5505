"""Greedy best-gain mining loop.

Each round assembles candidates from three generators — singletons,
conjunction merges, embedding-guided group merges — scores them against
the frozen cover state, accepts the single best move whose gain clears
the epsilon threshold, then prunes entries whose removal now pays off.

Merges whose base is a pattern already in the model are scored and
applied as replacements (remove base, add merged). A pure addition would
pay the occurrence code twice for the shared support and stalls the
search at two-token patterns; replacing makes growing a pattern by one
clause a single move whose gain is its true effect on the total length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .corpus import LabeledTransactionSet
from .embeddings import EmbeddingTable
from .errors import LabelMinerError
from .mdl import CodeConstants, CoverState
from .patterns import Pattern, PatternEntry, render, support_bitmap

NeighborFn = Callable[[int], list[int]]


@dataclass(frozen=True, slots=True)
class SearchConfig:
    min_support: int = 5
    min_token_freq: int = 3
    beam: int = 500
    neighbors_k: int = 10
    min_cosine: float = 0.5
    epsilon_gain: float = 1e-6
    max_rounds: int = 1000
    mine_both_labels: bool = True

    def __post_init__(self) -> None:
        for name in ("min_support", "min_token_freq", "beam", "neighbors_k", "max_rounds"):
            if getattr(self, name) < 1:
                raise LabelMinerError(f"{name} must be >= 1")
        if not 0.0 <= self.min_cosine <= 1.0:
            raise LabelMinerError("min_cosine must be in [0, 1]")
        if self.epsilon_gain <= 0.0:
            raise LabelMinerError("epsilon_gain must be positive")


@dataclass(frozen=True, slots=True)
class MiningResult:
    entries: tuple[PatternEntry, ...]
    total_bits_start: float
    total_bits_end: float
    rounds: int
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class Candidate:
    """One scored move: add `pattern`, optionally removing a model entry."""

    pattern: Pattern
    target: str
    gain: float
    remove_index: int | None = None
    support: int = field(default=0, repr=False)

    def key(self) -> tuple:
        return (self.pattern, self.target, self.remove_index)


def _target_for(db: LabeledTransactionSet, support: int) -> tuple[str, bool]:
    """Label side where the pattern's relative support is higher; the
    second element reports an exact tie."""
    u_plus = (support & db.group_plus.mask).bit_count()
    u_minus = (support & db.group_minus.mask).bit_count()
    rel_plus = u_plus / db.n_plus if db.n_plus else 0.0
    rel_minus = u_minus / db.n_minus if db.n_minus else 0.0
    if rel_plus > rel_minus:
        return "+", False
    if rel_minus > rel_plus:
        return "-", False
    return "+", True


def _sort_key(db: LabeledTransactionSet) -> Callable[[Candidate], tuple]:
    vocab = db.vocab

    def key(c: Candidate) -> tuple:
        return (
            -c.gain,
            c.pattern.token_count(),
            render(c.pattern, vocab),
            c.target,
            c.remove_index if c.remove_index is not None else -1,
        )

    return key


def generate_singletons(
    state: CoverState, db: LabeledTransactionSet, config: SearchConfig
) -> list[Candidate]:
    """Positive-gain singleton candidates, targeted at the side where the
    token is relatively more frequent; top `beam` by gain."""
    model_patterns = {e.pattern for e in state.entries}
    out: list[Candidate] = []
    for j, column in enumerate(db.columns):
        if state.col_counts[j] < config.min_token_freq:
            continue
        pattern = Pattern.singleton(j)
        if pattern in model_patterns:
            continue
        support = column.mask
        target, tie = _target_for(db, support)
        if not config.mine_both_labels and target == "-":
            continue
        g = state.move_gain(pattern, support=support)
        if g <= config.epsilon_gain:
            continue
        out.append(Candidate(pattern, target, g, None, support))
        if tie and config.mine_both_labels:
            out.append(Candidate(pattern, "-", g, None, support))
    out.sort(key=_sort_key(db))
    return out[: config.beam]


def generate_conjunctions(
    state: CoverState,
    db: LabeledTransactionSet,
    singletons: Sequence[Candidate],
    config: SearchConfig,
) -> list[Candidate]:
    """Pairwise merges A & B: A is a model pattern (scored as replacement)
    or a top singleton, B a top singleton; token-disjoint, joint support
    at least min_support; top `beam` by gain."""
    b_list: list[Candidate] = []
    seen_b: set[Pattern] = set()
    for cand in singletons:
        if cand.pattern not in seen_b:
            seen_b.add(cand.pattern)
            b_list.append(cand)

    bases: list[tuple[Pattern, int, int | None, int]] = []
    for i, entry in enumerate(state.entries):
        bases.append((entry.pattern, state.support_mask(i), i, -1))
    for b_rank, cand in enumerate(b_list):
        bases.append((cand.pattern, cand.support, None, b_rank))

    model_patterns = {e.pattern for e in state.entries}
    seen: set[tuple] = set()
    out: list[Candidate] = []
    for base_pattern, base_support, remove_index, base_rank in bases:
        base_tokens = set(base_pattern.token_ids())
        for b_rank, b_cand in enumerate(b_list):
            if remove_index is None and b_rank <= base_rank:
                continue  # unordered singleton pairs: enumerate once
            b_token = b_cand.pattern.clauses[0].members[0]
            if b_token in base_tokens:
                continue
            support = base_support & db.columns[b_token].mask
            if support.bit_count() < config.min_support:
                continue
            merged = Pattern.of(
                [clause.members for clause in base_pattern.clauses] + [(b_token,)]
            )
            if merged in model_patterns:
                continue
            key = (merged, remove_index)
            if key in seen:
                continue
            seen.add(key)
            target, _ = _target_for(db, support)
            if not config.mine_both_labels and target == "-":
                continue
            g = state.move_gain(merged, remove_index=remove_index, support=support)
            if g <= config.epsilon_gain:
                continue
            out.append(Candidate(merged, target, g, remove_index, support))
    out.sort(key=_sort_key(db))
    return out[: config.beam]


def generate_group_merges(
    state: CoverState,
    db: LabeledTransactionSet,
    bases: Sequence[Candidate],
    neighbor_fn: NeighborFn | None,
    config: SearchConfig,
) -> list[Candidate]:
    """Widen one clause of a model pattern or scored candidate with an
    embedding neighbor of one of its members; top `beam` by gain."""
    if neighbor_fn is None:
        return []
    sources: list[tuple[Pattern, int | None]] = []
    for i, entry in enumerate(state.entries):
        sources.append((entry.pattern, i))
    for cand in bases:
        sources.append((cand.pattern, cand.remove_index))

    model_patterns = {e.pattern for e in state.entries}
    seen: set[tuple] = set()
    out: list[Candidate] = []
    for base_pattern, remove_index in sources:
        base_tokens = set(base_pattern.token_ids())
        for clause_idx, clause in enumerate(base_pattern.clauses):
            neighbor_ids: list[int] = []
            for member in clause.members:
                neighbor_ids.extend(neighbor_fn(member))
            for w in neighbor_ids:
                if w in base_tokens:
                    continue
                if state.col_counts[w] < config.min_token_freq:
                    continue
                widened_clauses = [c.members for c in base_pattern.clauses]
                widened_clauses[clause_idx] = tuple(
                    sorted(clause.members + (w,))
                )
                widened = Pattern.of(widened_clauses)
                if widened in model_patterns:
                    continue
                key = (widened, remove_index)
                if key in seen:
                    continue
                seen.add(key)
                support = support_bitmap(widened, db).mask
                target, _ = _target_for(db, support)
                if not config.mine_both_labels and target == "-":
                    continue
                g = state.move_gain(widened, remove_index=remove_index, support=support)
                if g <= config.epsilon_gain:
                    continue
                out.append(Candidate(widened, target, g, remove_index, support))
    out.sort(key=_sort_key(db))
    return out[: config.beam]


def prune(state: CoverState, db: LabeledTransactionSet) -> None:
    """Repeatedly remove the entry whose removal most decreases the total
    length, while any removal decreases it."""
    vocab = db.vocab
    while state.entries:
        best_index = None
        best_key: tuple | None = None
        for i, entry in enumerate(state.entries):
            g = state.removal_gain(i)
            if g <= 0.0:
                continue
            key = (-g, render(entry.pattern, vocab), entry.target)
            if best_key is None or key < best_key:
                best_key = key
                best_index = i
        if best_index is None:
            break
        state.remove(best_index)


def _neighbor_lookup(
    db: LabeledTransactionSet, table: EmbeddingTable, config: SearchConfig
) -> NeighborFn:
    vocab = db.vocab
    cache: dict[int, list[int]] = {}

    def lookup(token_id: int) -> list[int]:
        ids = cache.get(token_id)
        if ids is None:
            ids = []
            for tok, _sim in table.neighbors(
                vocab.token_of(token_id), config.neighbors_k, config.min_cosine
            ):
                if tok in vocab:
                    ids.append(vocab.id_of(tok))
            cache[token_id] = ids
        return ids

    return lookup


def mine(
    db: LabeledTransactionSet,
    config: SearchConfig = SearchConfig(),
    embeddings: EmbeddingTable | None = None,
) -> MiningResult:
    """Mine a non-redundant pattern model for the labeled database.

    Deterministic for fixed inputs and config: ties are broken by total
    token count, then the canonical rendering. Degenerate inputs (one
    empty label group) yield an empty result with a warning.
    """
    state = CoverState(db, CodeConstants(epsilon_gain=config.epsilon_gain))
    start_bits = state.total_bits
    if db.n_plus == 0 or db.n_minus == 0:
        return MiningResult(
            (), start_bits, start_bits, 0, ("one label group is empty; nothing to mine",)
        )
    neighbor_fn = (
        _neighbor_lookup(db, embeddings, config) if embeddings is not None else None
    )
    sort_key = _sort_key(db)
    rounds = 0
    while rounds < config.max_rounds:
        singles = generate_singletons(state, db, config)
        conjunctions = generate_conjunctions(state, db, singles, config)
        merges = generate_group_merges(
            state, db, list(singles) + list(conjunctions), neighbor_fn, config
        )
        pool: dict[tuple, Candidate] = {}
        for cand in [*singles, *conjunctions, *merges]:
            pool.setdefault(cand.key(), cand)
        if not pool:
            break
        best = min(pool.values(), key=sort_key)
        if best.gain <= config.epsilon_gain:
            break
        rounds += 1
        if best.remove_index is not None:
            state.remove(best.remove_index)
        state.add(best.pattern, best.target, gain_bits=best.gain)
        prune(state, db)

    vocab = db.vocab
    entries = sorted(
        state.entries,
        key=lambda e: (-e.gain_bits, render(e.pattern, vocab), e.target),
    )
    return MiningResult(tuple(entries), start_bits, state.total_bits, rounds)
