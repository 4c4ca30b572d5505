"""Two-part description-length objective with incremental bookkeeping.

The model side pays for each pattern's structure (clause count, clause
sizes, member identities out of the vocabulary). The data side pays, per
pattern, for its occurrences within each label group, plus the designated
member of every group clause at each occurrence; everything a pattern does
not explain is paid by per-token residual columns coded over all instances
without access to the labels. Label association is therefore exploitable
only through patterns, which is what makes a positive gain a label signal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .corpus import LabeledTransactionSet
from .errors import LabelMinerError
from .patterns import Pattern, PatternEntry, support_bitmap

C0 = 2.865064
LOG2_C0 = math.log2(C0)
_LN2 = math.log(2.0)


@dataclass(frozen=True, slots=True)
class CodeConstants:
    c0: float = C0
    epsilon_gain: float = 1e-6


def universal_int(value: int) -> float:
    """Prefix-code length in bits for a positive integer: log2(c0) plus
    the positive terms of the iterated base-2 logarithm."""
    if value < 1:
        raise LabelMinerError(f"universal_int domain: {value!r}")
    return _universal_int(int(value))


@lru_cache(maxsize=None)
def _universal_int(value: int) -> float:
    bits = LOG2_C0
    term = math.log2(value)
    while term > 0.0:
        bits += term
        term = math.log2(term)
    return bits


def log2_binomial(n: int, k: int) -> float:
    """log2 C(n, k) via log-gamma; no factorials, no big integers."""
    if n < 0 or k < 0 or k > n:
        raise LabelMinerError(f"binomial domain: C({n}, {k})")
    return _log2_binomial(int(n), int(k))


@lru_cache(maxsize=None)
def _log2_binomial(n: int, k: int) -> float:
    k = min(k, n - k)  # exact symmetry, independent of evaluation order
    if k == 0:
        return 0.0
    return (
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    ) / _LN2


def binomial_code(n: int, k: int) -> float:
    """Bits to transmit which k of n positions are ones, plus k itself
    (the log2(n+1) term)."""
    if n < 0 or k < 0 or k > n:
        raise LabelMinerError(f"binomial domain: C({n}, {k})")
    return _log2_binomial(int(n), int(k)) + math.log2(n + 1)


def pattern_cost(pattern: Pattern, m: int) -> float:
    """Model bits for one entry: target bit, clause count, and per clause
    its size plus the member identities out of m tokens."""
    bits = 1.0 + universal_int(pattern.k)
    for clause in pattern.clauses:
        bits += universal_int(clause.size) + log2_binomial(m, clause.size)
    return bits


def model_length(entries: Sequence[PatternEntry], m: int) -> float:
    """Total model bits: the entry count plus each entry's cost."""
    for entry in entries:
        ids = entry.pattern.token_ids()
        if ids and max(ids) >= m:
            raise LabelMinerError(
                f"vocabulary size {m} smaller than largest token id {max(ids)}"
            )
    return math.fsum(
        [universal_int(len(entries) + 1)]
        + [pattern_cost(e.pattern, m) for e in entries]
    )


class CoverState:
    """Mutable cover bookkeeping for a pattern model over one database.

    Per token, tracks which 1-cells are explained by the model and how
    many remain unexplained (the residual k_j). Cached totals are
    recomputed from exact integer state on every mutation, so identical
    states always yield bit-identical cached lengths.

    Single writer; gain queries against a frozen state are pure.
    """

    def __init__(
        self, db: LabeledTransactionSet, constants: CodeConstants = CodeConstants()
    ):
        self.db = db
        self.constants = constants
        self.entries: list[PatternEntry] = []
        self.col_counts: list[int] = [col.count() for col in db.columns]
        self._supports: list[int] = []
        self._cells: list[dict[int, int]] = []
        self._covered: dict[int, int] = {}
        self._k: list[int] = list(self.col_counts)
        self._occ_bits: list[float] = []
        self._entry_model_bits: list[float] = []
        self.model_bits: float = 0.0
        self.data_bits: float = 0.0
        self._recompute_cached()

    @property
    def total_bits(self) -> float:
        return self.model_bits + self.data_bits

    def residual_count(self, token_id: int) -> int:
        return self._k[token_id]

    def covered_mask(self, token_id: int) -> int:
        return self._covered.get(token_id, 0)

    def support_mask(self, index: int) -> int:
        return self._supports[index]

    def _recompute_cached(self) -> None:
        n = self.db.n
        self.model_bits = math.fsum(
            [universal_int(len(self.entries) + 1)] + self._entry_model_bits
        )
        self.data_bits = math.fsum(self._occ_bits) + math.fsum(
            binomial_code(n, kj) for kj in self._k
        )

    def _entry_cells(self, pattern: Pattern, support: int) -> dict[int, int]:
        # Designated member: the lowest-id present member of each clause at
        # each supporting instance. Cells of co-occurring higher-id members
        # stay in the residual.
        cells: dict[int, int] = {}
        columns = self.db.columns
        for clause in pattern.clauses:
            remaining = support
            for t in clause.members:
                if not remaining:
                    break
                hit = remaining & columns[t].mask
                if hit:
                    cells[t] = hit
                    remaining &= ~hit
        return cells

    def _occ_and_member_bits(self, pattern: Pattern, support: int) -> float:
        db = self.db
        u_plus = (support & db.group_plus.mask).bit_count()
        u_minus = (support & db.group_minus.mask).bit_count()
        bits = binomial_code(db.n_plus, u_plus) + binomial_code(db.n_minus, u_minus)
        size = support.bit_count()
        for clause in pattern.clauses:
            if clause.is_group:
                bits += size * math.log2(clause.size)
        return bits

    def _check_new(self, pattern: Pattern) -> None:
        if any(e.pattern == pattern for e in self.entries):
            raise LabelMinerError("already in model")

    def add(self, pattern: Pattern, target: str, gain_bits: float = 0.0) -> PatternEntry:
        """Append a pattern to the model and update covers and caches."""
        self._check_new(pattern)
        db = self.db
        support = support_bitmap(pattern, db).mask
        u_plus = (support & db.group_plus.mask).bit_count()
        u_minus = (support & db.group_minus.mask).bit_count()
        entry = PatternEntry(pattern, target, u_plus, u_minus, gain_bits)
        cells = self._entry_cells(pattern, support)
        for t, cell_mask in cells.items():
            merged = self._covered.get(t, 0) | cell_mask
            self._covered[t] = merged
            self._k[t] = self.col_counts[t] - merged.bit_count()
        self.entries.append(entry)
        self._supports.append(support)
        self._cells.append(cells)
        self._occ_bits.append(self._occ_and_member_bits(pattern, support))
        self._entry_model_bits.append(pattern_cost(pattern, db.m))
        self._recompute_cached()
        return entry

    def remove(self, index: int) -> PatternEntry:
        """Drop one entry; covers of its tokens are rebuilt from the rest."""
        entry = self.entries.pop(index)
        self._supports.pop(index)
        cells = self._cells.pop(index)
        self._occ_bits.pop(index)
        self._entry_model_bits.pop(index)
        for t in cells:
            others = 0
            for other_cells in self._cells:
                others |= other_cells.get(t, 0)
            if others:
                self._covered[t] = others
            else:
                self._covered.pop(t, None)
            self._k[t] = self.col_counts[t] - others.bit_count()
        self._recompute_cached()
        return entry

    def _others_covered(self, token: int, skip_index: int) -> int:
        others = 0
        for i, other_cells in enumerate(self._cells):
            if i != skip_index:
                others |= other_cells.get(token, 0)
        return others

    def move_gain(
        self,
        pattern: Pattern,
        remove_index: int | None = None,
        support: int | None = None,
    ) -> float:
        """Exact drop in total bits from (optionally removing one entry
        and) adding `pattern`, evaluated without mutating the state."""
        db = self.db
        n = db.n
        parts: list[float] = []
        base_covered: dict[int, int] = {}
        count_after = len(self.entries) + 1
        if remove_index is not None:
            for t in self._cells[remove_index]:
                base_covered[t] = self._others_covered(t, remove_index)
            parts.append(self._occ_bits[remove_index])
            parts.append(self._entry_model_bits[remove_index])
            count_after -= 1
        if support is None:
            support = support_bitmap(pattern, db).mask
        new_cells = self._entry_cells(pattern, support)
        for t in set(base_covered) | set(new_cells):
            after_mask = base_covered.get(t, self._covered.get(t, 0)) | new_cells.get(
                t, 0
            )
            after_k = self.col_counts[t] - after_mask.bit_count()
            if after_k != self._k[t]:
                parts.append(binomial_code(n, self._k[t]))
                parts.append(-binomial_code(n, after_k))
        parts.append(universal_int(len(self.entries) + 1))
        parts.append(-universal_int(count_after + 1))
        parts.append(-self._occ_and_member_bits(pattern, support))
        parts.append(-pattern_cost(pattern, db.m))
        # fsum is exactly rounded, so the gain does not depend on token
        # iteration order (and thereby on instance or vocabulary order)
        return math.fsum(parts)

    def gain(self, pattern: Pattern) -> float:
        """Drop in total bits from adding `pattern` to the current model."""
        self._check_new(pattern)
        return self.move_gain(pattern)

    def removal_gain(self, index: int) -> float:
        """Drop in total bits from removing entry `index` (may be negative)."""
        n = self.db.n
        parts = [
            self._occ_bits[index],
            self._entry_model_bits[index],
            universal_int(len(self.entries) + 1),
            -universal_int(len(self.entries)),
        ]
        for t in self._cells[index]:
            others = self._others_covered(t, index)
            after_k = self.col_counts[t] - others.bit_count()
            if after_k != self._k[t]:
                parts.append(binomial_code(n, self._k[t]))
                parts.append(-binomial_code(n, after_k))
        return math.fsum(parts)


def data_length(
    db: LabeledTransactionSet, entries: Sequence[PatternEntry] = ()
) -> tuple[float, CoverState]:
    """Data bits for the given model, together with the resulting cover
    state (entries are replayed in order; covering is idempotent)."""
    state = CoverState(db)
    for entry in entries:
        state.add(entry.pattern, entry.target, entry.gain_bits)
    return state.data_bits, state


def total_length(
    db: LabeledTransactionSet, entries: Sequence[PatternEntry] = ()
) -> float:
    """Model bits plus data bits for the given pattern model."""
    bits, state = data_length(db, entries)
    return state.model_bits + bits


def gain(
    state: CoverState, db: LabeledTransactionSet, candidate: PatternEntry
) -> float:
    """Drop in total bits from adding `candidate` to `state`'s model."""
    if db is not state.db:
        raise LabelMinerError("state was built over a different database")
    return state.gain(candidate.pattern)
