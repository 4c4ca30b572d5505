"""Pattern language: conjunctions of singleton and exclusive-group clauses.

A clause is a non-empty ascending tuple of token ids; a clause with two
or more members is an exclusive group and is satisfied when at least one
member is present (the exclusivity is a coding assumption, not a match
constraint). Patterns are canonical values: clauses ordered by smallest
member, token ids globally distinct across clauses.

Text syntax (exchange format used by the CLI and report files):

    pattern := item | "AND(" item ("," item)* ")"
    item    := token | "XOR(" token ("," token)+ ")"

Whitespace around commas is ignored; singletons are rendered unwrapped
and single-clause patterns without the AND wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Bitmap, LabeledTransactionSet, Vocabulary
from .errors import PatternError, PatternSyntaxError


@dataclass(frozen=True, slots=True)
class Clause:
    """One conjunct: a single token or an exclusive group of tokens."""

    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise PatternError("clause needs at least one member")
        if any(b <= a for a, b in zip(self.members, self.members[1:])):
            raise PatternError("clause members must be strictly ascending")

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_group(self) -> bool:
        return len(self.members) > 1


@dataclass(frozen=True, slots=True)
class Pattern:
    """Canonical conjunction of clauses."""

    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if not self.clauses:
            raise PatternError("pattern needs at least one clause")
        seen: set[int] = set()
        for clause in self.clauses:
            for t in clause.members:
                if t in seen:
                    raise PatternError("non-disjoint clauses")
                seen.add(t)
        if any(
            b.members[0] <= a.members[0]
            for a, b in zip(self.clauses, self.clauses[1:])
        ):
            raise PatternError("clauses must be ordered by smallest member")

    @classmethod
    def of(cls, clauses: Iterable[Sequence[int]]) -> "Pattern":
        """Canonicalize raw member sequences into a Pattern."""
        normalized = tuple(
            Clause(tuple(sorted(set(members)))) for members in clauses
        )
        return cls(tuple(sorted(normalized, key=lambda c: c.members[0])))

    @classmethod
    def singleton(cls, token_id: int) -> "Pattern":
        return cls((Clause((token_id,)),))

    @property
    def k(self) -> int:
        return len(self.clauses)

    def token_ids(self) -> tuple[int, ...]:
        return tuple(t for clause in self.clauses for t in clause.members)

    def token_count(self) -> int:
        return sum(clause.size for clause in self.clauses)


@dataclass(frozen=True, slots=True)
class PatternEntry:
    """A pattern in a model: target side, per-group supports, and the
    compression gain recorded when it was accepted."""

    pattern: Pattern
    target: str  # "+" or "-"
    u_plus: int
    u_minus: int
    gain_bits: float

    def __post_init__(self) -> None:
        if self.target not in ("+", "-"):
            raise PatternError(f"target must be '+' or '-', got {self.target!r}")


def matches(pattern: Pattern, instance: set[int]) -> bool:
    """True iff every clause has at least one member in the instance."""
    return all(
        any(t in instance for t in clause.members) for clause in pattern.clauses
    )


def support_bitmap(pattern: Pattern, db: LabeledTransactionSet) -> Bitmap:
    """Instances matched by the pattern: intersection over clauses of the
    union of member columns."""
    mask = (1 << db.n) - 1
    for clause in pattern.clauses:
        clause_mask = 0
        for t in clause.members:
            clause_mask |= db.column(t).mask
        mask &= clause_mask
        if not mask:
            break
    return Bitmap(mask, db.n)


def render(pattern: Pattern, vocab: Vocabulary, unicode_ops: bool = False) -> str:
    """Canonical text form; `unicode_ops` swaps AND/XOR for the display
    glyphs used in reports for humans."""
    and_op, xor_op = ("∧", "⊕") if unicode_ops else ("AND", "XOR")
    items = []
    for clause in pattern.clauses:
        names = [vocab.token_of(t) for t in clause.members]
        if clause.is_group:
            items.append(f"{xor_op}({', '.join(names)})")
        else:
            items.append(names[0])
    if len(items) == 1:
        return items[0]
    return f"{and_op}({', '.join(items)})"


_RESERVED = set("(),") | set(" \t\r\n")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> PatternSyntaxError:
        return PatternSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        self.skip_ws()
        if self.peek() != char:
            raise self.error(f"expected {char!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _RESERVED:
            self.pos += 1
        if self.pos == start:
            raise self.error("expected token")
        return self.text[start : self.pos]

    def parse(self) -> tuple[tuple[str, ...], ...]:
        clauses = self.pattern()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input")
        return clauses

    def pattern(self) -> tuple[tuple[str, ...], ...]:
        word = self.word()
        self.skip_ws()
        if word == "AND" and self.peek() == "(":
            self.pos += 1
            clauses = [self.item()]
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                clauses.append(self.item())
                self.skip_ws()
            self.expect(")")
            return tuple(clauses)
        if word == "XOR" and self.peek() == "(":
            self.pos += 1
            return (self.group_body(),)
        return ((word,),)

    def item(self) -> tuple[str, ...]:
        word = self.word()
        self.skip_ws()
        if word == "XOR" and self.peek() == "(":
            self.pos += 1
            return self.group_body()
        return (word,)

    def group_body(self) -> tuple[str, ...]:
        members = [self.word()]
        self.skip_ws()
        while self.peek() == ",":
            self.pos += 1
            members.append(self.word())
            self.skip_ws()
        self.expect(")")
        if len(members) < 2:
            raise self.error("groups need at least 2 members")
        return tuple(members)


def parse_pattern_structure(text: str) -> tuple[tuple[str, ...], ...]:
    """Parse pattern text into clause tuples of token strings, without
    resolving against a vocabulary. Used by evaluation paths that compare
    patterns from unrelated runs."""
    return _Parser(text).parse()


def parse_pattern(text: str, vocab: Vocabulary) -> Pattern:
    """Parse and canonicalize pattern text against a vocabulary.

    Non-canonical member or clause orderings are normalized; unknown
    tokens and duplicate tokens across clauses are errors.
    """
    clauses = parse_pattern_structure(text)
    id_clauses = []
    for members in clauses:
        ids = []
        for token in members:
            if token not in vocab:
                raise PatternError(f"unknown token: {token!r}")
            ids.append(vocab.id_of(token))
        if len(set(ids)) != len(ids):
            raise PatternError("non-disjoint clauses")
        id_clauses.append(ids)
    return Pattern.of(id_clauses)


def flatten_tokens(pattern: Pattern, vocab: Vocabulary) -> frozenset[str]:
    """Flattened token-string set of a pattern (for recovery scoring)."""
    return frozenset(vocab.token_of(t) for t in pattern.token_ids())
