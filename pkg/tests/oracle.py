"""Naive reference implementations used as independent test oracles.

Everything here works on plain structures (instances as sets of token
ids, models as (clauses, target) tuples) with row-by-row loops and exact
integer binomials via math.comb. No bitmaps, no log-gamma, no incremental
bookkeeping — deliberately a different path from the package.
"""

import math

LOG2_C0 = math.log2(2.865064)


def naive_universal(value: int) -> float:
    bits = LOG2_C0
    term = math.log2(value)
    while term > 0.0:
        bits += term
        term = math.log2(term)
    return bits


def naive_binomial_code(n: int, k: int) -> float:
    return math.log2(math.comb(n, k)) + math.log2(n + 1)


def naive_matches(clauses, instance: set) -> bool:
    return all(any(t in instance for t in clause) for clause in clauses)


def naive_support(clauses, instances) -> list:
    return [i for i, inst in enumerate(instances) if naive_matches(clauses, inst)]


def naive_model_length(entries, m: int) -> float:
    bits = naive_universal(len(entries) + 1)
    for clauses, _target in entries:
        bits += 1.0 + naive_universal(len(clauses))
        for clause in clauses:
            bits += naive_universal(len(clause)) + math.log2(math.comb(m, len(clause)))
    return bits


def naive_data_length(instances, labels, entries, m: int) -> float:
    n = len(instances)
    n_plus = sum(labels)
    n_minus = n - n_plus
    covered = set()  # (instance, token) cells explained by some entry
    bits = 0.0
    for clauses, _target in entries:
        support = naive_support(clauses, instances)
        u_plus = sum(1 for i in support if labels[i] == 1)
        u_minus = len(support) - u_plus
        bits += naive_binomial_code(n_plus, u_plus)
        bits += naive_binomial_code(n_minus, u_minus)
        for clause in clauses:
            if len(clause) >= 2:
                bits += len(support) * math.log2(len(clause))
        for i in support:
            for clause in clauses:
                designated = min(t for t in clause if t in instances[i])
                covered.add((i, designated))
    for t in range(m):
        k = sum(
            1
            for i in range(n)
            if t in instances[i] and (i, t) not in covered
        )
        bits += naive_binomial_code(n, k)
    return bits


def naive_total_length(instances, labels, entries, m: int) -> float:
    return naive_model_length(entries, m) + naive_data_length(
        instances, labels, entries, m
    )


def db_instances(db) -> list:
    """Instances of a transaction database as sets of token ids."""
    return [db.instance_tokens(i) for i in range(db.n)]


def entry_structure(entry) -> tuple:
    """(clauses, target) view of a PatternEntry for the naive functions."""
    return (
        tuple(clause.members for clause in entry.pattern.clauses),
        entry.target,
    )
