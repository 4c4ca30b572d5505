import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from labelminer import (
    CorpusError,
    iter_jsonl,
    iter_paired_files,
    parse_corpus,
)
from labelminer.corpus import Bitmap, write_paired_files

from conftest import TOY_ROWS


def test_toy_corpus_shape(toy_db):
    assert toy_db.n == 5
    assert toy_db.n_plus == 3
    assert toy_db.n_minus == 2
    assert toy_db.column(toy_db.vocab.id_of("ducks")).indices() == [0, 1, 3, 4]


def test_column_lookup(toy_db):
    assert toy_db.column(toy_db.vocab.id_of("how")).indices() == [0, 2]
    with pytest.raises(CorpusError, match="unknown token id"):
        toy_db.column(toy_db.m)
    with pytest.raises(CorpusError, match="unknown token id"):
        toy_db.column(-1)


def test_groups_partition_instances(toy_db):
    assert toy_db.group_plus.indices() == [0, 1, 2]
    assert toy_db.group_minus.indices() == [3, 4]
    assert (toy_db.group_plus & toy_db.group_minus).count() == 0
    assert (toy_db.group_plus | toy_db.group_minus).count() == toy_db.n


def test_empty_token_list_is_allowed():
    db = parse_corpus([([], 0)])
    assert db.n == 1
    assert db.m == 0
    assert db.n_minus == 1


def test_duplicate_tokens_collapse():
    db = parse_corpus([("many many ducks".split(), 1)])
    assert db.column(db.vocab.id_of("many")).count() == 1


def test_empty_stream_rejected():
    with pytest.raises(CorpusError, match="empty corpus"):
        parse_corpus([])


def test_bad_label_carries_line_number():
    with pytest.raises(CorpusError, match=r"bad label 2 \(line 2\)"):
        parse_corpus([(["a"], 0), (["b"], 2)])


def test_vocabulary_first_occurrence_order(toy_db):
    assert toy_db.vocab.tokens[:3] == ("how", "many", "ducks")
    for j, token in enumerate(toy_db.vocab.tokens):
        assert toy_db.vocab.id_of(token) == j
        assert toy_db.vocab.token_of(j) == token


@given(st.integers(0, 2**32 - 1), st.integers(1, 30), st.integers(1, 12))
@settings(max_examples=50, deadline=None)
def test_membership_round_trip(seed, n, m):
    import random

    from conftest import random_rows

    rows = random_rows(random.Random(seed), n, m)
    db = parse_corpus(rows)
    for i, (tokens, _label) in enumerate(rows):
        ids = {db.vocab.id_of(t) for t in tokens}
        assert db.instance_tokens(i) == ids
        for j in range(db.m):
            assert (i in db.column(j)) == (j in ids)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_column_counts_sum_to_distinct_pairs(seed):
    import random

    from conftest import random_rows

    rows = random_rows(random.Random(seed), 20, 8)
    db = parse_corpus(rows)
    pairs = sum(len(set(tokens)) for tokens, _ in rows)
    assert sum(col.count() for col in db.columns) == pairs


def test_parsing_deterministic():
    a = parse_corpus(TOY_ROWS)
    b = parse_corpus(TOY_ROWS)
    assert a.vocab.tokens == b.vocab.tokens
    assert a.columns == b.columns
    assert a.labels == b.labels


def test_bitmap_basics():
    bm = Bitmap.from_indices([0, 3, 5], 8)
    assert bm.count() == 3
    assert 3 in bm and 4 not in bm
    assert (bm - Bitmap.from_indices([3], 8)).indices() == [0, 5]
    with pytest.raises(ValueError):
        Bitmap.from_indices([8], 8)


def test_paired_files_round_trip(tmp_path):
    corpus_path = tmp_path / "corpus.txt"
    labels_path = tmp_path / "labels.txt"
    write_paired_files(
        [row[0] for row in TOY_ROWS],
        [row[1] for row in TOY_ROWS],
        str(corpus_path),
        str(labels_path),
    )
    db = parse_corpus(iter_paired_files(str(corpus_path), str(labels_path)))
    assert db.n == 5
    assert db.column(db.vocab.id_of("ducks")).indices() == [0, 1, 3, 4]


def test_paired_files_count_mismatch(tmp_path):
    (tmp_path / "c.txt").write_text("a b\nc d\n")
    (tmp_path / "l.txt").write_text("1\n")
    with pytest.raises(CorpusError, match="mismatch"):
        list(iter_paired_files(str(tmp_path / "c.txt"), str(tmp_path / "l.txt")))


def test_jsonl_round_trip(tmp_path):
    path = tmp_path / "corpus.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for tokens, label in TOY_ROWS:
            fh.write(json.dumps({"tokens": tokens, "label": label}) + "\n")
    db = parse_corpus(iter_jsonl(str(path)))
    assert db.n == 5
    assert db.n_plus == 3


def test_jsonl_bad_record_line_number(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"tokens": ["a"], "label": 0}\nnot json\n')
    with pytest.raises(CorpusError, match=r"line 2"):
        list(iter_jsonl(str(path)))


def test_jsonl_bad_label_line_number(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(
        '{"tokens": ["a"], "label": 0}\n{"tokens": ["b"], "label": 2}\n'
    )
    with pytest.raises(CorpusError, match=r"bad label 2 \(line 2\)"):
        parse_corpus(iter_jsonl(str(path)))
