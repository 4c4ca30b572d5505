import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from labelminer import (
    SynthError,
    SynthSpec,
    baseline_topk,
    generate,
    mine,
    render,
    soft_f1,
)
from labelminer.patterns import flatten_tokens


def spec_noise_free(**overrides):
    base = dict(
        n=1000,
        m=200,
        num_patterns=1,
        pattern_len=2,
        group_size=1,
        imbalance=0.5,
        target_rate=0.3,
        leak_rate=0.0,
        destructive_noise=0.0,
        seed=1,
    )
    base.update(overrides)
    return SynthSpec(**base)


def test_noise_free_stamping_is_exact():
    db, truth, _ = generate(spec_noise_free())
    planted = truth.patterns[0]
    assert planted.support_plus == int(0.3 * 500)
    assert planted.support_minus == 0
    assert db.n_plus == 500


def test_same_seed_same_database():
    a_db, a_truth, _ = generate(spec_noise_free())
    b_db, b_truth, _ = generate(spec_noise_free())
    assert a_db.labels == b_db.labels
    assert a_db.vocab.tokens == b_db.vocab.tokens
    assert a_db.columns == b_db.columns
    assert a_truth == b_truth


def test_total_destructive_noise_kills_support():
    db, truth, _ = generate(spec_noise_free(destructive_noise=1.0))
    assert truth.patterns[0].support_plus == 0
    assert truth.patterns[0].support_minus == 0
    result = mine(db)
    assert result.entries == ()


def test_infeasible_spec_rejected():
    with pytest.raises(SynthError, match="vocabulary too small"):
        generate(spec_noise_free(m=12, num_patterns=3, pattern_len=3))


def test_label_counts_exact():
    for rho in (0.1, 0.29, 0.5):
        spec = spec_noise_free(imbalance=rho, n=1000)
        db, _, _ = generate(spec)
        assert db.n_plus == int(rho * 1000 + 1e-9)


def test_planted_supports_concentrate():
    # realized supports stay within 3 binomial standard deviations of the
    # stamped counts once destructive noise is applied
    noise = 0.1
    for seed in range(20):
        spec = SynthSpec(
            n=2000,
            m=100,
            num_patterns=1,
            pattern_len=2,
            imbalance=0.5,
            target_rate=0.2,
            leak_rate=0.01,
            destructive_noise=noise,
            seed=seed,
        )
        db, truth, _ = generate(spec)
        planted = truth.patterns[0]
        keep = (1.0 - noise) ** spec.pattern_len
        stamped_plus = int(0.2 * 1000)
        mean = stamped_plus * keep
        sigma = math.sqrt(stamped_plus * keep * (1 - keep))
        assert abs(planted.support_plus - mean) <= 3 * sigma + 1


def test_planted_tokens_come_from_rare_half():
    db, truth, _ = generate(spec_noise_free())
    for pattern in truth.patterns:
        for token in pattern.flat_tokens():
            assert int(token[1:]) >= 100  # m=200, rare half is ids >= 100


def test_group_members_have_close_vectors():
    spec = spec_noise_free(m=220, pattern_len=2, group_size=3, target_rate=0.3)
    _, truth, table = generate(spec)
    group = [c for c in truth.patterns[0].clauses if len(c) > 1][0]
    from labelminer import cosine

    for a in group:
        for b in group:
            if a != b:
                assert cosine(table.vector(a), table.vector(b)) >= 0.9


def test_group_neighbors_are_co_members():
    spec = spec_noise_free(m=220, pattern_len=2, group_size=3, target_rate=0.3)
    _, truth, table = generate(spec)
    group = sorted([c for c in truth.patterns[0].clauses if len(c) > 1][0])
    for token in group:
        got = [tok for tok, _ in table.neighbors(token, k=2, min_cosine=0.5)]
        assert sorted(got + [token]) == group


# --- soft F1 ----------------------------------------------------------------


def test_soft_f1_identity():
    sets = [frozenset({"a", "b"}), frozenset({"c"})]
    assert soft_f1(sets, sets) == (1.0, 1.0, 1.0)


def test_soft_f1_disjoint():
    assert soft_f1([{"a"}], [{"b"}]) == (0.0, 0.0, 0.0)


def test_soft_f1_partial_overlap():
    p, r, f1 = soft_f1([{"how", "many"}], [{"how", "many", "ducks"}])
    assert p == pytest.approx(2 / 3)
    assert r == pytest.approx(2 / 3)
    assert f1 == pytest.approx(2 / 3)


def test_soft_f1_empty_conventions():
    assert soft_f1([], []) == (1.0, 1.0, 1.0)
    assert soft_f1([], [{"a"}]) == (0.0, 0.0, 0.0)
    assert soft_f1([{"a"}], []) == (0.0, 0.0, 0.0)


@given(
    st.lists(st.frozensets(st.integers(0, 8), min_size=1), max_size=5),
    st.lists(st.frozensets(st.integers(0, 8), min_size=1), max_size=5),
)
@settings(max_examples=100, deadline=None)
def test_soft_f1_bounds_and_symmetry(found, planted):
    p, r, f1 = soft_f1(found, planted)
    assert 0.0 <= p <= 1.0 and 0.0 <= r <= 1.0 and 0.0 <= f1 <= 1.0
    p2, r2, _ = soft_f1(planted, found)
    assert p == pytest.approx(r2, abs=1e-12)
    assert r == pytest.approx(p2, abs=1e-12)


# --- naive baseline ---------------------------------------------------------


def test_baseline_topk_toy(toy_db_x20):
    top = baseline_topk(toy_db_x20, 1)
    assert len(top) == 1
    token = toy_db_x20.vocab.token_of(top[0].token_ids()[0])
    # "how" occurs only in the error group and maximizes the rate gap
    assert token == "how"


def test_baseline_topk_all_tokens(toy_db_x20):
    top = baseline_topk(toy_db_x20, toy_db_x20.m + 10)
    assert len(top) == toy_db_x20.m


def test_baseline_topk_deterministic(toy_db_x20):
    a = baseline_topk(toy_db_x20, 5)
    b = baseline_topk(toy_db_x20, 5)
    assert a == b


# --- end-to-end recovery -----------------------------------------------------


def test_noise_free_recovery_is_perfect():
    db, truth, _ = generate(spec_noise_free(num_patterns=2, m=300, seed=5))
    result = mine(db)
    found = [flatten_tokens(e.pattern, db.vocab) for e in result.entries]
    _, _, f1 = soft_f1(found, truth.flat_sets())
    assert f1 == 1.0
