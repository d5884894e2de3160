import pytest

from treesum import (
    GenSpec,
    agg_topk,
    aggregate_weights,
    brute_force,
    cagg_topk,
    feq_topk,
    gen_random_tree,
    g_score,
    ots,
)
from treesum.errors import EnumerationTooLarge, InvalidK


def test_feq_topk(ontology):
    t = ontology
    res = feq_topk(t, 5)
    assert set(res.selected_ids(t)) == {"a1", "A", "b1", "a2", "a3"}
    assert feq_topk(t, 1).selected_ids(t) == ["a1"]


def test_feq_tie_break_preorder():
    t = gen_random_tree(GenSpec(n=6, important_count=6, seed=1, weight_low=5, weight_high=5))
    res = feq_topk(t, 2)
    assert res.selected == t.pre_order[:2]


def test_aggregate_weights(ontology):
    t = ontology
    af = aggregate_weights(t)
    assert af[t.root] == 200.0 == t.total_weight()
    assert af[t.index("A")] == 110.0
    assert af[t.index("C")] == 50.0
    assert af[t.index("c0")] == 50.0
    assert af[t.index("c3")] == t.feq[t.index("c3")]


def test_aggregate_matches_descendant_sums():
    t = gen_random_tree(GenSpec(n=50, important_count=25, seed=11))
    af = aggregate_weights(t)
    for v in range(t.n):
        direct = sum(t.feq[y] for y in range(t.n) if t.is_ancestor(v, y))
        assert af[v] == pytest.approx(direct, abs=1e-9)


def test_agg_topk(ontology):
    t = ontology
    assert set(agg_topk(t, 5).selected_ids(t)) == {"r", "A", "C", "c0", "a1"}


def test_cagg_topk(ontology):
    t = ontology
    res = cagg_topk(t, 5, theta=0.4)
    assert set(res.selected_ids(t)) == {"r", "A", "b1", "c0"}
    assert res.underfilled
    assert "a1" not in res.selected_ids(t)  # 40/110 falls below 0.4


@pytest.mark.parametrize("seed", range(8))
def test_cagg_theta_zero_equals_agg(seed):
    t = gen_random_tree(GenSpec(n=35, important_count=12, seed=40 + seed))
    for k in (1, 4, 9):
        assert cagg_topk(t, k, theta=0.0).selected == agg_topk(t, k).selected


def test_cagg_theta_one(ontology):
    res = cagg_topk(ontology, 5, theta=1.0)
    ids = set(res.selected_ids(ontology))
    # only full-contribution chains qualify: the root and single-child lines
    assert ids == {"r", "b1", "c0"}
    assert res.underfilled


def test_brute_force_golden(ontology, gap_tree):
    res = brute_force(gap_tree, 2)
    assert res.selected_ids(gap_tree) == ["v3", "v4"]
    assert res.score == 81.0
    assert brute_force(ontology, 5).score == 160.0


def test_brute_force_k_equals_n(gap_tree):
    res = brute_force(gap_tree, gap_tree.n)
    assert len(res.selected) == gap_tree.n
    assert res.score == gap_tree.total_weight()


def test_brute_force_cap(ontology):
    with pytest.raises(EnumerationTooLarge):
        brute_force(ontology, 6, subset_cap=100)


def test_invalid_k(ontology):
    for fn in (feq_topk, agg_topk, brute_force):
        with pytest.raises(InvalidK):
            fn(ontology, 0)
    with pytest.raises(InvalidK):
        cagg_topk(ontology, 0)


def test_brute_matches_exact_solver():
    for seed in range(8):
        t = gen_random_tree(GenSpec(n=13, important_count=6, seed=60 + seed))
        for k in (1, 2, 3):
            assert brute_force(t, k).score == pytest.approx(ots(t, k).score, abs=1e-9)


def test_brute_tie_break_lexicographic():
    # all weights equal on a star: every singleton scores the same except
    # the root, which covers everything; pick k covering sets tie and the
    # preorder-lexicographically smallest combination must win
    t = gen_random_tree(GenSpec(n=5, important_count=5, seed=2, weight_low=3, weight_high=3))
    res = brute_force(t, 2)
    assert res.score == pytest.approx(g_score(t, res.selected), abs=1e-12)
    alt = brute_force(t, 2, batch_rows=1)
    assert alt.selected == res.selected
