import itertools

import pytest

from treesum import (
    GenSpec,
    OtsSolver,
    brute_force,
    g_score,
    gen_random_tree,
    gts,
    ots,
)
from treesum.errors import InvalidK, UnknownNode
from treesum.optimal import DpKey


@pytest.fixture(scope="module")
def gap_solver(gap_tree):
    return OtsSolver(gap_tree, 2)


def test_gap_tree_optimum(gap_tree):
    res = ots(gap_tree, 2)
    assert res.selected_ids(gap_tree) == ["v3", "v4"]
    assert res.score == 81.0


def test_running_example_optimum(ontology):
    assert ots(ontology, 5).score == 160.0


def test_k_equals_n(ontology):
    res = ots(ontology, ontology.n)
    assert len(res.selected) == ontology.n
    assert res.score == 200.0


def test_invalid_k(ontology):
    with pytest.raises(InvalidK):
        ots(ontology, 0)
    with pytest.raises(InvalidK):
        ots(ontology, ontology.n + 1)


def test_zero_budget_states(gap_tree, gap_solver):
    t, s = gap_tree, gap_solver
    v3 = t.index("v3")
    assert s.dp_eval(DpKey(t.index("v5"), 0, v3)).value == 9.0
    assert s.dp_eval(DpKey(t.index("v6"), 0, v3)).value == 3.0
    assert s.dp_eval(DpKey(t.index("v7"), 0, v3)).value == 3.0


def test_leaf_states(gap_tree, gap_solver):
    t, s = gap_tree, gap_solver
    v4 = t.index("v4")
    assert s.dp_eval(DpKey(v4, 1, None)).value == 42.0
    assert s.dp_eval(DpKey(v4, 1, t.index("v2"))).value == 42.0
    assert s.yes_case(DpKey(v4, 1, None)) == 42.0


def test_zero_weight_leaf_state(sparse_tree):
    s = OtsSolver(sparse_tree, 1)
    v8 = sparse_tree.index("v8")
    assert s.dp_eval(DpKey(v8, 0, None)).value == 0.0


def test_yes_no_cases(gap_tree, gap_solver):
    t, s = gap_tree, gap_solver
    assert s.yes_case(DpKey(t.index("v3"), 1, None)) == 39.0
    assert s.yes_case(DpKey(t.index("v4"), 1, None)) == 42.0
    assert s.yes_case(DpKey(t.index("v2"), 2, None)) == 64.0
    assert s.no_case(DpKey(t.index("v2"), 2, None)) == 81.0
    assert s.yes_case(DpKey(t.index("v1"), 2, None)) == 57.5
    assert s.no_case(DpKey(t.index("v1"), 2, None)) == 81.0
    assert s.dp_eval(DpKey(t.index("v2"), 2, None)).value == 81.0
    assert s.dp_eval(DpKey(t.index("v1"), 2, None)).value == 81.0
    assert s.no_case(DpKey(t.index("v4"), 0, None)) == 0.0


def test_dp_entry_choice_and_split(gap_tree, gap_solver):
    t, s = gap_tree, gap_solver
    root_entry = s.dp_eval(DpKey(t.index("v1"), 2, None))
    assert root_entry.choice == "no"
    assert root_entry.split == (2,)
    v3_entry = s.dp_eval(DpKey(t.index("v3"), 1, None))
    assert v3_entry.choice == "yes"
    assert v3_entry.split == (0, 0, 0)


def test_invalid_ancestor_key(gap_tree, gap_solver):
    t, s = gap_tree, gap_solver
    with pytest.raises(UnknownNode):
        s.dp_eval(DpKey(t.index("v3"), 1, t.index("v4")))
    with pytest.raises(UnknownNode):
        s.dp_eval(DpKey(t.index("v3"), 1, t.index("v3")))


def test_knapsack_combine(gap_tree, gap_solver):
    t, s = gap_tree, gap_solver
    value, split = s.knapsack_combine([t.index("v3"), t.index("v4")], 2, None)
    assert value == 81.0
    assert split == (1, 1)
    kids = [t.index(x) for x in ("v5", "v6", "v7")]
    value, split = s.knapsack_combine(kids, 0, t.index("v3"))
    assert value == 15.0
    assert split == (0, 0, 0)
    assert s.knapsack_combine([], 0, None) == (0.0, ())


def _exhaustive_combine(solver, kids, budget, na):
    best = float("-inf")
    for mix in itertools.product(range(budget + 1), repeat=len(kids)):
        if sum(mix) != budget:
            continue
        total = sum(
            solver.dp_eval(DpKey(x, j, na)).value for x, j in zip(kids, mix)
        )
        best = max(best, total)
    return best


@pytest.mark.parametrize("seed", range(6))
def test_knapsack_matches_exhaustive(seed):
    t = gen_random_tree(GenSpec(n=16, important_count=8, seed=400 + seed, max_children=4))
    s = OtsSolver(t, 4)
    wide = [v for v in range(t.n) if len(t.children[v]) >= 2]
    for u in wide[:4]:
        kids = t.children[u]
        for budget in range(0, 5):
            got, _ = s.knapsack_combine(kids, budget, None)
            want = _exhaustive_combine(s, kids, budget, None)
            assert got == pytest.approx(want, abs=1e-9)


def test_reconstruct(gap_tree, gap_solver):
    assert {gap_tree.ids[v] for v in gap_solver.reconstruct()} == {"v3", "v4"}


def test_reconstruct_k_zero(gap_tree):
    assert OtsSolver(gap_tree, 0).reconstruct() == set()


@pytest.mark.parametrize("seed", range(25))
def test_reconstructed_set_scores_memo_value(seed):
    t = gen_random_tree(GenSpec(n=20, important_count=10, seed=700 + seed))
    for k in (2, 4):
        solver = OtsSolver(t, k)
        res = solver.solve()
        assert len(res.selected) == k
        assert res.score == pytest.approx(solver.optimum(), abs=1e-9)
        assert g_score(t, res.selected) == pytest.approx(res.score, abs=1e-12)


@pytest.mark.parametrize("seed", range(15))
def test_optimality_and_dominance(seed):
    t = gen_random_tree(GenSpec(n=15, important_count=8, seed=900 + seed))
    for k in (1, 2, 3):
        best = ots(t, k).score
        assert best == pytest.approx(brute_force(t, k).score, abs=1e-9)
        assert best >= gts(t, k).score - 1e-9


def test_state_count_bound(ontology):
    for k in (1, 3, 5):
        solver = OtsSolver(ontology, k)
        bound = ontology.n * (ontology.height + 1) * (k + 1)
        assert solver.state_count() <= bound
