import pytest

from treesum import (
    GenSpec,
    Splitmix64,
    WeightedTree,
    avg_level_difference,
    closeness_distance,
    compute_metrics,
    gen_random_tree,
    weighted_coverage,
)
from treesum.errors import EmptySummary, NoImportantNodes


@pytest.fixture(scope="module")
def summary(ontology):
    return ontology.indices(["r", "A", "a1", "b1", "c0"])


def test_closeness_distance(ontology, summary):
    assert closeness_distance(ontology, summary) == 80.0


def test_closeness_distance_zero_when_all_covered(ontology):
    assert closeness_distance(ontology, range(ontology.n)) == 0.0
    assert closeness_distance(ontology, ontology.important) == 0.0


def test_closeness_distance_singleton_tree():
    t = WeightedTree(["x"], [-1], [4.0])
    assert closeness_distance(t, [0]) == 0.0


def test_closeness_distance_empty(ontology):
    with pytest.raises(EmptySummary):
        closeness_distance(ontology, [])


def test_avg_level_difference(ontology, summary):
    assert avg_level_difference(ontology, summary) == pytest.approx(0.4, abs=1e-12)


def test_avg_level_difference_empty_set(ontology):
    t = ontology
    expected = sum(t.levels[y] * t.feq[y] for y in t.important) / t.total_weight()
    assert avg_level_difference(t, []) == pytest.approx(expected, abs=1e-12)
    # the root alone removes only its own gap, which was already zero
    root_only = avg_level_difference(t, [t.root])
    assert root_only == pytest.approx(expected - 0.0, abs=1e-12)


def test_avg_level_difference_no_weights():
    t = WeightedTree(["a", "b"], [-1, 0], [0.0, 0.0])
    with pytest.raises(NoImportantNodes):
        avg_level_difference(t, [0])


def test_weighted_coverage(ontology, summary):
    t = ontology
    assert weighted_coverage(t, summary) == 200.0
    assert weighted_coverage(t, []) == 0.0
    assert weighted_coverage(t, [t.root]) == 40.0
    assert weighted_coverage(t, t.important) <= t.total_weight()


def test_compute_metrics_report(ontology, summary):
    report = compute_metrics(ontology, summary, algorithm="gts")
    assert (report.cd, report.ald, report.wc) == (80.0, 0.4, 200.0)
    assert report.k == 5
    assert report.algorithm == "gts"
    empty = compute_metrics(ontology, [])
    assert empty.cd is None
    assert empty.wc == 0.0


@pytest.mark.parametrize("seed", range(10))
def test_monotone_under_inclusion(seed):
    t = gen_random_tree(GenSpec(n=60, important_count=25, seed=7000 + seed))
    rng = Splitmix64(seed)
    for _ in range(40):
        small = {rng.randrange(t.n) for _ in range(1 + rng.randrange(6))}
        big = small | {rng.randrange(t.n) for _ in range(1 + rng.randrange(6))}
        assert closeness_distance(t, big) <= closeness_distance(t, small) + 1e-9
        assert avg_level_difference(t, big) <= avg_level_difference(t, small) + 1e-9
        assert weighted_coverage(t, big) >= weighted_coverage(t, small) - 1e-9
        assert avg_level_difference(t, big) <= max(
            t.levels[y] for y in t.important
        )
