"""Comparison selectors: weight ranking, subtree-aggregate ranking, and
exhaustive search.

These are the yardsticks the two real summarizers are measured against.
``brute_force`` maximizes the objective over every k-subset and is the
correctness oracle for the exact solver; the enumeration is evaluated in
numpy batches (subset membership matrix times per-node impact rows).
"""
from __future__ import annotations

from math import comb
from itertools import combinations, islice

import numpy as np

from .errors import EnumerationTooLarge, InvalidK
from .result import SummaryResult
from .scoring import _g_unchecked
from .tree import WeightedTree


def _check_k(tree: WeightedTree, k: int):
    if not 1 <= k <= tree.n:
        raise InvalidK(f"k={k} outside 1..{tree.n}")


def _top_by(tree: WeightedTree, k: int, value, algorithm: str) -> SummaryResult:
    ranked = sorted(tree.pre_order, key=lambda v: (-value[v], tree.pre_rank[v]))
    selected = ranked[:k]
    return SummaryResult(
        selected=selected,
        score=_g_unchecked(tree, set(selected)),
        algorithm=algorithm,
    )


def feq_topk(tree: WeightedTree, k: int) -> SummaryResult:
    """The k nodes with the largest weights; ties go to preorder rank."""
    _check_k(tree, k)
    return _top_by(tree, k, tree.feq, "feq")


def aggregate_weights(tree: WeightedTree):
    """Subtree weight sums (self-inclusive), one post-order pass."""
    af = list(tree.feq)
    for v in tree.post_order:
        p = tree.parent[v]
        if p >= 0:
            af[p] += af[v]
    return af


def agg_topk(tree: WeightedTree, k: int) -> SummaryResult:
    """The k nodes with the largest aggregate (subtree) weights."""
    _check_k(tree, k)
    return _top_by(tree, k, aggregate_weights(tree), "agg")


def cagg_topk(tree: WeightedTree, k: int, theta: float = 0.4) -> SummaryResult:
    """Aggregate-weight ranking restricted to nodes that contribute at least
    ``theta`` of their parent's aggregate weight.

    The root always qualifies (its ratio is taken as 1, as is a child of a
    weightless subtree).  The filter runs before the top-k cut; when fewer
    than k nodes qualify the result is returned short and flagged.
    """
    _check_k(tree, k)
    if not 0.0 <= theta <= 1.0:
        raise InvalidK(f"theta={theta} outside 0..1")
    af = aggregate_weights(tree)
    qualifying = []
    for v in tree.pre_order:
        p = tree.parent[v]
        ratio = 1.0 if p < 0 or af[p] == 0 else af[v] / af[p]
        if ratio >= theta:
            qualifying.append(v)
    qualifying.sort(key=lambda v: (-af[v], tree.pre_rank[v]))
    selected = qualifying[:k]
    return SummaryResult(
        selected=selected,
        score=_g_unchecked(tree, set(selected)),
        algorithm="cagg",
        underfilled=len(selected) < k,
    )


def brute_force(
    tree: WeightedTree,
    k: int,
    subset_cap: int = 10**8,
    batch_rows: int = 0,
) -> SummaryResult:
    """Exhaustive maximum of the objective over all k-subsets.

    Subsets are enumerated in lexicographic preorder-rank order and the
    first maximum wins, so ties resolve to the lexicographically smallest
    preorder index vector.  Refuses instances above ``subset_cap`` subsets.
    """
    _check_k(tree, k)
    n = tree.n
    total = comb(n, k)
    if total > subset_cap:
        raise EnumerationTooLarge(f"C({n},{k}) = {total} exceeds cap {subset_cap}")

    order = tree.pre_order
    imp = tree.important_pre
    # impact[i, p]: what the node at preorder position p contributes when it
    # represents important node i; zero unless it is an ancestor.
    impact = np.zeros((len(imp), n))
    slv = tree.score_levels
    parent = tree.parent
    pre_pos = tree.pre_rank
    for i, y in enumerate(imp):
        w = tree.feq[y]
        ly = slv[y]
        v = y
        while v >= 0:
            impact[i, pre_pos[v]] = w / (ly - slv[v] + 1)
            v = parent[v]

    if batch_rows <= 0:
        batch_rows = max(16, 4_000_000 // max(1, len(imp) * n))
    best_val = -1.0
    best_combo = None
    combos = combinations(range(n), k)
    while True:
        batch = list(islice(combos, batch_rows))
        if not batch:
            break
        sel = np.zeros((len(batch), n))
        sel[np.arange(len(batch))[:, None], np.array(batch)] = 1.0
        # (rows, |I|, n) impacts of selected ancestors, best per important node
        scores = (sel[:, None, :] * impact[None, :, :]).max(axis=2).sum(axis=1)
        i = int(np.argmax(scores))
        if scores[i] > best_val:
            best_val = float(scores[i])
            best_combo = batch[i]

    selected = [order[p] for p in best_combo]
    return SummaryResult(
        selected=selected,
        score=_g_unchecked(tree, set(selected)),
        algorithm="brute",
    )
