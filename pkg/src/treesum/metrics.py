"""Summary quality metrics, always evaluated on the original tree.

Three complementary views of how well a summary set covers the positively
weighted nodes: total weighted hop distance to the nearest member
(closeness distance, smaller is better), weighted mean level gap to the
nearest member on the root path (average level difference, smaller is
better), and the total weight captured by members and their direct children
(weighted coverage, larger is better).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import EmptySummary, NoImportantNodes
from .tree import EulerLcaIndex, WeightedTree


@dataclass
class MetricsReport:
    cd: Optional[float]
    ald: float
    wc: float
    k: int
    algorithm: str = ""


def closeness_distance(
    tree: WeightedTree, members: Iterable[int], index: Optional[EulerLcaIndex] = None
) -> float:
    """Sum over weighted nodes of (hop distance to the nearest member) * weight."""
    selected = [tree.check_node(v) for v in set(members)]
    if not selected:
        raise EmptySummary("closeness distance needs a nonempty summary")
    if index is None:
        index = EulerLcaIndex(tree)
    levels = tree.levels
    total = 0.0
    for y in tree.important_pre:
        ly = levels[y]
        best = None
        for x in selected:
            c = index.lca(x, y)
            d = levels[x] + ly - 2 * levels[c]
            if best is None or d < best:
                best = d
                if d == 0:
                    break
        total += best * tree.feq[y]
    return total


def avg_level_difference(tree: WeightedTree, members: Iterable[int]) -> float:
    """Weighted mean level gap to the nearest selected ancestor.

    A weighted node with no selected ancestor counts its own level, i.e. the
    gap to an imaginary node above the root.
    """
    selected = {tree.check_node(v) for v in members}
    levels = tree.levels
    parent = tree.parent
    num = 0.0
    den = 0.0
    for y in tree.important_pre:
        w = tree.feq[y]
        den += w
        v = y
        while v >= 0:
            if v in selected:
                num += (levels[y] - levels[v]) * w
                break
            v = parent[v]
        else:
            num += levels[y] * w
    if den == 0:
        raise NoImportantNodes("no node carries positive weight")
    return num / den


def weighted_coverage(tree: WeightedTree, members: Iterable[int]) -> float:
    """Total weight of positively weighted nodes that are members or their
    direct children."""
    selected = {tree.check_node(v) for v in members}
    covered = set(selected)
    for v in selected:
        covered.update(tree.children[v])
    return sum(tree.feq[y] for y in tree.important if y in covered)


def compute_metrics(
    tree: WeightedTree,
    members: Iterable[int],
    algorithm: str = "",
    index: Optional[EulerLcaIndex] = None,
) -> MetricsReport:
    """All three metrics in one report; cd is None for an empty summary."""
    selected = list(members)
    try:
        cd = closeness_distance(tree, selected, index=index)
    except EmptySummary:
        cd = None
    return MetricsReport(
        cd=cd,
        ald=avg_level_difference(tree, selected),
        wc=weighted_coverage(tree, selected),
        k=len(set(selected)),
        algorithm=algorithm,
    )
