"""The summary objective.

A summary set S scores a weighted tree by letting every positively weighted
node y be represented by its best selected ancestor:

    cor(x, y)  = 1 / (level(y) - level(x) + 1)   if x is an ancestor of y
                 0                               otherwise
    rep(x, y)  = feq(y) * cor(x, y)
    smy(S, y)  = max over x in S that are ancestors of y of rep(x, y)
                 (0 when S contains no ancestor of y)
    g(S)       = sum of smy(S, y) over all positively weighted y

g is monotone and submodular, which is what makes the greedy summarizer a
(1 - 1/e)-approximation.  All level arithmetic reads ``tree.score_levels``
so reduced trees score exactly like the originals they came from.

``marginal_gain_fast`` computes g(S + {x}) - g(S) from a single pruned
traversal of x's subtree; ``marginal_gain_naive`` computes the same number
from two full evaluations of g and serves as its test oracle.  rep is
evaluated as a single division feq(y) / (diff + 1), which keeps quantities
like 18/3 exact in floating point.
"""
from __future__ import annotations

from typing import Iterable, Set

from .errors import AlreadySelected
from .tree import WeightedTree


def cor(tree: WeightedTree, x: int, y: int) -> float:
    """Correlation of ancestor x on y; 0 when x does not cover y."""
    tree.check_node(x)
    tree.check_node(y)
    if not tree.is_ancestor(x, y):
        return 0.0
    lv = tree.score_levels
    return 1.0 / (lv[y] - lv[x] + 1)


def rep(tree: WeightedTree, x: int, y: int) -> float:
    """Representative impact of x on y: feq(y) * cor(x, y)."""
    tree.check_node(x)
    tree.check_node(y)
    if not tree.is_ancestor(x, y):
        return 0.0
    lv = tree.score_levels
    return tree.feq[y] / (lv[y] - lv[x] + 1)


def smy(tree: WeightedTree, members: Iterable[int], y: int) -> float:
    """Best representative impact on y among ancestors of y inside the set."""
    tree.check_node(y)
    selected = members if isinstance(members, (set, frozenset)) else set(members)
    best = 0.0
    lv = tree.score_levels
    ly = lv[y]
    feq_y = tree.feq[y]
    v = y
    while v >= 0:
        if v in selected:
            # the nearest selected ancestor maximizes rep, stop here
            return feq_y / (ly - lv[v] + 1)
        v = tree.parent[v]
    return best


def g_score(tree: WeightedTree, members: Iterable[int]) -> float:
    """Total summary impact of the set on all positively weighted nodes.

    Accumulated over important nodes in preorder, so the result is
    bit-for-bit reproducible across runs.
    """
    selected = members if isinstance(members, (set, frozenset)) else set(members)
    for v in selected:
        tree.check_node(v)
    return _g_unchecked(tree, selected)


def _g_unchecked(tree: WeightedTree, selected: Set[int]) -> float:
    lv = tree.score_levels
    parent = tree.parent
    feq = tree.feq
    total = 0.0
    for y in tree.important_pre:
        v = y
        while v >= 0:
            if v in selected:
                total += feq[y] / (lv[y] - lv[v] + 1)
                break
            v = parent[v]
    return total


def marginal_gain_naive(tree: WeightedTree, members: Iterable[int], x: int) -> float:
    """g(S + {x}) - g(S) by two full evaluations; the slow reference route."""
    tree.check_node(x)
    selected = set(members)
    if x in selected:
        raise AlreadySelected(f"node {tree.ids[x]!r} is already selected")
    base = _g_unchecked(tree, selected)
    selected.add(x)
    return _g_unchecked(tree, selected) - base


def marginal_gain_fast(tree: WeightedTree, members: Iterable[int], x: int) -> float:
    """g(S + {x}) - g(S) from one pruned traversal of x's subtree.

    Only nodes that would switch their representative to x matter: the
    descendants of x with no selected node strictly between x and them.
    For each such y the gain is rep(x, y) minus what the nearest selected
    ancestor z of x contributed (zero when no z exists); descendants below
    another selected node keep their representative and contribute nothing.
    """
    tree.check_node(x)
    selected = members if isinstance(members, (set, frozenset)) else set(members)
    if x in selected:
        raise AlreadySelected(f"node {tree.ids[x]!r} is already selected")

    lv = tree.score_levels
    feq = tree.feq
    children = tree.children

    lz = None
    v = tree.parent[x]
    while v >= 0:
        if v in selected:
            lz = lv[v]
            break
        v = tree.parent[v]

    lx = lv[x]
    gain = 0.0
    stack = [x]
    if lz is None:
        while stack:
            y = stack.pop()
            w = feq[y]
            if w:
                gain += w / (lv[y] - lx + 1)
            for c in children[y]:
                if c not in selected:
                    stack.append(c)
    else:
        while stack:
            y = stack.pop()
            w = feq[y]
            if w:
                ly = lv[y]
                gain += w / (ly - lx + 1) - w / (ly - lz + 1)
            for c in children[y]:
                if c not in selected:
                    stack.append(c)
    return gain
