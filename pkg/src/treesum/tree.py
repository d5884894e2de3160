"""Rooted weighted trees stored as flat parallel arrays.

A WeightedTree is built once and never mutated.  Nodes are addressed by dense
integer indices in input-record order; the external string ids map to indices
through ``tree.index()``.  Construction precomputes, in O(n):

  * levels (hop distance from the root),
  * the preorder sequence and each node's preorder rank,
  * subtree sizes, so that "y is a descendant of x" is a single interval
    test: pre_rank[x] <= pre_rank[y] < pre_rank[x] + subtree_size[x].

Child order is input order and defines every deterministic traversal and
tie-break downstream.

EulerLcaIndex answers lowest-common-ancestor queries in O(1) after an
O(n log n) build (Euler tour + sparse table over tour levels).  The sparse
table rows are numpy index arrays so the build is vectorized.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DuplicateId,
    MultipleRoots,
    NegativeWeight,
    NoRoot,
    OrphanParentReference,
    UnknownNode,
)


class WeightedTree:
    """Immutable rooted tree with non-negative node weights.

    ``score_levels`` normally aliases ``levels``; a reduced tree built by
    ``treesum.reduction.vtree`` overrides it with the levels the nodes had in
    the original tree, which is what the correlation function must see.
    """

    __slots__ = (
        "n",
        "ids",
        "labels",
        "parent",
        "children",
        "feq",
        "levels",
        "score_levels",
        "root",
        "pre_order",
        "pre_rank",
        "post_order",
        "subtree_size",
        "important",
        "important_pre",
        "height",
        "_id_to_index",
    )

    def __init__(
        self,
        ids: Sequence[str],
        parent: Sequence[int],
        feq: Sequence[float],
        labels: Optional[Sequence[str]] = None,
        score_levels: Optional[Sequence[int]] = None,
    ):
        n = len(ids)
        if n == 0:
            raise NoRoot("empty node list")
        if len(parent) != n or len(feq) != n:
            raise ValueError("ids, parent and feq must have equal length")

        self.n = n
        self.ids = list(ids)
        self.labels = list(labels) if labels is not None else list(ids)
        self.parent = list(parent)
        self.feq = [float(w) for w in feq]

        self._id_to_index = {}
        for i, node_id in enumerate(self.ids):
            if node_id in self._id_to_index:
                raise DuplicateId(f"duplicate node id {node_id!r}")
            self._id_to_index[node_id] = i

        roots = [i for i in range(n) if self.parent[i] < 0]
        if not roots:
            raise NoRoot("no parentless record found")
        if len(roots) > 1:
            raise MultipleRoots(f"nodes {[self.ids[i] for i in roots]} all lack a parent")
        self.root = roots[0]

        for i, w in enumerate(self.feq):
            if w < 0:
                raise NegativeWeight(f"node {self.ids[i]!r} has weight {w}")

        self.children = [[] for _ in range(n)]
        for i in range(n):
            p = self.parent[i]
            if p >= 0:
                if p >= n:
                    raise OrphanParentReference(f"node {self.ids[i]!r} references index {p}")
                self.children[p].append(i)

        # Iterative DFS from the root: levels, preorder, subtree sizes.
        # A node never reached from the root sits on a parent cycle.
        self.levels = [-1] * n
        self.pre_order = []
        self.pre_rank = [-1] * n
        self.post_order = []
        self.subtree_size = [1] * n
        self.levels[self.root] = 0
        stack = [(self.root, 0)]
        while stack:
            node, child_pos = stack[-1]
            if child_pos == 0:
                self.pre_rank[node] = len(self.pre_order)
                self.pre_order.append(node)
            kids = self.children[node]
            if child_pos < len(kids):
                stack[-1] = (node, child_pos + 1)
                child = kids[child_pos]
                self.levels[child] = self.levels[node] + 1
                stack.append((child, 0))
            else:
                stack.pop()
                self.post_order.append(node)
                if stack:
                    self.subtree_size[stack[-1][0]] += self.subtree_size[node]
        if len(self.pre_order) != n:
            missing = [self.ids[i] for i in range(n) if self.pre_rank[i] < 0]
            raise CycleDetected(f"nodes unreachable from the root: {missing[:5]}")

        if score_levels is None:
            self.score_levels = self.levels
        else:
            if len(score_levels) != n:
                raise ValueError("score_levels length mismatch")
            self.score_levels = list(score_levels)

        self.important = [i for i in range(n) if self.feq[i] > 0]
        self.important_pre = sorted(self.important, key=self.pre_rank.__getitem__)
        self.height = max(self.levels)

    # -- lookups --------------------------------------------------------

    def index(self, node_id: str) -> int:
        try:
            return self._id_to_index[node_id]
        except KeyError:
            raise UnknownNode(f"unknown node id {node_id!r}") from None

    def indices(self, node_ids: Iterable[str]) -> list:
        return [self.index(i) for i in node_ids]

    def check_node(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise UnknownNode(f"node index {v} out of range")
        return v

    def is_ancestor(self, x: int, y: int) -> bool:
        """True when x is a (self-inclusive) ancestor of y."""
        rx = self.pre_rank[x]
        return rx <= self.pre_rank[y] < rx + self.subtree_size[x]

    def total_weight(self) -> float:
        return sum(self.feq[i] for i in self.important)

    def __repr__(self):
        return (
            f"WeightedTree(n={self.n}, important={len(self.important)}, "
            f"height={self.height}, root={self.ids[self.root]!r})"
        )


def build_tree(records) -> WeightedTree:
    """Build a WeightedTree from (id, parent_id, weight[, label]) records.

    ``records`` is an iterable of mappings with keys ``id``, ``parent``
    (None for the root), ``weight`` and optional ``label``.  Child order is
    record order.  Raises DuplicateId, MultipleRoots, NoRoot,
    OrphanParentReference, CycleDetected or NegativeWeight.
    """
    records = list(records)
    ids = []
    weights = []
    labels = []
    parent_ids = []
    seen = set()
    for rec in records:
        node_id = rec["id"]
        if node_id in seen:
            raise DuplicateId(f"duplicate node id {node_id!r}")
        seen.add(node_id)
        ids.append(node_id)
        parent_ids.append(rec.get("parent"))
        weights.append(float(rec["weight"]))
        labels.append(rec.get("label") or node_id)

    id_to_index = {node_id: i for i, node_id in enumerate(ids)}
    parent = []
    for node_id, parent_id in zip(ids, parent_ids):
        if parent_id is None:
            parent.append(-1)
        else:
            if parent_id not in id_to_index:
                raise OrphanParentReference(
                    f"node {node_id!r} references unknown parent {parent_id!r}"
                )
            parent.append(id_to_index[parent_id])
    return WeightedTree(ids, parent, weights, labels)


def preorder(tree: WeightedTree) -> list:
    """Node indices in preorder: root first, children in stored order."""
    return list(tree.pre_order)


def ancestors(tree: WeightedTree, v: int) -> list:
    """Ancestors of v from v up to the root, inclusive of v."""
    tree.check_node(v)
    out = [v]
    p = tree.parent[v]
    while p >= 0:
        out.append(p)
        p = tree.parent[p]
    return out


class EulerLcaIndex:
    """Euler tour + sparse table for O(1) LCA queries.

    ``tour`` holds node indices of a depth-first walk that re-visits a node
    after each child, so its length is 2n - 1.  ``first_pos[v]`` is the
    first tour position of v.  ``table[j]`` holds, for every window of
    length 2**j, the tour position of the minimum-level node; the LCA of a
    and b is the level-minimum over the tour span between their first
    occurrences.
    """

    __slots__ = ("tree", "tour", "first_pos", "tour_level", "table")

    def __init__(self, tree: WeightedTree):
        self.tree = tree
        n = tree.n
        m = 2 * n - 1
        tour = np.empty(m, dtype=np.int64)
        tour_level = np.empty(m, dtype=np.int32)
        first_pos = np.full(n, -1, dtype=np.int64)

        levels = tree.levels
        children = tree.children
        pos = 0
        stack = [(tree.root, 0)]
        while stack:
            node, child_pos = stack[-1]
            if child_pos == 0 and first_pos[node] < 0:
                first_pos[node] = pos
            tour[pos] = node
            tour_level[pos] = levels[node]
            pos += 1
            kids = children[node]
            if child_pos < len(kids):
                stack[-1] = (node, child_pos + 1)
                stack.append((kids[child_pos], 0))
            else:
                stack.pop()
        # each node is emitted once per visit: 1 + one re-visit per child
        assert pos == m
        self.tour = tour
        self.tour_level = tour_level
        self.first_pos = first_pos
        n_rows = max(1, m.bit_length())
        table = [np.arange(m, dtype=np.int64)]
        lev = self.tour_level
        for j in range(1, n_rows):
            half = 1 << (j - 1)
            if 2 * half > m:
                break
            prev = table[j - 1]
            left = prev[: m - 2 * half + 1]
            right = prev[half : m - half + 1]
            table.append(np.where(lev[left] <= lev[right], left, right))
        self.table = table

    def lca(self, a: int, b: int) -> int:
        tree = self.tree
        tree.check_node(a)
        tree.check_node(b)
        lo = self.first_pos[a]
        hi = self.first_pos[b]
        if lo > hi:
            lo, hi = hi, lo
        span = int(hi - lo + 1)
        j = span.bit_length() - 1
        row = self.table[j]
        p = row[lo]
        q = row[hi - (1 << j) + 1]
        lev = self.tour_level
        return int(self.tour[p] if lev[p] <= lev[q] else self.tour[q])

    def distance(self, a: int, b: int) -> int:
        """Hop count of the unique path between a and b."""
        c = self.lca(a, b)
        levels = self.tree.levels
        return levels[a] + levels[b] - 2 * levels[c]


def lca(index: EulerLcaIndex, a: int, b: int) -> int:
    """Deepest common ancestor of a and b (self-inclusive)."""
    return index.lca(a, b)
