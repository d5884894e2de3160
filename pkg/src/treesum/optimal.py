"""Exact summarizer: dynamic programming over (node, budget, nearest ancestor).

The optimal summary of a subtree rooted at u, given a budget of b nodes and
the nearest already-selected ancestor ``na`` above u, is the better of two
cases:

  yes:  select u, then distribute b - 1 among the child subtrees, whose
        nearest selected ancestor becomes u;
  no:   keep na as the representative of u (worth feq(u) * cor(na, u),
        zero without na) and distribute all b among the children.

Distributing a budget over an ordered child list is a small knapsack: with
G_i(b) the best total for children i.. with budget exactly b, G is computed
right to left by a max-plus convolution with each child's value array.
A child's array is indexed by budget and clamped at its subtree size, so
overfull assignments plateau instead of going infeasible: budgets may go
unspent, and the final answer is padded back to exactly k nodes with the
smallest-preorder leftovers (the objective is monotone, so padding never
hurts and the at-most-k optimum equals the exactly-k optimum).  The empty
suffix is worth 0 at budget 0 and -inf otherwise, which keeps the zero-budget
column an exact sum of the children's zero-budget values.

States are memoized per (node, nearest ancestor) as one value array over
budgets 0..min(k, subtree size); the nearest ancestor always lies on the
node's root path, so a node has at most depth + 1 states.  Evaluation walks
the postorder bottom-up with no recursion.  Value–choice ties prefer the
no-case; knapsack split ties prefer the lexicographically smallest budget
vector.  Reconstruction re-derives choices and splits from the memoized
arrays, so nothing beyond the value arrays is stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InconsistentMemo, InvalidK, UnknownNode
from .result import SummaryResult
from .scoring import _g_unchecked
from .tree import WeightedTree

_NEG = float("-inf")
_NO_ANCESTOR = -1


@dataclass(frozen=True)
class DpKey:
    """One DP state: subtree root, budget, nearest selected ancestor (or None)."""

    node: int
    budget: int
    ancestor: Optional[int] = None


@dataclass(frozen=True)
class DpEntry:
    """Memoized value plus the reconstruction decision for a state."""

    value: float
    choice: str  # "yes" | "no"
    split: Tuple[int, ...]  # per-child budgets of the winning case


class OtsSolver:
    """All DP state for one (tree, k) run.

    Builds every reachable (node, ancestor) value array eagerly, bottom-up.
    A single solver is single-use and single-threaded; concurrent runs on
    the same tree need separate solvers.
    """

    def __init__(self, tree: WeightedTree, k: int):
        if not 0 <= k <= tree.n:
            raise InvalidK(f"k={k} outside 0..{tree.n}")
        self.tree = tree
        self.k = k
        self.cap = [min(k, s) for s in tree.subtree_size]
        # memo[u][na] -> value array over budgets 0..cap[u]; na is a node
        # index or _NO_ANCESTOR
        self.memo: List[Dict[int, List[float]]] = [{} for _ in range(tree.n)]
        self._evaluate_all()

    # -- bulk evaluation --------------------------------------------------

    def _evaluate_all(self):
        tree = self.tree
        feq = tree.feq
        slv = tree.score_levels
        parent = tree.parent
        memo = self.memo
        cap = self.cap
        for u in tree.post_order:
            cap_u = cap[u]
            kids = tree.children[u]
            yes_tail = self._knap_values(kids, cap_u - 1, u)
            feq_u = feq[u]
            slv_u = slv[u]
            na = parent[u]
            na_keys = [_NO_ANCESTOR]
            while na >= 0:
                na_keys.append(na)
                na = parent[na]
            store = memo[u]
            for na in na_keys:
                no_tail = self._knap_values(kids, cap_u, na)
                base = 0.0 if na < 0 else feq_u / (slv_u - slv[na] + 1)
                vals = [base + no_tail[0]]
                for b in range(1, cap_u + 1):
                    yes_v = feq_u + yes_tail[b - 1]
                    no_v = base + no_tail[b]
                    vals.append(no_v if no_v >= yes_v else yes_v)
                store[na] = vals

    def _knap_values(self, kids, max_budget: int, na: int) -> List[float]:
        """Best exact-sum totals over the whole child list, budgets 0..max."""
        if max_budget < 0:
            return []
        G = [0.0] + [_NEG] * max_budget
        if not kids:
            return G
        memo = self.memo
        for x in reversed(kids):
            arr = memo[x][na]
            cx = len(arr) - 1
            top = arr[cx]
            new = []
            for b in range(max_budget + 1):
                best = _NEG
                for j in range(b + 1):
                    v = (arr[j] if j <= cx else top) + G[b - j]
                    if v > best:
                        best = v
                new.append(best)
            G = new
        return G

    def _knap_tables(self, kids, max_budget: int, na: int) -> List[List[float]]:
        """Suffix tables: tables[i] covers kids[i:]; tables[len] is the base."""
        tables = [[0.0] + [_NEG] * max_budget]
        memo = self.memo
        for x in reversed(kids):
            arr = memo[x][na]
            cx = len(arr) - 1
            top = arr[cx]
            G = tables[-1]
            new = []
            for b in range(max_budget + 1):
                best = _NEG
                for j in range(b + 1):
                    v = (arr[j] if j <= cx else top) + G[b - j]
                    if v > best:
                        best = v
                new.append(best)
            tables.append(new)
        tables.reverse()
        return tables

    def _split_from_tables(self, kids, tables, budget: int, na: int) -> Tuple[int, ...]:
        """Lexicographically smallest per-child budget split hitting tables[0][budget]."""
        memo = self.memo
        split = []
        b = budget
        for i, x in enumerate(kids):
            arr = memo[x][na]
            cx = len(arr) - 1
            top = arr[cx]
            target = tables[i][b]
            nxt = tables[i + 1]
            for j in range(b + 1):
                if (arr[j] if j <= cx else top) + nxt[b - j] == target:
                    split.append(j)
                    b -= j
                    break
            else:
                raise InconsistentMemo(f"no split reaches {target!r} at child {x}")
        return tuple(split)

    def _split(self, kids, budget: int, na: int) -> Tuple[float, Tuple[int, ...]]:
        tables = self._knap_tables(kids, budget, na)
        return tables[0][budget], self._split_from_tables(kids, tables, budget, na)

    # -- per-state queries -------------------------------------------------

    def _na_key(self, key: DpKey) -> int:
        u = self.tree.check_node(key.node)
        if key.ancestor is None:
            return _NO_ANCESTOR
        na = self.tree.check_node(key.ancestor)
        if na == u or not self.tree.is_ancestor(na, u):
            raise UnknownNode(
                f"{self.tree.ids[na]!r} is not a strict ancestor of {self.tree.ids[u]!r}"
            )
        return na

    def dp_eval(self, key: DpKey) -> DpEntry:
        """Value and winning decision for a state; budgets clamp at the subtree size."""
        na = self._na_key(key)
        u = key.node
        b = min(key.budget, self.cap[u])
        if b < 0:
            raise InvalidK(f"negative budget {key.budget}")
        value = self.memo[u][na][b]
        kids = self.tree.children[u]
        if b == 0:
            return DpEntry(value, "no", self._split(kids, 0, na)[1])
        yes_v = self.yes_case(key)
        no_v = self.no_case(key)
        if no_v >= yes_v:
            return DpEntry(value, "no", self._split(kids, b, na)[1])
        return DpEntry(value, "yes", self._split(kids, b - 1, u)[1])

    def yes_case(self, key: DpKey) -> float:
        """Score of selecting the node itself and splitting the rest below."""
        self._na_key(key)
        u = key.node
        b = min(key.budget, self.cap[u])
        if b < 1:
            raise InvalidK("yes-case requires budget >= 1")
        kids = self.tree.children[u]
        return self.tree.feq[u] + self._knap_values(kids, b - 1, u)[b - 1]

    def no_case(self, key: DpKey) -> float:
        """Score of skipping the node: ancestor's impact plus the child split."""
        na = self._na_key(key)
        u = key.node
        b = min(key.budget, self.cap[u])
        slv = self.tree.score_levels
        base = 0.0 if na < 0 else self.tree.feq[u] / (slv[u] - slv[na] + 1)
        kids = self.tree.children[u]
        return base + self._knap_values(kids, b, na)[b]

    def knapsack_combine(self, kids: Sequence[int], budget: int, ancestor: Optional[int]):
        """Optimal budget assignment over an ordered child list.

        Returns (value, split); ties prefer smaller budgets for earlier
        children.  Children may receive more than their subtree size, in
        which case the excess is simply unspent.
        """
        if budget < 0:
            raise InvalidK(f"negative budget {budget}")
        kids = [self.tree.check_node(x) for x in kids]
        na = _NO_ANCESTOR
        if ancestor is not None:
            na = self.tree.check_node(ancestor)
            for x in kids:
                if na == x or not self.tree.is_ancestor(na, x):
                    raise UnknownNode(
                        f"{self.tree.ids[na]!r} is not a strict ancestor of "
                        f"{self.tree.ids[x]!r}"
                    )
        return self._split(kids, budget, na)

    def reconstruct(self) -> set:
        """Walk the winning choices from the root down; returns the raw DP set."""
        tree = self.tree
        feq = tree.feq
        slv = tree.score_levels
        memo = self.memo
        selected = set()
        stack = [(tree.root, self.k, _NO_ANCESTOR)]
        while stack:
            u, b, na = stack.pop()
            b = min(b, self.cap[u])
            if b == 0:
                continue
            kids = tree.children[u]
            yes_v = feq[u] + self._knap_values(kids, b - 1, u)[b - 1]
            base = 0.0 if na < 0 else feq[u] / (slv[u] - slv[na] + 1)
            no_tables = self._knap_tables(kids, b, na)
            no_v = base + no_tables[0][b]
            if no_v >= yes_v:
                split = self._split_from_tables(kids, no_tables, b, na)
                child_na = na
            else:
                selected.add(u)
                yes_tables = self._knap_tables(kids, b - 1, u)
                split = self._split_from_tables(kids, yes_tables, b - 1, u)
                child_na = u
            for x, j in zip(kids, split):
                if j > 0:
                    stack.append((x, j, child_na))
        return selected

    def optimum(self) -> float:
        return self.memo[self.tree.root][_NO_ANCESTOR][self.k]

    def solve(self) -> SummaryResult:
        value = self.optimum()
        selected = self.reconstruct()
        if len(selected) < self.k:
            for v in self.tree.pre_order:
                if v not in selected:
                    selected.add(v)
                    if len(selected) == self.k:
                        break
        score = _g_unchecked(self.tree, selected)
        # the DP and the rescore accumulate the same terms in different
        # orders, so the guard scales with the magnitude of the value
        if abs(score - value) > max(1e-9, 1e-12 * abs(value)):
            raise InconsistentMemo(
                f"reconstructed set scores {score!r}, DP value is {value!r}"
            )
        pre_rank = self.tree.pre_rank
        return SummaryResult(
            selected=sorted(selected, key=pre_rank.__getitem__),
            score=score,
            algorithm="ots",
        )

    def state_count(self) -> int:
        return sum(len(d) * len(next(iter(d.values()))) for d in self.memo if d)


def ots(tree: WeightedTree, k: int) -> SummaryResult:
    """Optimal k-node summary via the budgeted tree DP."""
    if not 1 <= k <= tree.n:
        raise InvalidK(f"k={k} outside 1..{tree.n}")
    return OtsSolver(tree, k).solve()
