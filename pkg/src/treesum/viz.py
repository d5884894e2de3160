"""Graphviz export of a summary set.

Each member links to its lowest proper ancestor inside the set, which turns
the selection back into a small hierarchy.  Members with no selected
ancestor hang off a synthetic virtual root, except when such a member is
the tree's own root: then it already heads the picture and no virtual node
is emitted.  Output is deterministic: declarations and edges both follow
preorder.
"""
from __future__ import annotations

from typing import Iterable

from .tree import WeightedTree

VIRTUAL_ROOT = "__virtual_root__"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def summary_dot(tree: WeightedTree, members: Iterable[int]) -> str:
    """Render a summary set as a Graphviz digraph string."""
    selected = {tree.check_node(v) for v in members}
    ordered = sorted(selected, key=tree.pre_rank.__getitem__)

    edges = []
    needs_virtual = False
    for v in ordered:
        p = tree.parent[v]
        while p >= 0 and p not in selected:
            p = tree.parent[p]
        if p >= 0:
            edges.append((tree.ids[p], tree.ids[v]))
        elif v != tree.root:
            needs_virtual = True
            edges.append((None, tree.ids[v]))

    lines = ["digraph summary {"]
    for v in ordered:
        label = f"{tree.ids[v]} ({tree.feq[v]:g})"
        lines.append(f"  {_quote(tree.ids[v])} [label={_quote(label)}];")
    if needs_virtual:
        lines.append(f"  {_quote(VIRTUAL_ROOT)} [label=\"\", shape=point];")
    for src, dst in edges:
        lines.append(f"  {_quote(src if src is not None else VIRTUAL_ROOT)} -> {_quote(dst)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
