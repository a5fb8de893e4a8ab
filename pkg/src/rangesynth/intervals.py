"""Balanced interval trees over half-open position ranges.

Both the regular and the counting synthesizers carve a word's position range
into a binary tree by midpoint splits: node (i, j] with i + 1 < j splits at
m = floor((i + j) / 2) into children (i, m] and (m, j].  Leaves are the unit
ranges (k-1, k].  Proof layouts assign each tree node a contiguous block of
proof bits; the root and any width-1 boundaries are hardwired and get no
bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Node:
    lo: int            # exclusive left endpoint
    hi: int            # inclusive right endpoint
    left: "Node | None" = None
    right: "Node | None" = None
    parent: "Node | None" = None
    index: int = -1    # pre-order index
    offset: int = -1   # first proof bit for this node's label, -1 if none
    bits: int = 0      # number of proof bits for this node's label

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def length(self) -> int:
        return self.hi - self.lo


def build_tree(lo: int, hi: int) -> Node:
    """Midpoint-split tree over (lo, hi]."""
    root = Node(lo, hi)
    stack = [root]
    while stack:
        node = stack.pop()
        if node.hi - node.lo <= 1:
            continue
        mid = (node.lo + node.hi) // 2
        node.left = Node(node.lo, mid, parent=node)
        node.right = Node(mid, node.hi, parent=node)
        stack.append(node.right)
        stack.append(node.left)
    return root


def preorder(root: Node) -> list:
    out = []
    stack = [root]
    while stack:
        node = stack.pop()
        node.index = len(out)
        out.append(node)
        if not node.is_leaf:
            stack.append(node.right)
            stack.append(node.left)
    return out


def leaf_for_position(root: Node, k: int) -> Node:
    """Leaf whose range is (k-1, k]."""
    node = root
    while not node.is_leaf:
        node = node.left if k <= node.left.hi else node.right
    return node


def path_to_leaf(root: Node, k: int) -> list:
    """Nodes from root down to the leaf covering position k."""
    node = root
    out = [node]
    while not node.is_leaf:
        node = node.left if k <= node.left.hi else node.right
        out.append(node)
    return out


def chain_ands(builder, nodes_root_first, value_of) -> dict:
    """AND-accumulate per-node bits up each ancestor chain, shallowly.

    For every node in ``nodes_root_first`` (each node's parent, when it is
    in the set, must appear earlier) returns a wire computing the AND of
    ``value_of[node]`` over the node and all its ancestors within the set.
    Uses binary lifting so the added circuit depth is O(log chain length)
    rather than the chain length itself.
    """
    in_set = set(id(n) for n in nodes_root_first)
    depth_of: dict[int, int] = {}
    # lift[id(n)][k] = (wire = AND of values over the 2^k chain nodes starting
    # at n and going up, ancestor node just above that block or None)
    lift: dict[int, list] = {}
    for n in nodes_root_first:
        p = n.parent
        while p is not None and id(p) not in in_set:
            p = p.parent
        d = 0 if p is None else depth_of[id(p)] + 1
        depth_of[id(n)] = d
        levels = [(value_of[id(n)], p)]
        k = 0
        while True:
            w, anc = levels[k]
            if anc is None or len(lift[id(anc)]) <= k:
                break
            w2, anc2 = lift[id(anc)][k]
            levels.append((builder.and_f(w, w2), anc2))
            k += 1
        lift[id(n)] = levels
    out: dict[int, int] = {}
    for n in nodes_root_first:
        parts = []
        cur = n
        while cur is not None:
            levels = lift[id(cur)]
            w, anc = levels[-1]
            parts.append(w)
            cur = anc
        out[id(n)] = builder.and_tree_f(parts)
    return out
