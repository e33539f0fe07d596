r"""Binary trees, rotations, and the bijection with triangulations.

Trees are nested tuples: a leaf is the empty tuple (), an internal node
is (left, right).  Structural equality is tree equality.  Nodes are
addressed by preorder index counting every node, root first.

Rotation lifts a non-root internal node b above its parent a, keeping
the in-order sequence of subtrees intact:

        a                b
       / \              / \
      b   C    <->     A   a
     / \                  / \
    A   B                B   C

(left picture: b is the left child; the mirror image covers the right
child case).

The bijection with triangulations of the (n)-gon roots the dual tree at
the boundary edge (0, n-1): the triangle resting on an edge (i, j) has
some apex k, and the node for (i, j) gets children (i, k) and (k, j).
Edges (i, i+1) are the leaves.  Flips correspond to rotations.
"""

from .errors import FormatError, IsRoot, NotInternal, SizeMismatch
from .triangulation import Triangulation

LEAF = ()


def is_leaf(node):
    return node == LEAF


def leaf_count(node):
    if is_leaf(node):
        return 1
    return leaf_count(node[0]) + leaf_count(node[1])


def node_count(node):
    if is_leaf(node):
        return 1
    return 1 + node_count(node[0]) + node_count(node[1])


def internal_count(node):
    return node_count(node) - leaf_count(node)


def rotate(tree, idx):
    """Rotate the internal node with preorder index idx above its parent."""
    if is_leaf(tree) or idx == 0:
        raise IsRoot("cannot rotate the root")
    if not (0 < idx < node_count(tree)):
        raise NotInternal(f"no node with index {idx}")

    def rec(node, node_id):
        # invariant: node is internal and node_id < idx < node_id + count
        left, right = node
        left_id = node_id + 1
        right_id = left_id + node_count(left)
        if idx == left_id:
            if is_leaf(left):
                raise NotInternal(f"node {idx} is a leaf")
            bl, br = left
            return (bl, (br, right))
        if idx == right_id:
            if is_leaf(right):
                raise NotInternal(f"node {idx} is a leaf")
            bl, br = right
            return ((left, bl), br)
        if idx < right_id:
            return (rec(left, left_id), right)
        return (left, rec(right, right_id))

    return rec(tree, 0)


def rotation_sites(tree):
    """Preorder indices of all internal non-root nodes."""
    sites = []

    def walk(node, node_id):
        if is_leaf(node):
            return node_id + 1
        if node_id != 0:
            sites.append(node_id)
        after_left = walk(node[0], node_id + 1)
        return walk(node[1], after_left)

    walk(tree, 0)
    return sites


def rotation_neighbors(tree):
    """All trees one rotation away (one per internal non-root node)."""
    return [rotate(tree, i) for i in rotation_sites(tree)]


def tree_from_triangulation(t):
    """Dual tree rooted at the boundary edge (0, n-1)."""

    def build(i, j):
        if j == i + 1:
            return LEAF
        for k in range(i + 1, j):
            if t.has_edge((i, k)) and t.has_edge((k, j)):
                return (build(i, k), build(k, j))
        raise SizeMismatch(f"no triangle on edge ({i}, {j})")

    return build(0, t.n - 1)


def triangulation_from_tree(tree):
    """Inverse of tree_from_triangulation."""
    n = leaf_count(tree) + 1
    diags = []

    def place(node, i, j):
        if is_leaf(node):
            return
        k = i + leaf_count(node[0])
        if k - i >= 2:
            diags.append((i, k))
        if j - k >= 2:
            diags.append((k, j))
        place(node[0], i, k)
        place(node[1], k, j)

    place(tree, 0, n - 1)
    return Triangulation(n, diags)


def rotation_distance(a, b, budget=None):
    """Minimum number of rotations from tree a to tree b."""
    if leaf_count(a) != leaf_count(b):
        raise SizeMismatch(
            f"trees have {leaf_count(a)} and {leaf_count(b)} leaves"
        )
    from .distance import exact_distance

    ta = triangulation_from_tree(a)
    tb = triangulation_from_tree(b)
    dist, _ = exact_distance(ta, tb, budget=budget)
    return dist


def enumerate_trees(internal):
    """All binary trees with the given number of internal nodes."""
    if internal == 0:
        return [LEAF]
    out = []
    for k in range(internal):
        for left in enumerate_trees(k):
            for right in enumerate_trees(internal - 1 - k):
                out.append((left, right))
    return out


# --- text format ------------------------------------------------------------
#
# One line, preorder tokens: I for an internal node, E for a leaf.
# Example: "I I E E E" is the tree ((E, E), E).


def format_tree(tree):
    tokens = []

    def walk(node):
        if is_leaf(node):
            tokens.append("E")
        else:
            tokens.append("I")
            walk(node[0])
            walk(node[1])

    walk(tree)
    return " ".join(tokens) + "\n"


def parse_tree(text):
    tokens = text.split()
    pos = 0

    def rec():
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("tree tokens exhausted early")
        tok = tokens[pos]
        pos += 1
        if tok == "E":
            return LEAF
        if tok == "I":
            left = rec()
            right = rec()
            return (left, right)
        raise FormatError(f"bad tree token {tok!r}")

    tree = rec()
    if pos != len(tokens):
        raise FormatError("trailing tree tokens")
    return tree
