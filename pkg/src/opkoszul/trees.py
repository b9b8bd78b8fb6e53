"""Leaf-labeled planar binary trees: the monomial basis of the free operad
on one binary generator.

A tree is a nested structure whose leaves are integer labels: a leaf is an
``int`` and an internal node is a pair ``(left, right)``.  A monomial of
arity n is such a tree whose label word (labels read left to right) is a
permutation of 1..n.  Monomials print in product notation with letters, so
``((1, 2), 3)`` prints as ``(ab)c``.

The symmetric group acts by relabeling: ``act(m, s)`` replaces label i with
``s[i-1]``.  With this convention the composite of two actions is
``act(m, compose(t, s))``.  The convention is pinned by tests reproducing
the full edge-colored action graph on the 12 arity-3 monomials.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .errors import CapExceededError
from .permutations import S3

DEFAULT_ARITY_CAP = 8

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _leaves(node, out: list) -> None:
    if isinstance(node, int):
        out.append(node)
    else:
        _leaves(node[0], out)
        _leaves(node[1], out)


def _shape_bits(node) -> int:
    # preorder, internal = 1, leaf = 0; fixed width 2n-1 for arity n
    bits = 0
    stack = [node]
    while stack:
        v = stack.pop()
        if isinstance(v, int):
            bits = bits << 1
        else:
            bits = (bits << 1) | 1
            stack.append(v[1])
            stack.append(v[0])
    return bits


def _shape_of(node):
    if isinstance(node, int):
        return 0
    return (_shape_of(node[0]), _shape_of(node[1]))


class TreeMonomial:
    """An immutable leaf-labeled planar binary tree."""

    __slots__ = ("tree", "labels", "shape_bits", "_hash")

    def __init__(self, tree):
        labels: list = []
        _leaves(tree, labels)
        n = len(labels)
        if sorted(labels) != list(range(1, n + 1)):
            raise ValueError(f"label word {labels} is not a permutation of 1..{n}")
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "shape_bits", _shape_bits(tree))
        object.__setattr__(self, "_hash", hash((self.shape_bits, self.labels)))

    def __setattr__(self, name, value):
        raise AttributeError("TreeMonomial is immutable")

    @property
    def arity(self) -> int:
        return len(self.labels)

    @property
    def key(self) -> tuple:
        """Canonical injective encoding: (preorder shape bits, label word)."""
        return (self.shape_bits, self.labels)

    @property
    def shape(self):
        return _shape_of(self.tree)

    def __eq__(self, other):
        return (
            isinstance(other, TreeMonomial)
            and self.shape_bits == other.shape_bits
            and self.labels == other.labels
        )

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{self}>"

    def __str__(self):
        return render_tree(self.tree)

    @staticmethod
    def from_string(text: str) -> "TreeMonomial":
        """Parse product notation, e.g. ``(ab)c`` or ``a(cb)``."""
        tree, pos = _parse_term(text, 0)
        if pos != len(text):
            raise ValueError(f"trailing input in monomial {text!r}")
        return TreeMonomial(tree)


def render_tree(node) -> str:
    if isinstance(node, int):
        return LETTERS[node - 1]

    def part(child):
        s = render_tree(child)
        return s if isinstance(child, int) else f"({s})"

    return part(node[0]) + part(node[1])


def _parse_term(text: str, pos: int):
    items = []
    while pos < len(text):
        ch = text[pos]
        if ch == "(":
            sub, pos = _parse_term(text, pos + 1)
            if pos >= len(text) or text[pos] != ")":
                raise ValueError(f"unbalanced parenthesis in {text!r}")
            pos += 1
            items.append(sub)
        elif ch.isalpha():
            items.append(LETTERS.index(ch) + 1)
            pos += 1
        else:
            break
    if not items:
        raise ValueError(f"empty term in {text!r}")
    node = items[0]
    for item in items[1:]:
        node = (node, item)
    return node, pos


# the two arity-2 generators: x = ab and y = x.(1 2) = ba
X = TreeMonomial((1, 2))
Y = TreeMonomial((2, 1))
LEAF = TreeMonomial(1)


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple:
    """All planar binary tree shapes with n leaves, sorted by shape bits."""
    if n == 1:
        return (0,)
    out = []
    for k in range(1, n):
        for left in shapes(k):
            for right in shapes(n - k):
                out.append((left, right))
    out.sort(key=_shape_bits)
    return tuple(out)


def build(shape, labels) -> TreeMonomial:
    it = iter(labels)

    def go(s):
        if s == 0:
            return next(it)
        return (go(s[0]), go(s[1]))

    return TreeMonomial(go(shape))


def enumerate_monomials(n: int, cap: int | None = None):
    """Yield the n!*Catalan(n-1) monomials of arity n in canonical order."""
    cap = DEFAULT_ARITY_CAP if cap is None else cap
    if n < 1:
        raise ValueError("arity must be >= 1")
    if n > cap:
        raise CapExceededError("arity", n, cap)
    from itertools import permutations

    for shape in shapes(n):
        for labels in permutations(range(1, n + 1)):
            yield build(shape, labels)


def count_monomials(n: int) -> int:
    return factorial(n) * catalan(n - 1)


def act(m: TreeMonomial, sigma: tuple) -> TreeMonomial:
    """Relabel: label i becomes sigma[i-1]; the shape is unchanged."""
    if len(sigma) != m.arity:
        raise ValueError(
            f"permutation degree {len(sigma)} does not match arity {m.arity}"
        )

    def go(node):
        if isinstance(node, int):
            return sigma[node - 1]
        return (go(node[0]), go(node[1]))

    return TreeMonomial(go(m.tree))


def mirror(m: TreeMonomial) -> TreeMonomial:
    """Swap the children of every internal node (the reverse automorphism)."""

    def go(node):
        if isinstance(node, int):
            return node
        return (go(node[1]), go(node[0]))

    return TreeMonomial(go(m.tree))


def graft(m: TreeMonomial, i: int, m2: TreeMonomial) -> TreeMonomial:
    """Operadic partial composition: substitute m2 into the leaf labeled i."""
    k = m.arity
    if not 1 <= i <= k:
        raise ValueError(f"position {i} out of range 1..{k}")
    shift = m2.arity - 1

    def relabel_outer(node):
        if isinstance(node, int):
            if node == i:
                return relabel_inner(m2.tree)
            return node + shift if node > i else node
        return (relabel_outer(node[0]), relabel_outer(node[1]))

    def relabel_inner(node):
        if isinstance(node, int):
            return node + i - 1
        return (relabel_inner(node[0]), relabel_inner(node[1]))

    return TreeMonomial(relabel_outer(m.tree))


class FrameOccurrence:
    """A locus where an arity-3 relation applies: an internal edge of a
    monomial together with the induced arity-3 frame and the three maximal
    subtrees hanging off the edge, in left-to-right order."""

    __slots__ = ("host", "edge", "frame", "slot_subtrees", "_path")

    def __init__(self, host, edge, frame, slot_subtrees, path):
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "edge", edge)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "slot_subtrees", slot_subtrees)
        object.__setattr__(self, "_path", path)

    def __setattr__(self, name, value):
        raise AttributeError("FrameOccurrence is immutable")

    def reassemble(self, m3: TreeMonomial) -> TreeMonomial:
        """Host with the frame replaced by the arity-3 monomial m3; the leaf
        of m3 labeled j receives slot subtree j."""
        if m3.arity != 3:
            raise ValueError("replacement must have arity 3")
        slots = self.slot_subtrees

        def fill(node):
            if isinstance(node, int):
                return slots[node - 1]
            return (fill(node[0]), fill(node[1]))

        fragment = fill(m3.tree)
        return TreeMonomial(_replace_at(self.host.tree, self._path, fragment))

    def __repr__(self):
        return f"<occurrence {self.edge} of {self.host} with frame {self.frame}>"


def _replace_at(node, path, fragment):
    if not path:
        return fragment
    head, rest = path[0], path[1:]
    if head == 0:
        return (_replace_at(node[0], rest, fragment), node[1])
    return (node[0], _replace_at(node[1], rest, fragment))


FRAME_LEFT = TreeMonomial(((1, 2), 3))
FRAME_RIGHT = TreeMonomial((1, (2, 3)))


def occurrences(m: TreeMonomial) -> list:
    """One occurrence per internal edge, in preorder; empty below arity 3.

    An edge is recorded at its parent node: the fragment replaced on
    reassembly is the subtree rooted at that parent.
    """
    out = []

    def walk(node, path):
        if isinstance(node, int):
            return
        for side in (0, 1):
            child = node[side]
            if not isinstance(child, int):
                if side == 0:
                    frame = FRAME_LEFT
                    slots = (child[0], child[1], node[1])
                else:
                    frame = FRAME_RIGHT
                    slots = (node[0], child[0], child[1])
                out.append(FrameOccurrence(m, len(out), frame, slots, path))
        walk(node[0], path + (0,))
        walk(node[1], path + (1,))

    walk(m.tree, ())
    return out


MAG3 = tuple(enumerate_monomials(3))
MAG3_INDEX = {m: i for i, m in enumerate(MAG3)}

# the two orbits of the symmetric-group action on arity 3, named by shape
LEFT_ASSOC = tuple(m for m in MAG3 if m.shape == ((0, 0), 0))
RIGHT_ASSOC = tuple(m for m in MAG3 if m.shape == (0, (0, 0)))


def s3_orbit(m: TreeMonomial) -> frozenset:
    return frozenset(act(m, s) for s in S3)
