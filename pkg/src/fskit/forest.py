"""Coloured binary trees and forests.

Trees are immutable recursive values.  Interior vertices carry a colour
(a lowercase token); the uncoloured shape used by :func:`narrow_tree`
carries ``None`` instead.  A caret word is the textual/DSL form of a tree:
a sequence of ``(colour, leaf_index)`` pairs applied left to right, each
gluing a coloured caret onto the indicated leaf (1-based, leaves counted
left to right).  ``a1 a1 a3`` is the complete depth-2 tree on colour a.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Optional


class ForestError(Exception):
    pass


class IndexOutOfRange(ForestError):
    pass


class ShapeMismatch(ForestError):
    pass


@dataclass(frozen=True)
class Tree:
    """A finite rooted full binary tree, every interior vertex coloured."""

    colour: Optional[str] = None
    left: Optional["Tree"] = None
    right: Optional["Tree"] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ForestError("interior vertex needs both children")


LEAF = Tree()

CaretWord = tuple[tuple[str, int], ...]
Forest = tuple[Tree, ...]


def node(colour: Optional[str], left: Tree, right: Tree) -> Tree:
    return Tree(colour, left, right)


def caret(colour: Optional[str]) -> Tree:
    return Tree(colour, LEAF, LEAF)


def leaf_count(t: Tree) -> int:
    if t.is_leaf:
        return 1
    return leaf_count(t.left) + leaf_count(t.right)


def caret_count(t: Tree) -> int:
    return leaf_count(t) - 1


def colours_of(t: Tree) -> set[str]:
    if t.is_leaf:
        return set()
    return {t.colour} | colours_of(t.left) | colours_of(t.right)


def is_monochromatic(t: Tree, colour: str) -> bool:
    return colours_of(t) <= {colour}


# ---------------------------------------------------------------------------
# caret words


def graft(t: Tree, i: int, colour: str) -> Tree:
    """Glue a coloured caret onto the i-th leaf of t (1-based)."""
    n = leaf_count(t)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"leaf index {i} out of range 1..{n}")
    if t.is_leaf:
        return caret(colour)
    nl = leaf_count(t.left)
    if i <= nl:
        return Tree(t.colour, graft(t.left, i, colour), t.right)
    return Tree(t.colour, t.left, graft(t.right, i - nl, colour))


def build_tree(word: CaretWord) -> Tree:
    t = LEAF
    for colour, i in word:
        t = graft(t, i, colour)
    return t


def read_back(t: Tree) -> CaretWord:
    """The canonical (preorder) caret word of t; inverse of build_tree."""
    out: list[tuple[str, int]] = []

    def rec(sub: Tree, pos: int) -> None:
        if sub.is_leaf:
            return
        out.append((sub.colour, pos))
        rec(sub.left, pos)
        rec(sub.right, pos + leaf_count(sub.left))

    rec(t, 1)
    return tuple(out)


_TOKEN = re.compile(r"([a-z]+)([0-9]+)$")


def parse_caret_word(text: str) -> CaretWord:
    """Parse whitespace-separated tokens like ``a1 a1 a3``."""
    word = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ForestError(f"bad caret token {tok!r}")
        colour, idx = m.group(1), int(m.group(2))
        if idx < 1:
            raise ForestError(f"leaf index must be >= 1 in {tok!r}")
        word.append((colour, idx))
    return tuple(word)


def format_caret_word(word: CaretWord) -> str:
    return " ".join(f"{c}{i}" for c, i in word)


# ---------------------------------------------------------------------------
# leaves and paths


def leaf_address(t: Tree, i: int) -> str:
    """Address of the i-th leaf as a word over {0,1}; lexicographically
    increasing in i."""
    n = leaf_count(t)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"leaf index {i} out of range 1..{n}")
    if t.is_leaf:
        return ""
    nl = leaf_count(t.left)
    if i <= nl:
        return "0" + leaf_address(t.left, i)
    return "1" + leaf_address(t.right, i - nl)


def leaf_addresses(t: Tree) -> tuple[str, ...]:
    if t.is_leaf:
        return ("",)
    return tuple("0" + a for a in leaf_addresses(t.left)) + tuple(
        "1" + a for a in leaf_addresses(t.right)
    )


def leaf_path(t: Tree, i: int) -> tuple[tuple[str, int], ...]:
    """Root-to-leaf trace of (colour, direction) pairs for the i-th leaf."""
    n = leaf_count(t)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"leaf index {i} out of range 1..{n}")
    if t.is_leaf:
        return ()
    nl = leaf_count(t.left)
    if i <= nl:
        return ((t.colour, 0),) + leaf_path(t.left, i)
    return ((t.colour, 1),) + leaf_path(t.right, i - nl)


# ---------------------------------------------------------------------------
# forests: composition and tensor


def forest_leaves(f: Forest) -> int:
    return sum(leaf_count(t) for t in f)


def compose(f: Forest, g: Forest) -> Forest:
    """Glue the i-th tree of g to the i-th leaf of f."""
    if forest_leaves(f) != len(g):
        raise ShapeMismatch(
            f"cannot compose: {forest_leaves(f)} leaves vs {len(g)} roots"
        )
    it = iter(g)

    def glue(t: Tree) -> Tree:
        if t.is_leaf:
            return next(it)
        return Tree(t.colour, glue(t.left), glue(t.right))

    return tuple(glue(t) for t in f)


def tensor(f: Forest, g: Forest) -> Forest:
    return f + g


def trivial_forest(n: int) -> Forest:
    return (LEAF,) * n


# ---------------------------------------------------------------------------
# pruning, narrow trees, vines


class End(enum.Enum):
    FIRST = "first"
    LAST = "last"


def prune_word(t: Tree, end: End) -> tuple[str, ...]:
    """Colours read from the root to the first (all-0 path) or last
    (all-1 path) leaf."""
    out = []
    while not t.is_leaf:
        out.append(t.colour)
        t = t.left if end is End.FIRST else t.right
    return tuple(out)


def narrow_tree(address: str) -> tuple[Tree, int]:
    """Smallest (uncoloured) tree containing the address as a leaf, and the
    1-based index of that leaf."""
    if any(ch not in "01" for ch in address):
        raise ForestError(f"bad address {address!r}")
    if address == "":
        return LEAF, 1
    sub, idx = narrow_tree(address[1:])
    if address[0] == "0":
        return Tree(None, sub, LEAF), idx
    return Tree(None, LEAF, sub), idx + 1


def right_vine(n: int, colour: Optional[str] = None) -> Tree:
    """Right-vine with n carets; leaves 1^{i-1}0 for i <= n and 1^n."""
    t = LEAF
    for _ in range(n):
        t = Tree(colour, LEAF, t)
    return t


def left_vine(n: int, colour: Optional[str] = None) -> Tree:
    t = LEAF
    for _ in range(n):
        t = graft(t, 1, colour)
    return t


def colour_count(t: Tree) -> dict[str, int]:
    counts: dict[str, int] = {}

    def rec(sub: Tree) -> None:
        if sub.is_leaf:
            return
        counts[sub.colour] = counts.get(sub.colour, 0) + 1
        rec(sub.left)
        rec(sub.right)

    rec(t)
    return counts


# ---------------------------------------------------------------------------
# vine decomposition


def vine_decomposition(word: CaretWord) -> CaretWord:
    """Normal form of a caret word under the rewrite
    (x,i)(y,j+1) -> (y,j)(x,i) for i < j, applied leftmost-first.

    Each rewrite strictly decreases the sum of leaf indices, so the loop
    terminates; the normal form is the unique vine decomposition.
    """
    w = list(word)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            (x, i), (y, m) = w[k], w[k + 1]
            if i < m - 1:
                w[k], w[k + 1] = (y, m - 1), (x, i)
                changed = True
                break
    return tuple(w)


def vines_of(word: CaretWord) -> tuple[CaretWord, ...]:
    """Split a vine-decomposed word into its maximal right-vine runs."""
    w = vine_decomposition(word)
    runs: list[list[tuple[str, int]]] = []
    for colour, i in w:
        if runs and i == runs[-1][-1][1] + 1:
            runs[-1].append((colour, i))
        else:
            runs.append([(colour, i)])
    return tuple(tuple(r) for r in runs)


# ---------------------------------------------------------------------------
# permutations


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def is_permutation(images: tuple[int, ...]) -> bool:
    return sorted(images) == list(range(1, len(images) + 1))


def is_cyclic_perm(images: tuple[int, ...]) -> bool:
    """True iff the permutation is a power of the cycle (1 2 ... n)."""
    n = len(images)
    if n == 0:
        return False
    shift = images[0] - 1
    return all(images[k] == (k + shift) % n + 1 for k in range(n))
