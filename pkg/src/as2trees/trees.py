"""Labeled planar rooted trees.

A tree is stored as the tuple of its root branches.  A branch is a pair
``(label, children)`` where ``children`` is again a tuple of branches, so the
whole structure is a nested tuple and hashes structurally.  The root carries
no label.

Text form::

    Tree   := "(" Forest ")"
    Forest := Node*                      (whitespace separated)
    Node   := Label | Label "(" Forest ")"
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from ._ordering import text_key

Branch = tuple  # (label: str, children: tuple[Branch, ...])
VertexAddr = tuple  # 1-based child indices from the root; () is the root

_LABEL = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


class UnknownLabelError(ValueError):
    pass


class PlanarTree:
    __slots__ = ("branches", "_hash", "_text", "_key", "_degree")

    def __init__(self, branches: Iterable[Branch] = ()):
        self.branches: tuple = tuple(branches)
        self._hash = hash(self.branches)
        self._text = None
        self._key = None
        self._degree = None

    @property
    def degree(self) -> int:
        if self._degree is None:
            self._degree = _forest_size(self.branches)
        return self._degree

    @property
    def arity(self) -> int:
        """Number of children of the root."""
        return len(self.branches)

    @property
    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = text_key(str(self))
        return self._key

    def labels(self) -> list[str]:
        out: list[str] = []
        stack = list(reversed(self.branches))
        while stack:
            label, kids = stack.pop()
            out.append(label)
            stack.extend(reversed(kids))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, PlanarTree) and self._hash == other._hash and self.branches == other.branches

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "PlanarTree") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self._text is None:
            self._text = "(" + _render_forest(self.branches) + ")"
        return self._text

    def __repr__(self) -> str:
        return f"PlanarTree({self})"


EMPTY = PlanarTree()


def _forest_size(forest) -> int:
    return sum(1 + _forest_size(kids) for _, kids in forest)


def _render_forest(forest) -> str:
    parts = []
    for label, kids in forest:
        parts.append(f"{label}({_render_forest(kids)})" if kids else label)
    return " ".join(parts)


def parse_tree(text: str, alphabet: Sequence[str] | None = None) -> PlanarTree:
    """Parse the bracket notation.  With ``alphabet`` given, labels outside it
    are rejected."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def forest_until_close():
        nonlocal pos
        nodes = []
        while True:
            skip_ws()
            if pos >= n:
                raise TreeSyntaxError("unexpected end of input, expected ')'", text, pos)
            if text[pos] == ")":
                pos += 1
                return tuple(nodes)
            m = _LABEL.match(text, pos)
            if not m:
                raise TreeSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
            label = m.group()
            if alphabet is not None and label not in alphabet:
                raise UnknownLabelError(f"label {label!r} not in alphabet {list(alphabet)}")
            pos = m.end()
            if pos < n and text[pos] == "(":
                pos += 1
                nodes.append((label, forest_until_close()))
            else:
                nodes.append((label, ()))

    skip_ws()
    if pos >= n or text[pos] != "(":
        raise TreeSyntaxError("expected '('", text, pos)
    pos += 1
    branches = forest_until_close()
    skip_ws()
    if pos != n:
        raise TreeSyntaxError("trailing input", text, pos)
    return PlanarTree(branches)


def render_tree(t: PlanarTree) -> str:
    return str(t)


def tree(text: str) -> PlanarTree:
    """Shorthand for :func:`parse_tree` without an alphabet check."""
    return parse_tree(text)


def subforest(t: PlanarTree, addr: VertexAddr) -> tuple:
    """Children of the vertex at ``addr``."""
    forest = t.branches
    for i in addr:
        if not 1 <= i <= len(forest):
            raise IndexError(f"invalid vertex address {addr} for {t}")
        forest = forest[i - 1][1]
    return forest


def vertices(t: PlanarTree) -> list[VertexAddr]:
    """All vertices in preorder, root first."""
    return list(_vertices(t))


@lru_cache(maxsize=None)
def _vertices(t: PlanarTree) -> tuple:
    out: list = [()]

    def walk(forest, prefix):
        for i, (_, kids) in enumerate(forest, 1):
            addr = prefix + (i,)
            out.append(addr)
            walk(kids, addr)

    walk(t.branches, ())
    return tuple(out)


def internal_vertices(t: PlanarTree) -> list[VertexAddr]:
    """Vertices with at least one child, root included, in preorder."""
    return list(_internal(t))


@lru_cache(maxsize=None)
def _internal(t: PlanarTree) -> tuple:
    return tuple(a for a in _vertices(t) if subforest(t, a))


def concat(t1: PlanarTree, t2: PlanarTree) -> PlanarTree:
    """Identify the roots; branches of ``t1`` come first."""
    return PlanarTree(t1.branches + t2.branches)


def branch_decomposition(t: PlanarTree) -> list[PlanarTree]:
    return [PlanarTree((b,)) for b in t.branches]


def enumerate_trees(degree: int, alphabet: Sequence[str]) -> list[PlanarTree]:
    """All trees with ``degree`` labeled non-root vertices, in canonical order."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return sorted(PlanarTree(f) for f in _forests(degree, tuple(alphabet)))


@lru_cache(maxsize=None)
def _forests(n: int, alphabet: tuple) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for kids in _forests(first - 1, alphabet):
            for rest in _forests(n - first, alphabet):
                for label in alphabet:
                    out.append(((label, kids),) + rest)
    return tuple(out)


def default_alphabet(k: int) -> list[str]:
    return [f"x{i}" for i in range(1, k + 1)]
