"""Expressions in two products, their rewriting to normal form, and the
monomial basis of the free algebra.

Expressions are fully parenthesised: ``a``, ``(a *1 b)``, ``((a *2 b) *1 c)``.

A monomial is in normal form when every ``*1`` node has a generator as its
left factor and every ``*2`` node has a left factor of tag 1 (a generator or
a ``*1`` node).  Normalization orients associativity left-to-right and uses
the four-term relation to remove ``*2`` nodes from left factors of ``*1``:

    R1  (x *1 y) *1 z  ->  x *1 (y *1 z)
    R2  (x *2 y) *2 z  ->  x *2 (y *2 z)
    R3  (x *2 y) *1 z  ->  x *2 (y *1 z) + x *1 (y *2 z) - (x *1 y) *2 z
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from ._ordering import text_key
from .exact_arith import LinComb, lincomb_sum


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


class TerminationError(AssertionError):
    """A rewrite step failed to decrease the termination measure."""


class Expr:
    """A generator (``op == 0``) or a binary node with ``op`` in {1, 2}."""

    __slots__ = ("op", "label", "left", "right", "degree", "_text", "_hash", "_key")

    def __init__(self, op: int, label: str | None = None, left: "Expr | None" = None, right: "Expr | None" = None):
        self.op = op
        self.label = label
        self.left = left
        self.right = right
        if op == 0:
            self.degree = 1
            self._text = label
        else:
            self.degree = left.degree + right.degree
            self._text = f"({left._text} *{op} {right._text})"
        self._hash = hash(self._text)
        self._key = None

    @property
    def is_gen(self) -> bool:
        return self.op == 0

    @property
    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = text_key(self._text)
        return self._key

    def leaves(self) -> list[str]:
        if self.op == 0:
            return [self.label]
        return self.left.leaves() + self.right.leaves()

    def __eq__(self, other) -> bool:
        return isinstance(other, Expr) and self._hash == other._hash and self._text == other._text

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Expr") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return self._text

    def __repr__(self) -> str:
        return f"Expr({self._text})"


def gen(label: str) -> Expr:
    return Expr(0, label)


def mul(op: int, left: Expr, right: Expr) -> Expr:
    if op not in (1, 2):
        raise ValueError(f"product index must be 1 or 2, got {op}")
    return Expr(op, None, left, right)


_TOKENS = re.compile(r"\s*(?:(\*[12])|([A-Za-z][A-Za-z0-9_]*)|(\()|(\)))")


def parse_expr(text: str, alphabet: Sequence[str] | None = None) -> Expr:
    """Parse ``Expr := Label | "(" Expr ("*1"|"*2") Expr ")"``."""
    pos = 0

    def token():
        nonlocal pos
        m = _TOKENS.match(text, pos)
        if not m:
            rest = text[pos:].lstrip()
            if not rest:
                raise ExprSyntaxError("unexpected end of input", text, len(text))
            raise ExprSyntaxError(f"unexpected character {rest[0]!r}", text, len(text) - len(rest))
        start = m.start(m.lastindex)
        pos = m.end()
        return m.lastindex, m.group(m.lastindex), start

    def expr():
        kind, val, start = token()
        if kind == 2:
            if alphabet is not None and val not in alphabet:
                raise ValueError(f"label {val!r} not in alphabet {list(alphabet)}")
            return gen(val)
        if kind != 3:
            raise ExprSyntaxError(f"expected label or '(' but got {val!r}", text, start)
        left = expr()
        kind, val, start = token()
        if kind != 1:
            raise ExprSyntaxError(f"expected '*1' or '*2' but got {val!r}", text, start)
        op = int(val[1])
        right = expr()
        kind, val, start = token()
        if kind != 4:
            raise ExprSyntaxError(f"expected ')' but got {val!r}", text, start)
        return mul(op, left, right)

    e = expr()
    if text[pos:].strip():
        raise ExprSyntaxError("trailing input", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
    return e


# -- normal form -----------------------------------------------------------


def top_tag(m: Expr) -> int:
    """Top-level operation tag of a normal-form monomial: 1 for generators and
    ``*1`` products, 2 for ``*2`` products."""
    return 2 if m.op == 2 else 1


def is_normal(m: Expr) -> bool:
    if m.op == 0:
        return True
    if m.op == 1 and m.left.op != 0:
        return False
    if m.op == 2 and m.left.op == 2:
        return False
    return is_normal(m.left) and is_normal(m.right)


def measure(m: Expr) -> tuple[int, int]:
    """(star-2 nodes inside left factors of star-1 nodes, summed left-factor sizes)."""
    return _measure(m)[:2]


@lru_cache(maxsize=None)
def _measure(m: Expr) -> tuple[int, int, int]:
    # returns (first component, second component, number of *2 nodes in m)
    if m.op == 0:
        return (0, 0, 0)
    l1, l2, lc = _measure(m.left)
    r1, r2, rc = _measure(m.right)
    first = l1 + r1 + (lc if m.op == 1 else 0)
    second = l2 + r2 + m.left.degree
    return (first, second, lc + rc + (m.op == 2))


def _rewrite_root(m: Expr) -> list[tuple[int, Expr]] | None:
    if m.op == 0 or m.left.op == 0:
        return None
    x, y, z = m.left.left, m.left.right, m.right
    if m.op == 1 and m.left.op == 1:
        return [(1, mul(1, x, mul(1, y, z)))]
    if m.op == 2 and m.left.op == 2:
        return [(1, mul(2, x, mul(2, y, z)))]
    if m.op == 1 and m.left.op == 2:
        return [
            (1, mul(2, x, mul(1, y, z))),
            (1, mul(1, x, mul(2, y, z))),
            (-1, mul(2, mul(1, x, y), z)),
        ]
    return None


def _rewrite_once(m: Expr) -> list[tuple[int, Expr]] | None:
    """Rewrite the innermost-leftmost redex of ``m``; None if ``m`` is normal."""
    if m.op == 0:
        return None
    sub = _rewrite_once(m.left)
    if sub is not None:
        return [(c, mul(m.op, e, m.right)) for c, e in sub]
    sub = _rewrite_once(m.right)
    if sub is not None:
        return [(c, mul(m.op, m.left, e)) for c, e in sub]
    return _rewrite_root(m)


@lru_cache(maxsize=None)
def _nf_monomial(m: Expr) -> LinComb:
    step = _rewrite_once(m)
    if step is None:
        return LinComb.single(m)
    before = measure(m)
    for _, e in step:
        after = measure(e)
        if not after < before:
            raise TerminationError(f"measure did not decrease: {m} {before} -> {e} {after}")
    return lincomb_sum((c, _nf_monomial(e)) for c, e in step)


def normal_form(x: LinComb | Expr) -> LinComb:
    """Normal form of an expression or a linear combination of expressions."""
    if isinstance(x, Expr):
        return _nf_monomial(x)
    return lincomb_sum((c, _nf_monomial(e)) for e, c in x.items())


# -- basis generation ------------------------------------------------------


def gen_multilinear_basis(labels: Sequence[str]) -> list[Expr]:
    """All basis monomials in which every label occurs exactly once.

    Order: first the ``*1`` monomials ``a_k *1 b'`` (k ascending), then the
    ``*2`` monomials ``b1 *2 b2`` by subset of the left factor.
    """
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"labels must be pairwise distinct: {list(labels)}")
    if not labels:
        raise ValueError("need at least one label")
    b1, b2 = _multilinear(labels)
    return list(b1) + list(b2)


@lru_cache(maxsize=None)
def _multilinear(labels: tuple) -> tuple[tuple, tuple]:
    """(tag-1 monomials, tag-2 monomials) on the ordered label set."""
    n = len(labels)
    if n == 1:
        return ((gen(labels[0]),), ())
    tag1 = []
    for k in range(n):
        rest = labels[:k] + labels[k + 1 :]
        r1, r2 = _multilinear(rest)
        g = gen(labels[k])
        tag1.extend(mul(1, g, b) for b in r1 + r2)
    tag2 = []
    for size in range(1, n):
        for idx in combinations(range(n), size):
            left = tuple(labels[i] for i in idx)
            right = tuple(labels[i] for i in range(n) if i not in idx)
            l1, _ = _multilinear(left)
            r1, r2 = _multilinear(right)
            tag2.extend(mul(2, b1, b2) for b1 in l1 for b2 in r1 + r2)
    return tuple(tag1), tuple(tag2)


def gen_word_monomials(degree: int, alphabet: Sequence[str]) -> list[Expr]:
    """Normal-form monomials of the given degree with leaves drawn freely from the alphabet."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    w1, w2 = _words(degree, tuple(alphabet))
    return list(w1) + list(w2)


@lru_cache(maxsize=None)
def _words(n: int, alphabet: tuple) -> tuple[tuple, tuple]:
    if n == 1:
        return tuple(gen(s) for s in alphabet), ()
    r1, r2 = _words(n - 1, alphabet)
    tag1 = tuple(mul(1, gen(s), b) for s in alphabet for b in r1 + r2)
    tag2 = []
    for k in range(1, n):
        l1, _ = _words(k, alphabet)
        q1, q2 = _words(n - k, alphabet)
        tag2.extend(mul(2, b1, b2) for b1 in l1 for b2 in q1 + q2)
    return tag1, tuple(tag2)


def count_basis_by_tag(n: int, method: str = "auto") -> tuple[int, int, int]:
    """``(beta_1n, beta_2n, beta_n)``: multilinear basis sizes on ``n`` labels by tag.

    ``method="enumerate"`` materializes the basis; ``"subsets"`` runs the
    same recursion over label subsets but only counts.  ``"auto"`` enumerates
    up to ``n = 6``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if method == "auto":
        method = "enumerate" if n <= 6 else "subsets"
    labels = tuple(f"a{i}" for i in range(1, n + 1))
    if method == "enumerate":
        tags = Counter(top_tag(m) for m in gen_multilinear_basis(labels))
        return tags[1], tags[2], tags[1] + tags[2]
    if method == "subsets":
        c1, c2 = _count_subsets(frozenset(range(n)))
        return c1, c2, c1 + c2
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def _count_subsets(s: frozenset) -> tuple[int, int]:
    if len(s) == 1:
        return 1, 0
    elems = sorted(s)
    tag1 = sum(sum(_count_subsets(s - {a})) for a in elems)
    tag2 = 0
    for size in range(1, len(elems)):
        for left in combinations(elems, size):
            left = frozenset(left)
            tag2 += _count_subsets(left)[0] * sum(_count_subsets(s - left))
    return tag1, tag2


def multidegree(m: Expr) -> tuple:
    """Sorted leaf multiset, used to block evaluation matrices."""
    return tuple(sorted(m.leaves()))


def expr_lincomb(terms: Iterable[tuple[Expr, object]]) -> LinComb:
    return LinComb(terms)


@lru_cache(maxsize=None)
def _all_exprs(n: int, alphabet: tuple) -> tuple:
    if n == 1:
        return tuple(gen(s) for s in alphabet)
    out = []
    for k in range(1, n):
        for left in _all_exprs(k, alphabet):
            for right in _all_exprs(n - k, alphabet):
                out.append(mul(1, left, right))
                out.append(mul(2, left, right))
    return tuple(out)


def all_expressions(degree: int, alphabet: Sequence[str]) -> list[Expr]:
    """Every expression of the given degree: all bracketings, colourings and leaf words."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    return list(_all_exprs(degree, tuple(alphabet)))


def random_expression(rng, degree: int, alphabet: Sequence[str]) -> Expr:
    """A random bracketing with random colours and leaves; ``rng`` is a ``random.Random``."""
    if degree == 1:
        return gen(rng.choice(list(alphabet)))
    k = rng.randint(1, degree - 1)
    return mul(rng.choice((1, 2)), random_expression(rng, k, alphabet), random_expression(rng, degree - k, alphabet))
