"""Evaluation of expressions in the tree algebra, its exact inverse, and
rank checks of the isomorphism at small degree."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from functools import lru_cache
from typing import Mapping, Sequence

from .reports import Report
from .exact_arith import LinComb, NoSolution, SparseMatrix, lincomb_sum, rank, solve
from .free_as2 import Expr, gen, gen_word_monomials, mul, multidegree
from .products import star_lin, star_tree
from .trees import EMPTY, PlanarTree, enumerate_trees


class SolveFailure(RuntimeError):
    """An evaluation block is singular or does not reach a tree.  This would
    contradict freeness of the tree algebra, so it is never silenced."""


class FuelExhausted(RuntimeError):
    pass


class UnassignedLabel(KeyError):
    pass


def generator_tree(label: str) -> PlanarTree:
    """The two-vertex tree whose non-root vertex carries ``label``."""
    return PlanarTree(((label, ()),))


# -- evaluation ------------------------------------------------------------


def eval_expr(x: LinComb | Expr, assignment: Mapping[str, PlanarTree] | None = None) -> LinComb:
    """Image of an expression (or combination) in the tree algebra.

    Generators go to ``assignment[label]``, by default the two-vertex tree.
    """
    if assignment is None:
        if isinstance(x, Expr):
            return _eval_default(x)
        return lincomb_sum((c, _eval_default(e)) for e, c in x.items())
    terms = [(x, 1)] if isinstance(x, Expr) else x.items()
    cache: dict = {}
    return lincomb_sum((c, _eval_with(e, assignment, cache)) for e, c in terms)


@lru_cache(maxsize=None)
def _eval_default(e: Expr) -> LinComb:
    if e.op == 0:
        return LinComb.single(generator_tree(e.label))
    return star_lin(e.op, _eval_default(e.left), _eval_default(e.right))


def _eval_with(e: Expr, assignment, cache) -> LinComb:
    if e in cache:
        return cache[e]
    if e.op == 0:
        if e.label not in assignment:
            raise UnassignedLabel(e.label)
        t = assignment[e.label]
        out = t if isinstance(t, LinComb) else LinComb.single(t)
    else:
        out = star_lin(e.op, _eval_with(e.left, assignment, cache), _eval_with(e.right, assignment, cache))
    cache[e] = out
    return out


# -- inversion -------------------------------------------------------------


@lru_cache(maxsize=None)
def _block(block: tuple) -> tuple[SparseMatrix, int]:
    """Evaluation matrix of all normal-form monomials with leaf multiset ``block``."""
    alphabet = tuple(sorted(set(block)))
    monos = [m for m in gen_word_monomials(len(block), alphabet) if multidegree(m) == block]
    m = SparseMatrix([_eval_default(e) for e in monos], monos)
    return m, rank(m)


def tree_to_basis(x: LinComb | PlanarTree, alphabet: Sequence[str] | None = None) -> LinComb:
    """Coordinates of a homogeneous tree combination in the normal-form monomial basis.

    ``alphabet`` restricts the admissible labels when given.  Raises
    :class:`SolveFailure` if an evaluation block is not invertible.
    """
    if isinstance(x, PlanarTree):
        x = LinComb.single(x)
    degrees = {t.degree for t in x}
    if len(degrees) > 1:
        raise ValueError(f"input is not homogeneous: degrees {sorted(degrees)}")
    if 0 in degrees:
        raise ValueError("degree-0 trees have no coordinates")
    groups: dict = defaultdict(dict)
    for t, c in x.items():
        labels = t.labels()
        if alphabet is not None and not set(labels) <= set(alphabet):
            raise ValueError(f"tree {t} uses labels outside {list(alphabet)}")
        groups[tuple(sorted(labels))][t] = c
    out = []
    for block in sorted(groups):
        m, r = _block(block)
        if r != len(m.rows):
            raise SolveFailure(f"evaluation block {block} has rank {r} < {len(m.rows)}")
        try:
            out.append((1, solve(m, LinComb(groups[block]))))
        except NoSolution as exc:
            raise SolveFailure(f"no coordinates for block {block}") from exc
    return lincomb_sum(out)


class _Pending:
    """Placeholder for a tree whose expansion is still in progress."""

    __slots__ = ("tree",)

    def __init__(self, tree: PlanarTree):
        self.tree = tree

    @property
    def sort_key(self) -> tuple:
        return ((2,),) + self.tree.sort_key

    def __eq__(self, other) -> bool:
        return isinstance(other, _Pending) and other.tree == self.tree

    def __hash__(self) -> int:
        return hash(("pending", self.tree))

    def __str__(self) -> str:
        return f"<{self.tree}>"


def decompose_generation(t: PlanarTree, fuel: int = 1000) -> LinComb:
    """Express a tree through degree-1 generators by the degree/root-arity recursion.

    One root child labeled ``s`` over subtree ``T'``: ``T' *1 s - T' *2 s``
    equals the tree plus terms of larger root arity, which are subtracted
    recursively.  Several root children, ``T = T'.T''``: ``T' *1 T''``
    contains the tree once plus terms of smaller root arity.

    The two cases can lead back to a tree that is still being expanded.  Such
    a tree is kept as an unknown; when its own expansion finishes with
    ``T = R + alpha*T`` and ``alpha != 1`` it is solved as ``R/(1 - alpha)``.
    ``alpha == 1`` or running out of ``fuel`` (one unit per tree expanded)
    raises :class:`FuelExhausted`.
    """
    if t.degree == 0:
        raise ValueError("the root-only tree is not generated by degree-1 elements")
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    budget = [fuel]
    done: dict = {}
    active: set = set()

    def expand(tr: PlanarTree) -> LinComb:
        if tr in done:
            return done[tr]
        if tr in active:
            return LinComb.single(_Pending(tr))
        if budget[0] <= 0:
            raise FuelExhausted(f"fuel of {fuel} exhausted")
        budget[0] -= 1
        active.add(tr)
        if tr.degree == 1:
            result = LinComb.single(gen(tr.branches[0][0]))
        elif tr.arity == 1:
            label, kids = tr.branches[0]
            sub = PlanarTree(kids)
            g = gen(label)
            # lower degree, so never refers back to a pending tree
            sub_expr = expand(sub)
            main = lincomb_sum(
                [(c, LinComb({mul(1, e, g): 1, mul(2, e, g): -1})) for e, c in sub_expr.items()]
            )
            s = generator_tree(label)
            extra = star_tree(1, sub, s) - star_tree(2, sub, s) - LinComb.single(tr)
            result = main - lincomb_sum((c, expand(u)) for u, c in extra.items())
        else:
            first = PlanarTree(tr.branches[:1])
            rest = PlanarTree(tr.branches[1:])
            e1, e2 = expand(first), expand(rest)
            main = LinComb((mul(1, a, b), ca * cb) for a, ca in e1.items() for b, cb in e2.items())
            extra = star_tree(1, first, rest) - LinComb.single(tr)
            result = main - lincomb_sum((c, expand(u)) for u, c in extra.items())
        me = _Pending(tr)
        alpha = result.coeff(me)
        if alpha == 1:
            raise FuelExhausted(f"the recursion for {tr} reduces to a vacuous identity")
        if alpha:
            result = (result - LinComb.single(me, alpha)) * (1 / (1 - alpha))
        active.discard(tr)
        for u, val in list(done.items()):
            c = val.coeff(me)
            if c:
                done[u] = val - LinComb.single(me, c) + result * c
        done[tr] = result
        return result

    return expand(t)


# -- rank checks -----------------------------------------------------------


@lru_cache(maxsize=None)
def binary_shapes(n: int) -> tuple:
    """Binary bracketings with ``n`` leaves as nested pairs; leaves are ``None``."""
    if n == 1:
        return (None,)
    out = []
    for k in range(1, n):
        for left in binary_shapes(k):
            for right in binary_shapes(n - k):
                out.append((left, right))
    return tuple(out)


def _fill(shape, ops, labels) -> Expr:
    """Instantiate a shape with node colourings (preorder) and leaf labels (left to right)."""
    ops_it, lab_it = iter(ops), iter(labels)

    def build(s):
        if s is None:
            return gen(next(lab_it))
        op = next(ops_it)
        return mul(op, build(s[0]), build(s[1]))

    return build(shape)


def multilinear_expressions(n: int, labels: Sequence[str] | None = None) -> list[Expr]:
    """Every shape x every colouring x every leaf order on ``n`` distinct labels."""
    labels = list(labels or [f"a{i}" for i in range(1, n + 1)])
    out = []
    for shape in binary_shapes(n):
        for ops in itertools.product((1, 2), repeat=n - 1):
            for perm in itertools.permutations(labels):
                out.append(_fill(shape, ops, perm))
    return out


def multilinear_rank_check(n: int, allow_large: bool = False) -> Report:
    """Rank of all evaluated multilinear expressions against ``n! * c_n``."""
    if n < 2 or n > 5:
        raise ValueError("n must be between 2 and 5")
    if n == 5 and not allow_large:
        raise ValueError("n = 5 builds a 26880-row matrix; pass allow_large=True")
    from .series import catalan

    exprs = multilinear_expressions(n)
    m = SparseMatrix([_eval_default(e) for e in exprs])
    r = rank(m)
    expected = math.factorial(n) * catalan(n)
    span_dim = len(enumerate_trees(n, ["x"])) * math.factorial(n)
    return Report(
        "multilinear_rank",
        r == expected == span_dim,
        {"n": n, "expressions": len(exprs), "rank": r, "expected": expected},
    )


def one_child_trees(degree: int, alphabet: Sequence[str]) -> list[PlanarTree]:
    return [t for t in enumerate_trees(degree, alphabet) if t.arity == 1]


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def gl_generation_check(max_degree: int, alphabet: Sequence[str]) -> list[Report]:
    """For each degree, ``*1``-words in one-root-child trees are linearly
    independent and span the degree component."""
    if max_degree > 4:
        raise ValueError("max_degree must be at most 4")
    reports = []
    gens = {d: one_child_trees(d, alphabet) for d in range(1, max_degree + 1)}
    for d in range(1, max_degree + 1):
        rows = []
        for comp in _compositions(d):
            for word in itertools.product(*(gens[k] for k in comp)):
                acc = LinComb.single(word[0])
                for g in word[1:]:
                    acc = star_lin(1, acc, LinComb.single(g))
                rows.append(acc)
        r = rank(SparseMatrix(rows))
        dim = len(enumerate_trees(d, alphabet))
        reports.append(
            Report(
                "gl_generation",
                r == len(rows) == dim,
                {"degree": d, "labels": len(alphabet), "generators": len(gens[d]), "words": len(rows), "rank": r, "expected": dim},
            )
        )
    return reports


__all__ = [
    "EMPTY",
    "FuelExhausted",
    "Report",
    "SolveFailure",
    "UnassignedLabel",
    "binary_shapes",
    "decompose_generation",
    "eval_expr",
    "generator_tree",
    "gl_generation_check",
    "multilinear_expressions",
    "multilinear_rank_check",
    "one_child_trees",
    "tree_to_basis",
]
