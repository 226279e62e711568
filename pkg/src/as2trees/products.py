"""The two grafting products on trees, the coproduct, and pencil products on
the tensor square.

``T1 *1 T2`` grafts the root branches of ``T1`` onto arbitrary vertices of
``T2``; ``T1 *2 T2`` only onto vertices that already have children.  Grafted
branches become the leftmost children of their target, in their original
order.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import product
from typing import Sequence

from .exact_arith import LinComb, lincomb_sum
from .trees import EMPTY, PlanarTree, VertexAddr, _internal, _vertices, concat


class DegreeZeroOperand(ValueError):
    """The root-only tree was used as a product operand outside unital mode."""


def graft(t1: PlanarTree, t2: PlanarTree, f: Sequence[VertexAddr]) -> PlanarTree:
    """Graft branch ``i`` of ``t1`` onto vertex ``f[i]`` of ``t2``."""
    if len(f) != t1.arity:
        raise ValueError(f"grafting map has {len(f)} entries, {t1} has {t1.arity} root branches")
    valid = set(_vertices(t2))
    targets: dict = defaultdict(list)
    for i, addr in enumerate(f):
        addr = tuple(addr)
        if addr not in valid:
            raise ValueError(f"invalid vertex address {addr} for {t2}")
        targets[addr].append(t1.branches[i])
    return PlanarTree(_graft_forest(t2.branches, (), targets))


def _graft_forest(forest, addr, targets) -> tuple:
    new = []
    for i, (label, kids) in enumerate(forest, 1):
        child = addr + (i,)
        new.append((label, _graft_forest(kids, child, targets)))
    return tuple(targets.get(addr, ())) + tuple(new)


def _check_operands(t1: PlanarTree, t2: PlanarTree) -> None:
    if t1.degree == 0 or t2.degree == 0:
        raise DegreeZeroOperand("the root-only tree () is not a valid operand in strict mode")


@lru_cache(maxsize=None)
def _star(t1: PlanarTree, t2: PlanarTree, op: int) -> LinComb:
    targets = _vertices(t2) if op == 1 else _internal(t2)
    acc: dict = defaultdict(int)
    for f in product(targets, repeat=t1.arity):
        acc[graft(t1, t2, f)] += 1
    return LinComb(acc)


def star1(t1: PlanarTree, t2: PlanarTree) -> LinComb:
    """Sum of graftings over all maps from root branches of ``t1`` to vertices of ``t2``."""
    _check_operands(t1, t2)
    return _star(t1, t2, 1)


def star2(t1: PlanarTree, t2: PlanarTree) -> LinComb:
    """Sum of graftings over all maps into the internal vertices of ``t2``."""
    _check_operands(t1, t2)
    return _star(t1, t2, 2)


def star_tree(op: int, t1: PlanarTree, t2: PlanarTree, unital: bool = False) -> LinComb:
    if op not in (1, 2):
        raise ValueError(f"product index must be 1 or 2, got {op}")
    if unital:
        if t1.degree == 0:
            return LinComb.single(t2)
        if t2.degree == 0:
            return LinComb.single(t1)
    _check_operands(t1, t2)
    return _star(t1, t2, op)


def star_lin(op: int, x: LinComb, y: LinComb, unital: bool = False) -> LinComb:
    """Bilinear extension of ``star1``/``star2``.

    With ``unital`` the root-only tree ``()`` is a two-sided unit for both
    products; otherwise it is rejected.
    """
    return lincomb_sum(
        (a * b, star_tree(op, s, t, unital)) for s, a in x.items() for t, b in y.items()
    )


def pencil_lin(lam, mu, x: LinComb, y: LinComb, unital: bool = False) -> LinComb:
    """``lam * (x *1 y) + mu * (x *2 y)``."""
    parts = []
    if lam:
        parts.append((lam, star_lin(1, x, y, unital)))
    if mu:
        parts.append((mu, star_lin(2, x, y, unital)))
    return lincomb_sum(parts)


def coproduct(t: PlanarTree) -> LinComb:
    """Split the root branches into two order-preserving complementary parts."""
    k = t.arity
    acc: dict = defaultdict(int)
    for mask in range(1 << k):
        left = tuple(b for i, b in enumerate(t.branches) if mask >> i & 1)
        right = tuple(b for i, b in enumerate(t.branches) if not mask >> i & 1)
        acc[(PlanarTree(left), PlanarTree(right))] += 1
    return LinComb(acc)


def coproduct_lin(x: LinComb) -> LinComb:
    return lincomb_sum((c, coproduct(t)) for t, c in x.items())


def counit(x: LinComb):
    return x.coeff(EMPTY)


def tensor(x: LinComb, y: LinComb) -> LinComb:
    """``x (x) y`` as a combination of tree pairs."""
    return LinComb(((s, t), a * b) for s, a in x.items() for t, b in y.items())


def tensor_star(op: int, x: LinComb, y: LinComb, unital: bool = True) -> LinComb:
    """Slotwise product ``(a1 (x) b1)(a2 (x) b2) = a1*a2 (x) b1*b2``."""
    parts = []
    for (a1, b1), c1 in x.items():
        for (a2, b2), c2 in y.items():
            left = star_tree(op, a1, a2, unital)
            right = star_tree(op, b1, b2, unital)
            parts.append((c1 * c2, tensor(left, right)))
    return lincomb_sum(parts)


def pencil_tensor_product(lam, mu, x: LinComb, y: LinComb, unital: bool = False) -> LinComb:
    """Pencil product on pair combinations: each slot uses ``lam *1 + mu *2``."""
    parts = []
    for (a1, b1), c1 in x.items():
        for (a2, b2), c2 in y.items():
            left = pencil_lin(lam, mu, LinComb.single(a1), LinComb.single(a2), unital)
            right = pencil_lin(lam, mu, LinComb.single(b1), LinComb.single(b2), unital)
            parts.append((c1 * c2, tensor(left, right)))
    return lincomb_sum(parts)


def four_term_defect(p, q, a, b, c) -> LinComb:
    """``(a p b) q c + (a q b) p c - a p (b q c) - a q (b p c)`` for binary maps ``p``, ``q``."""
    lhs = q(p(a, b), c) + p(q(a, b), c)
    rhs = p(a, q(b, c)) + q(a, p(b, c))
    return lhs - rhs


def render_pair(key) -> str:
    s, t = key
    return f"{s} (x) {t}"


__all__ = [
    "DegreeZeroOperand",
    "graft",
    "star1",
    "star2",
    "star_tree",
    "star_lin",
    "pencil_lin",
    "coproduct",
    "coproduct_lin",
    "counit",
    "tensor",
    "tensor_star",
    "pencil_tensor_product",
    "four_term_defect",
    "render_pair",
    "concat",
]
