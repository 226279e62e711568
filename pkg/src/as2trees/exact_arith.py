"""Exact rational linear combinations and exact linear algebra over Q."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from ._ordering import canonical_key

Rational = Fraction


class NoSolution(ArithmeticError):
    """The right-hand side is not in the span of the matrix rows."""


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use int, str or Fraction")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``."""
    text = text.strip()
    if not text or "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    return str(value)


class LinComb:
    """Finitely supported linear combination with exact rational coefficients.

    Zero coefficients are never stored; iteration follows the canonical key
    order.  Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_order")

    def __init__(self, terms: Mapping[Hashable, object] | Iterable[tuple[Hashable, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for key, c in items:
            c = to_rational(c)
            if c:
                acc[key] = acc.get(key, 0) + c
        self._terms = {k: v for k, v in acc.items() if v}
        self._order = None

    @classmethod
    def _raw(cls, terms: dict) -> "LinComb":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._order = None
        return obj

    @classmethod
    def single(cls, key, coeff=1) -> "LinComb":
        return cls({key: coeff})

    def keys(self) -> list:
        if self._order is None:
            self._order = sorted(self._terms, key=canonical_key)
        return self._order

    def items(self) -> list[tuple[Hashable, Fraction]]:
        return [(k, self._terms[k]) for k in self.keys()]

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def as_dict(self) -> dict:
        return dict(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.keys())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        return lincomb_combine(self, other, 1, 1)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return lincomb_combine(self, other, 1, -1)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({k: -v for k, v in self._terms.items()})

    def __mul__(self, scalar) -> "LinComb":
        s = to_rational(scalar)
        if not s:
            return LinComb()
        return LinComb._raw({k: v * s for k, v in self._terms.items()})

    __rmul__ = __mul__

    def map_keys(self, fn: Callable) -> "LinComb":
        return LinComb((fn(k), v) for k, v in self._terms.items())

    def render(self, fmt_key: Callable[[Hashable], str] = str) -> str:
        """``c1 KEY1 + c2 KEY2 - c3 KEY3``; the empty combination renders as ``0``."""
        if not self._terms:
            return "0"
        parts = []
        for i, (k, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            body = f"{format_rational(abs(c))} {fmt_key(k)}"
            if i == 0:
                parts.append(body if c > 0 else f"- {body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LinComb({self.render()})"


def lincomb_combine(a: LinComb, b: LinComb, ca=1, cb=1) -> LinComb:
    """Return ``ca*a + cb*b`` with zero terms dropped."""
    ca, cb = to_rational(ca), to_rational(cb)
    out: dict = {}
    if ca:
        for k, v in a._terms.items():
            out[k] = v * ca
    if cb:
        for k, v in b._terms.items():
            w = out.get(k, 0) + v * cb
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return LinComb._raw(out)


def lincomb_sum(parts: Iterable[tuple[object, LinComb]]) -> LinComb:
    """Sum of ``c * x`` over ``(c, x)`` pairs, accumulated in one dict."""
    out: dict = {}
    for c, x in parts:
        c = to_rational(c)
        if not c:
            continue
        for k, v in x._terms.items():
            out[k] = out.get(k, 0) + c * v
    return LinComb._raw({k: v for k, v in out.items() if v})


def parse_lincomb(text: str, parse_key: Callable[[str], Hashable]) -> LinComb:
    """Inverse of :meth:`LinComb.render` for keys that are a single label or a
    balanced parenthesised group; a missing coefficient means 1."""
    pos, n = 0, len(text)
    terms: list = []

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    skip()
    if text[pos:].strip() == "0":
        return LinComb()
    first = True
    while True:
        skip()
        if pos >= n:
            if first:
                raise ValueError("empty linear combination")
            break
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip()
        elif not first:
            raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
        start = pos
        while pos < n and (text[pos].isdigit() or text[pos] == "/"):
            pos += 1
        coeff = parse_rational(text[start:pos]) if pos > start else Fraction(1)
        skip()
        start = pos
        if pos < n and text[pos] == "(":
            depth = 0
            while pos < n:
                depth += {"(": 1, ")": -1}.get(text[pos], 0)
                pos += 1
                if depth == 0:
                    break
            if depth:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        else:
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
        if pos == start:
            raise ValueError(f"expected a term at position {start} in {text!r}")
        terms.append((parse_key(text[start:pos]), sign * coeff))
        first = False
    return LinComb(terms)


@dataclass(frozen=True)
class SparseMatrix:
    """Rows of linear combinations over a shared column-key domain.

    ``row_keys`` names the rows (defaults to 0, 1, ...); solutions of
    :func:`solve` are combinations keyed by them.
    """

    rows: Sequence[LinComb]
    row_keys: Sequence[Hashable] | None = field(default=None)

    def keys_for_rows(self) -> list:
        if self.row_keys is None:
            return list(range(len(self.rows)))
        if len(self.row_keys) != len(self.rows):
            raise ValueError("row_keys and rows differ in length")
        return list(self.row_keys)

    def columns(self) -> list:
        cols = set()
        for r in self.rows:
            cols.update(r.keys())
        return sorted(cols, key=canonical_key)


def _integer_row(row: LinComb, index: Mapping) -> dict[int, int]:
    den = 1
    for _, c in row._terms.items():
        den = lcm(den, c.denominator)
    out = {index[k]: int(c * den) for k, c in row._terms.items()}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {c: v // g for c, v in row.items()}
    return row


def rank(m: SparseMatrix) -> int:
    """Exact rank over Q.

    Rows are scaled to primitive integer vectors and reduced fraction-free
    against the pivot rows found so far; each combination is brought back to
    its primitive part, which keeps entries small.
    """
    index = {c: i for i, c in enumerate(m.columns())}
    pivots: dict[int, dict[int, int]] = {}
    for r in m.rows:
        if not r:
            continue
        row = _integer_row(r, index)
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = row
                break
            a, b = p[lead], row[lead]
            new = {c: a * v for c, v in row.items()}
            for c, v in p.items():
                w = new.get(c, 0) - b * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = _primitive(new) if new else new
    return len(pivots)


def solve(m: SparseMatrix, rhs: LinComb) -> LinComb:
    """Find ``x`` keyed by row keys with ``sum_i x_i * rows[i] == rhs``.

    Rows are taken as pivots in their given order; when the rows are
    dependent the later dependent rows get coefficient zero.

    Raises :class:`NoSolution` when ``rhs`` is outside the row span.
    """
    row_keys = m.keys_for_rows()
    cols = set(m.columns()) | set(rhs.keys())
    index = {c: i for i, c in enumerate(sorted(cols, key=canonical_key))}

    # pivot column -> (normalized row, combination of original rows)
    pivots: dict[int, tuple[dict[int, Fraction], dict[int, Fraction]]] = {}
    for ri, r in enumerate(m.rows):
        vec = {index[k]: v for k, v in r._terms.items()}
        combo = {ri: Fraction(1)}
        while vec:
            lead = min(vec)
            if lead not in pivots:
                inv = 1 / vec[lead]
                vec = {c: v * inv for c, v in vec.items()}
                combo = {c: v * inv for c, v in combo.items()}
                pivots[lead] = (vec, combo)
                break
            pvec, pcombo = pivots[lead]
            f = vec[lead]
            _axpy(vec, pvec, -f)
            _axpy(combo, pcombo, -f)

    vec = {index[k]: v for k, v in rhs._terms.items()}
    x: dict[int, Fraction] = {}
    while vec:
        lead = min(vec)
        if lead not in pivots:
            raise NoSolution("right-hand side is not in the row span")
        pvec, pcombo = pivots[lead]
        f = vec[lead]
        _axpy(vec, pvec, -f)
        _axpy(x, pcombo, f)
    return LinComb((row_keys[i], v) for i, v in x.items())


def _axpy(y: dict, x: Mapping, a) -> None:
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)
