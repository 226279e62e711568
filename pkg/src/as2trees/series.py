"""Truncated power series with Laurent-polynomial coefficients, Catalan and
Narayana numbers, and the generating-function identities checked against
them."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Sequence

from .reports import Report


class NotACharacter(ValueError):
    pass


class QPoly:
    """Laurent polynomial in q with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        self.c: dict[int, Fraction] = {}
        for e, v in (coeffs or {}).items():
            v = Fraction(v)
            if v:
                self.c[int(e)] = v

    @classmethod
    def const(cls, v) -> "QPoly":
        return cls({0: v})

    @classmethod
    def monomial(cls, e: int, v=1) -> "QPoly":
        return cls({e: v})

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.c == other.c
        return self.c == QPoly.const(other).c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other: "QPoly") -> "QPoly":
        other = _as_qpoly(other)
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) + v
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly({e: -v for e, v in self.c.items()})

    def __sub__(self, other) -> "QPoly":
        return self + (-_as_qpoly(other))

    def __rsub__(self, other) -> "QPoly":
        return _as_qpoly(other) - self

    def __mul__(self, other) -> "QPoly":
        other = _as_qpoly(other)
        out: dict[int, Fraction] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return QPoly(out)

    __rmul__ = __mul__

    def coeff(self, e: int) -> Fraction:
        return self.c.get(e, Fraction(0))

    def at(self, q) -> Fraction:
        """Evaluate at a nonzero rational ``q``."""
        q = Fraction(q)
        return sum((v * q**e for e, v in self.c.items()), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def inverse(self) -> "QPoly":
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit in Q[q, 1/q]")
        (e, v), = self.c.items()
        return QPoly({-e: 1 / v})

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            sign = "-" if v < 0 else "+"
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QPoly({self})"


def _paren(c: QPoly) -> str:
    return f"({c})" if len(c.c) > 1 else str(c)


def _as_qpoly(x) -> QPoly:
    return x if isinstance(x, QPoly) else QPoly.const(x)


ORDINARY = "ordinary"
EXPONENTIAL = "exponential"


class QSeries:
    """Power series sum_n a_n(q) t^n truncated after degree ``order``.

    ``kind`` marks ordinary versus exponential coefficient conventions;
    arithmetic refuses to mix the two.
    """

    __slots__ = ("order", "coeffs", "kind")

    def __init__(self, order: int, coeffs: Sequence = (), kind: str = ORDINARY):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        self.kind = kind
        cs = [_as_qpoly(c) for c in list(coeffs)[: order + 1]]
        cs += [QPoly() for _ in range(order + 1 - len(cs))]
        self.coeffs = cs

    @classmethod
    def from_ints(cls, order: int, values: Mapping[int, object] | Sequence, kind: str = ORDINARY) -> "QSeries":
        if isinstance(values, Mapping):
            cs = [values.get(n, 0) for n in range(order + 1)]
        else:
            cs = list(values)
        return cls(order, [QPoly.const(v) for v in cs], kind)

    @classmethod
    def variable(cls, order: int, kind: str = ORDINARY) -> "QSeries":
        return cls(order, [0, 1], kind)

    def __getitem__(self, n: int) -> QPoly:
        return self.coeffs[n] if 0 <= n <= self.order else QPoly()

    def _check(self, other: "QSeries") -> int:
        if self.kind != other.kind:
            raise TypeError(f"cannot combine {self.kind} and {other.kind} series")
        return min(self.order, other.order)

    def _lift(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries(self.order, [_as_qpoly(other)], self.kind)

    def __add__(self, other) -> "QSeries":
        other = self._lift(other)
        n = self._check(other)
        return QSeries(n, [self[i] + other[i] for i in range(n + 1)], self.kind)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.order, [-c for c in self.coeffs], self.kind)

    def __sub__(self, other) -> "QSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            c = _as_qpoly(other)
            return QSeries(self.order, [c * a for a in self.coeffs], self.kind)
        n = self._check(other)
        out = [QPoly() for _ in range(n + 1)]
        for i in range(n + 1):
            a = self[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return QSeries(n, out, self.kind)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        out = QSeries(self.order, [1], self.kind)
        for _ in range(k):
            out = out * self
        return out

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def reciprocal(self) -> "QSeries":
        """1/self; the constant coefficient must be a monomial in q."""
        inv0 = self[0].inverse()
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = QPoly()
            for k in range(1, n + 1):
                if self[k]:
                    acc = acc + self[k] * out[n - k]
            out.append(-(inv0 * acc))
        return QSeries(self.order, out, self.kind)

    def __truediv__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self * _as_qpoly(other).inverse()
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "QSeries":
        return self._lift(other) * self.reciprocal()

    def compose(self, inner: "QSeries") -> "QSeries":
        """``self(inner)``; q in the outer coefficients is left untouched."""
        v = inner.valuation()
        if v is not None and v < 1:
            raise ValueError("inner series must have positive valuation")
        n = self._check(inner)
        out = QSeries(n, [self[0]], self.kind)
        power = QSeries(n, [1], self.kind)
        for k in range(1, n + 1):
            power = power * inner
            if self[k]:
                out = out + power * self[k]
        return out

    def negate_variable(self) -> "QSeries":
        """``t -> -t``."""
        return QSeries(self.order, [c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs)], self.kind)

    def specialize_q(self, q) -> "QSeries":
        return QSeries(self.order, [QPoly.const(c.at(q)) for c in self.coeffs], self.kind)

    def truncate(self, order: int) -> "QSeries":
        return QSeries(min(order, self.order), self.coeffs, self.kind)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        n = self._check(other)
        return all(self[i] == other[i] for i in range(n + 1))

    def __hash__(self):
        return hash((self.order, self.kind, tuple(hash(c) for c in self.coeffs)))

    def nonzero_terms(self) -> list[tuple[int, QPoly]]:
        return [(n, c) for n, c in enumerate(self.coeffs) if c]

    def render(self, var: str = "p1") -> str:
        """One line per nonzero coefficient: ``coeff(q) · var^n``."""
        lines = [f"{_paren(c)} · {var}^{n}" for n, c in self.nonzero_terms()]
        lines.append(f"O({var}^{self.order + 1})")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"QSeries(order={self.order}, {self.render().replace(chr(10), ' + ')})"


# -- numbers ---------------------------------------------------------------


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    if n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"narayana({n}, {k}) is out of range")
    return comb(n, k) * comb(n, k + 1) // n


def sl2_character(d: int) -> QPoly:
    """Character of the irreducible representation with highest weight ``d``."""
    return QPoly({d - 2 * i: 1 for i in range(d + 1)})


# -- series builders -------------------------------------------------------


NarayanaTable = Callable[[int, int], int]


def build_F_char(order: int, table: NarayanaTable = narayana) -> QSeries:
    """sum_n p1^n sum_k N(n,k) q^(n-1-2k)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    cs = [QPoly()]
    for n in range(1, order + 1):
        cs.append(QPoly({n - 1 - 2 * k: table(n, k) for k in range(n)}))
    return QSeries(order, cs)


def build_dual_char(order: int) -> QSeries:
    """p1 / ((1 - q p1)(1 - p1/q)) by series division."""
    p = QSeries.variable(order)
    q = QPoly.monomial(1)
    qi = QPoly.monomial(-1)
    return p / ((1 - p * q) * (1 - p * qi))


def catalan_series(order: int) -> QSeries:
    return QSeries.from_ints(order, {n: catalan(n) for n in range(1, order + 1)})


# -- checks ----------------------------------------------------------------


def _residual_report(name: str, residual: QSeries, **extra) -> Report:
    bad = residual.nonzero_terms()
    fields = {"order": residual.order, **extra, "residual": "0" if not bad else f"{bad[0][1]} at degree {bad[0][0]}"}
    return Report(name, not bad, fields)


def check_narayana_eq(order: int, table: NarayanaTable = narayana) -> Report:
    """t x N^2 - t x N + t N - N + 1 = 0 for N(t, x) = 1 + sum N(n,k) t^n x^k."""
    if order < 1:
        raise ValueError("order must be at least 1")
    cs = [QPoly.const(1)]
    for n in range(1, order + 1):
        cs.append(QPoly({k: table(n, k) for k in range(n)}))
    N = QSeries(order, cs)
    t = QSeries.variable(order)
    x = QPoly.monomial(1)
    residual = t * x * N * N - t * x * N + t * N - N + 1
    return _residual_report("narayana_eq", residual)


def check_funcas(order: int, F: QSeries | None = None) -> Report:
    """F = p1 (1 + q F)(1 + F/q), the denominator-free form of
    F / ((1 + qF)(1 + F/q)) = p1."""
    if order < 2:
        raise ValueError("order must be at least 2")
    F = build_F_char(order) if F is None else F.truncate(order)
    p = QSeries.variable(F.order)
    q, qi = QPoly.monomial(1), QPoly.monomial(-1)
    residual = F - p * (1 + F * q) * (1 + F * qi)
    return _residual_report("funcas", residual)


def check_koszul_gf(order: int, f: QSeries | None = None, f_dual: QSeries | None = None) -> Report:
    """f(-f_dual(-x)) = x.  Defaults: f = sum c_n x^n, f_dual = x/(1-x)^2."""
    if order < 2:
        raise ValueError("order must be at least 2")
    x = QSeries.variable(order)
    if f is None:
        f = catalan_series(order)
    if f_dual is None:
        f_dual = x / ((1 - x) * (1 - x))
    inner = -(f_dual.truncate(order).negate_variable())
    residual = f.truncate(order).compose(inner) - x
    return _residual_report("koszul_gf", residual)


def check_beta_eqs(order: int, counts: Callable[[int], tuple[int, int, int]] | None = None) -> Report:
    """Exponential generating series of the basis sizes split by tag satisfy
    beta_1 - x = x beta, beta = beta_1/(1 - beta_1) and f_As(beta_1) = beta."""
    if order < 2:
        raise ValueError("order must be at least 2")
    if counts is None:
        from .free_as2 import count_basis_by_tag as counts
    b1 = {0: 0}
    b = {0: 0}
    for n in range(1, order + 1):
        c1, _, c = counts(n)
        b1[n] = Fraction(c1, factorial(n))
        b[n] = Fraction(c, factorial(n))
    B1 = QSeries.from_ints(order, b1, EXPONENTIAL)
    B = QSeries.from_ints(order, b, EXPONENTIAL)
    x = QSeries.variable(order, EXPONENTIAL)
    r_eqbeta = B1 - x - x * B
    r_circ = B * (1 - B1) - B1
    f_as = QSeries.from_ints(order, {n: 1 for n in range(1, order + 1)}, EXPONENTIAL)
    r_lift = f_as.compose(B1) - B
    passed = r_eqbeta.is_zero() and r_circ.is_zero() and r_lift.is_zero()
    top = B[order].coeff(0) * factorial(order)
    return Report(
        "beta_eqs",
        passed,
        {
            "order": order,
            "eqbeta": "0" if r_eqbeta.is_zero() else "nonzero",
            "as_circ_beta1": "0" if r_circ.is_zero() else "nonzero",
            "lift": "0" if r_lift.is_zero() else "nonzero",
            f"beta_{order}": str(top),
        },
    )


def check_character_duality(order: int, F: QSeries | None = None, F_dual: QSeries | None = None) -> Report:
    """eps(F) o eps(F_dual) = p1 with eps(G)(p1) = G(-p1), restricted to p1 and q."""
    if order < 2:
        raise ValueError("order must be at least 2")
    F = build_F_char(order) if F is None else F.truncate(order)
    F_dual = build_dual_char(order) if F_dual is None else F_dual.truncate(order)
    residual = F.negate_variable().compose(F_dual.negate_variable()) - QSeries.variable(order)
    return _residual_report("character_duality", residual)


def sl2_decompose(chi: QPoly) -> list[tuple[int, int]]:
    """Multiplicities of irreducibles in a character, highest weight descending."""
    for e, v in chi.c.items():
        if v.denominator != 1 or v < 0:
            raise NotACharacter(f"coefficient {v} of q^{e} is not a nonnegative integer")
        if chi.coeff(-e) != v:
            raise NotACharacter(f"not symmetric under q <-> 1/q at exponent {e}")
    out = []
    top = max(chi.c, default=-1)
    for d in range(top, -1, -1):
        m = chi.coeff(d) - chi.coeff(d + 2)
        if m < 0:
            raise NotACharacter(f"negative multiplicity {m} for highest weight {d}")
        if m:
            out.append((d, int(m)))
    return out


def sl2_reconstruct(decomp: Iterable[tuple[int, int]]) -> QPoly:
    out = QPoly()
    for d, m in decomp:
        out = out + sl2_character(d) * m
    return out


def check_sl2_corollary(max_n: int, F: QSeries | None = None) -> Report:
    """Multiplicity of weight n-1-2k in the p1^n coefficient is N(n,k) - N(n,k-1)."""
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    F = build_F_char(max_n) if F is None else F
    failures = []
    rows = {}
    for n in range(1, max_n + 1):
        try:
            decomp = dict(sl2_decompose(F[n]))
        except NotACharacter as exc:
            failures.append(f"n={n}: {exc}")
            continue
        expected = {}
        for k in range((n - 1) // 2 + 1):
            m = narayana(n, k) - (narayana(n, k - 1) if k else 0)
            if m:
                expected[n - 1 - 2 * k] = m
        if decomp != expected:
            failures.append(f"n={n}: got {sorted(decomp.items(), reverse=True)}, expected {sorted(expected.items(), reverse=True)}")
        rows[n] = sorted(decomp.items(), reverse=True)
    fields = {"max_n": max_n, "n4": _render_decomp(rows.get(4, []))}
    if failures:
        fields["failures"] = "; ".join(failures)
    return Report("sl2_corollary", not failures, fields)


def _render_decomp(decomp) -> str:
    return " + ".join(f"L({d})^{m}" for d, m in decomp) or "0"


def check_gl_series(order: int) -> Report:
    """g/(1-g) = sum_{n>=1} c_n x^n with g = x(1 + sum_{n>=1} c_n x^n)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    x = QSeries.variable(order)
    C = catalan_series(order)
    g = x * (1 + C)
    residual = g / (1 - g) - C
    return _residual_report("gl_series", residual)


def mutate_table(n0: int, k0: int, delta: int = 1) -> NarayanaTable:
    """Narayana table with a single entry perturbed, for checker sanity tests."""

    def table(n: int, k: int) -> int:
        return narayana(n, k) + (delta if (n, k) == (n0, k0) else 0)

    return table
