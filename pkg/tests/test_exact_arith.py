from fractions import Fraction

import pytest

from as2trees.exact_arith import (
    LinComb,
    NoSolution,
    SparseMatrix,
    lincomb_combine,
    lincomb_sum,
    parse_lincomb,
    parse_rational,
    rank,
    solve,
    to_rational,
)


def L(**kw):
    return LinComb(kw)


def test_combine_cancellation():
    x = L(x=1)
    assert lincomb_combine(x, x, 1, -1) == LinComb()
    assert not lincomb_combine(x, x, 1, -1)


def test_combine_with_empty():
    assert lincomb_combine(L(x=1), LinComb(), Fraction(3, 2), 1) == L(x=Fraction(3, 2))


def test_combine_single_term_cancel():
    a = L(T1=2, T2=1)
    assert lincomb_combine(a, L(T2=1), 1, -1) == L(T1=2)


def test_no_zero_terms_stored():
    x = LinComb([("a", 1), ("a", -1), ("b", 0)])
    assert len(x) == 0 and x.keys() == []


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(ValueError):
        parse_rational("1.5")


def test_render_forms():
    x = LinComb({"b": -2, "a": Fraction(1, 3), "c": 1})
    assert x.render() == "1/3 a - 2 b + 1 c"
    assert LinComb({"a": -1}).render() == "- 1 a"
    assert LinComb().render() == "0"


def test_parse_lincomb_roundtrip():
    x = LinComb({"a": Fraction(-5, 7), "b": 3})
    assert parse_lincomb(x.render(), str) == x
    assert parse_lincomb("a + a", str) == L(a=2)
    assert parse_lincomb("0", str) == LinComb()
    with pytest.raises(ValueError):
        parse_lincomb("a b", str)


def test_lincomb_sum_matches_repeated_combine():
    parts = [(2, L(a=1, b=1)), (-1, L(b=2)), (Fraction(1, 2), L(c=4))]
    acc = LinComb()
    for c, x in parts:
        acc = lincomb_combine(acc, x, 1, c)
    assert lincomb_sum(parts) == acc == L(a=2, c=2)


def test_rank_identity_pattern():
    m = SparseMatrix([L(**{k: 1}) for k in "abcd"])
    assert rank(m) == 4


def test_rank_proportional_rows():
    m = SparseMatrix([L(a=1, b=2), L(a=Fraction(-1, 2), b=-1)])
    assert rank(m) == 1


def test_rank_empty_and_zero_rows():
    assert rank(SparseMatrix([])) == 0
    assert rank(SparseMatrix([LinComb(), LinComb()])) == 0


def test_solve_identity():
    m = SparseMatrix([L(a=1), L(b=1)], ["r1", "r2"])
    assert solve(m, L(a=3, b=-1)) == LinComb({"r1": 3, "r2": -1})


def test_solve_zero_matrix_has_no_solution():
    m = SparseMatrix([LinComb(), LinComb()])
    with pytest.raises(NoSolution):
        solve(m, L(a=1))


def test_solve_picks_first_pivots_when_underdetermined():
    m = SparseMatrix([L(a=1), L(a=2), L(b=1)], ["r1", "r2", "r3"])
    x = solve(m, L(a=4, b=1))
    assert x == LinComb({"r1": 4, "r3": 1})


def test_solve_reconstructs_rhs():
    rows = [L(a=1, b=1), L(b=1, c=1), L(a=1, c=-1)]
    m = SparseMatrix(rows, ["p", "q", "r"])
    rhs = L(a=2, b=3, c=1)
    x = solve(m, rhs)
    back = lincomb_sum((x.coeff(k), row) for k, row in zip(["p", "q", "r"], rows))
    assert back == rhs
