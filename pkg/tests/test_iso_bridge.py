import pytest

from as2trees.exact_arith import LinComb
from as2trees.free_as2 import gen, parse_expr
from as2trees.iso_bridge import (
    FuelExhausted,
    UnassignedLabel,
    binary_shapes,
    decompose_generation,
    eval_expr,
    gl_generation_check,
    multilinear_expressions,
    multilinear_rank_check,
    one_child_trees,
    tree_to_basis,
)
from as2trees.series import catalan
from as2trees.trees import EMPTY, enumerate_trees, tree

P = parse_expr


def T(text):
    return LinComb.single(tree(text))


def test_eval_examples():
    assert eval_expr(gen("a")) == T("(a)")
    assert eval_expr(P("(a *2 b)")) == T("(a b)")
    x = LinComb({P("(a *1 b)"): 1, P("(a *2 b)"): -1})
    assert eval_expr(x) == T("(b(a))")


def test_eval_with_assignment():
    got = eval_expr(P("(a *2 b)"), {"a": tree("(c)"), "b": tree("(d(e))")})
    assert got == LinComb({tree("(c d(e))"): 1, tree("(d(c e))"): 1})
    with pytest.raises(UnassignedLabel):
        eval_expr(P("(a *2 b)"), {"a": tree("(c)")})


def test_to_basis_examples():
    assert tree_to_basis(tree("(a b)")) == LinComb.single(P("(a *2 b)"))
    assert tree_to_basis(tree("(b(a))")) == LinComb({P("(a *1 b)"): 1, P("(a *2 b)"): -1})


def test_to_basis_rejects_bad_input():
    with pytest.raises(ValueError):
        tree_to_basis(T("(a)") + T("(a b)"))
    with pytest.raises(ValueError):
        tree_to_basis(EMPTY)
    with pytest.raises(ValueError):
        tree_to_basis(tree("(c)"), ["a", "b"])


def test_roundtrip_degree_3_three_labels():
    for t in enumerate_trees(3, ["a", "b", "c"]):
        assert eval_expr(tree_to_basis(t)) == LinComb.single(t)


def test_to_basis_linear():
    x = T("(a b)") * 3 - T("(b(a))")
    assert eval_expr(tree_to_basis(x)) == x


def test_decompose_examples():
    assert decompose_generation(tree("(a)")) == LinComb.single(gen("a"))
    assert decompose_generation(tree("(b(a))")) == LinComb({P("(a *1 b)"): 1, P("(a *2 b)"): -1})
    assert decompose_generation(tree("(a b)")) == tree_to_basis(tree("(a b)"))


def test_decompose_errors_and_fuel():
    with pytest.raises(ValueError):
        decompose_generation(EMPTY)
    with pytest.raises(ValueError):
        decompose_generation(tree("(a)"), fuel=0)
    with pytest.raises(FuelExhausted):
        decompose_generation(tree("(a(b(c)))"), fuel=1)


def test_decompose_results_are_exact_when_returned():
    returned = 0
    for n in range(1, 5):
        for t in enumerate_trees(n, ["x"]):
            try:
                x = decompose_generation(t)
            except FuelExhausted:
                continue
            returned += 1
            assert eval_expr(x) == LinComb.single(t)
    assert returned >= 10


def test_decompose_resolves_a_cycle():
    # (x x x) leads back to itself through (x x(x)); solving the cycle works
    x = decompose_generation(tree("(x x x)"))
    assert eval_expr(x) == T("(x x x)")


def test_shape_and_expression_counts():
    for n in range(1, 6):
        assert len(binary_shapes(n)) == catalan(n - 1)
    assert len(multilinear_expressions(3)) == 48


@pytest.mark.parametrize("n,rank,rows", [(2, 4, 4), (3, 30, 48)])
def test_rank_report(n, rank, rows):
    r = multilinear_rank_check(n)
    assert r.passed
    assert r.to_dict() == {"check": "multilinear_rank", "n": n, "expressions": rows, "rank": rank, "expected": rank, "pass": True}


def test_rank_bounds():
    with pytest.raises(ValueError):
        multilinear_rank_check(1)
    with pytest.raises(ValueError):
        multilinear_rank_check(5)


def test_gl_generation_small():
    reports = gl_generation_check(3, ["x"])
    assert [r.fields["rank"] for r in reports] == [1, 2, 5]
    assert all(r.passed for r in reports)
    for n in range(1, 6):
        assert len(one_child_trees(n, ["x"])) == catalan(n - 1)
