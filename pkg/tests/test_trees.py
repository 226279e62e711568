import pytest

from as2trees.trees import (
    EMPTY,
    PlanarTree,
    TreeSyntaxError,
    UnknownLabelError,
    branch_decomposition,
    concat,
    enumerate_trees,
    internal_vertices,
    parse_tree,
    render_tree,
    tree,
    vertices,
)

from oracles import catalan_by_recurrence


def test_parse_examples():
    assert parse_tree("()") == EMPTY and EMPTY.degree == 0
    t = parse_tree("(a)")
    assert t.branches == (("a", ()),)
    t = parse_tree("(a(b) c)")
    assert t.branches == (("a", (("b", ()),)), ("c", ()))
    assert t.degree == 3


def test_render_examples():
    assert render_tree(EMPTY) == "()"
    assert render_tree(PlanarTree((("b", (("a", ()),)),))) == "(b(a))"
    assert render_tree(PlanarTree((("a", ()), ("b", ())))) == "(a b)"


def test_render_is_canonical_with_spacing():
    assert render_tree(parse_tree("  ( a( b   c )  d )  ")) == "(a(b c) d)"


@pytest.mark.parametrize("bad", ["", "a", "(a (b))", "(", "(a", "(a))", "(a)(b)", "(1)", "(a,b)"])
def test_syntax_errors(bad):
    with pytest.raises(TreeSyntaxError):
        parse_tree(bad)


def test_syntax_error_reports_position():
    with pytest.raises(TreeSyntaxError) as exc:
        parse_tree("(a #)")
    assert exc.value.pos == 3


def test_unknown_label():
    with pytest.raises(UnknownLabelError):
        parse_tree("(a c)", ["a", "b"])


def test_vertices_examples():
    assert vertices(EMPTY) == [()]
    assert vertices(tree("(a b)")) == [(), (1,), (2,)]
    assert vertices(tree("(a(b) c)")) == [(), (1,), (1, 1), (2,)]


def test_internal_vertices_examples():
    assert internal_vertices(EMPTY) == []
    assert internal_vertices(tree("(b)")) == [()]
    assert internal_vertices(tree("(a(b) c)")) == [(), (1,)]


def test_concat_examples():
    assert concat(tree("(a)"), tree("(b)")) == tree("(a b)")
    assert concat(EMPTY, tree("(a(b))")) == tree("(a(b))")
    assert concat(tree("(a b)"), tree("(c)")) == tree("(a b c)")


def test_branch_decomposition_examples():
    assert branch_decomposition(tree("(a b)")) == [tree("(a)"), tree("(b)")]
    assert branch_decomposition(tree("(b(a))")) == [tree("(b(a))")]
    assert branch_decomposition(EMPTY) == []


def test_enumerate_examples():
    assert [str(t) for t in enumerate_trees(2, ["x"])] == ["(x x)", "(x(x))"]
    assert len(enumerate_trees(3, ["x"])) == 5
    assert len(enumerate_trees(2, ["a", "b"])) == 8
    assert enumerate_trees(0, ["x"]) == [EMPTY]


@pytest.mark.parametrize("k", [1, 2])
def test_enumeration_counts(k):
    alphabet = ["a", "b"][:k]
    for n in range(0, 9 if k == 1 else 7):
        trees = enumerate_trees(n, alphabet)
        assert len(trees) == catalan_by_recurrence(n) * k**n
        assert len(set(trees)) == len(trees)


def test_roundtrip_and_injectivity_to_degree_4():
    seen = set()
    for n in range(5):
        for t in enumerate_trees(n, ["a", "b"]):
            text = render_tree(t)
            assert parse_tree(text) == t
            assert text not in seen
            seen.add(text)


def test_vertex_taxonomy_invariants():
    for n in range(5):
        for t in enumerate_trees(n, ["x"]):
            vs = vertices(t)
            assert len(vs) == t.degree + 1
            assert set(internal_vertices(t)) <= set(vs)
            assert (() in internal_vertices(t)) == (t.degree >= 1)


def test_concat_associative_with_unit():
    small = [t for n in range(3) for t in enumerate_trees(n, ["a", "b"])]
    for a in small:
        assert concat(EMPTY, a) == a == concat(a, EMPTY)
        for b in small:
            for c in small:
                if a.degree + b.degree + c.degree <= 5:
                    assert concat(concat(a, b), c) == concat(a, concat(b, c))


def test_canonical_order_is_natural_in_labels():
    # x2 sorts before x10
    ts = sorted([tree("(x10)"), tree("(x2)"), tree("(x1)")])
    assert [str(t) for t in ts] == ["(x1)", "(x2)", "(x10)"]


def test_labels_preorder_and_repeats():
    t = tree("(a(b a) a)")
    assert t.labels() == ["a", "b", "a", "a"]
