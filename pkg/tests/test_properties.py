"""Randomized properties."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from as2trees.exact_arith import LinComb, NoSolution, SparseMatrix, lincomb_combine, lincomb_sum, rank, solve
from as2trees.series import sl2_decompose, sl2_reconstruct
from as2trees.trees import PlanarTree, parse_tree, render_tree

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)
nonzero = st.builds(Fraction, st.integers(1, 20) | st.integers(-20, -1), st.integers(1, 7))
keys = st.sampled_from(["a", "b", "c", "d", "e"])
lincombs = st.dictionaries(keys, rationals, max_size=5).map(LinComb)
matrices = st.lists(lincombs, min_size=0, max_size=6)

labels = st.sampled_from(["a", "b", "x1", "x10"])
forests = st.recursive(
    st.just(()),
    lambda kids: st.lists(st.tuples(labels, kids), max_size=3).map(tuple),
    max_leaves=8,
)


@given(lincombs, lincombs)
def test_addition_commutes(a, b):
    assert lincomb_combine(a, b, 1, 1) == lincomb_combine(b, a, 1, 1)


@given(matrices, st.randoms(use_true_random=False), st.lists(nonzero, min_size=6, max_size=6))
@settings(max_examples=60)
def test_rank_invariant_under_permutation_and_scaling(rows, rnd, scales):
    r = rank(SparseMatrix(rows))
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    scaled = [row * s for row, s in zip(shuffled, scales)]
    assert rank(SparseMatrix(scaled)) == r
    assert r <= min(len(rows), len({k for row in rows for k in row}))


@given(matrices, lincombs)
@settings(max_examples=60)
def test_solve_reconstructs(rows, rhs):
    m = SparseMatrix(rows)
    try:
        x = solve(m, rhs)
    except NoSolution:
        # then rhs must raise the rank
        assert rank(SparseMatrix(rows + [rhs])) == rank(m) + 1
        return
    back = lincomb_sum((x.coeff(k), row) for k, row in zip(m.keys_for_rows(), rows))
    assert back == rhs


@given(forests)
def test_tree_render_parse_roundtrip(forest):
    t = PlanarTree(forest)
    assert parse_tree(render_tree(t)) == t


@given(st.dictionaries(st.integers(0, 8), st.integers(1, 4), max_size=5))
def test_sl2_reconstruct_roundtrip(mults):
    decomp = sorted(mults.items(), reverse=True)
    assert sl2_decompose(sl2_reconstruct(decomp)) == decomp


@given(lincombs, rationals)
def test_scalar_distributes(a, c):
    assert (a + a) * c == a * c + a * c
    assert a * Fraction(0) == LinComb()
