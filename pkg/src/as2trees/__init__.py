"""Free algebras with two compatible associative products, realised on
labeled planar rooted trees, with exact verification tooling."""

from .exact_arith import LinComb, NoSolution, SparseMatrix, lincomb_combine, rank, solve
from .trees import PlanarTree, enumerate_trees, parse_tree, render_tree
from .products import coproduct, pencil_tensor_product, star1, star2, star_lin
from .free_as2 import Expr, gen_multilinear_basis, gen_word_monomials, normal_form, parse_expr
from .iso_bridge import decompose_generation, eval_expr, tree_to_basis

__all__ = [
    "LinComb",
    "NoSolution",
    "SparseMatrix",
    "lincomb_combine",
    "rank",
    "solve",
    "PlanarTree",
    "enumerate_trees",
    "parse_tree",
    "render_tree",
    "coproduct",
    "pencil_tensor_product",
    "star1",
    "star2",
    "star_lin",
    "Expr",
    "gen_multilinear_basis",
    "gen_word_monomials",
    "normal_form",
    "parse_expr",
    "decompose_generation",
    "eval_expr",
    "tree_to_basis",
]
