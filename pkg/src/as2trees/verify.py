"""Verification suites.  Each suite returns a list of :class:`Report`; a
suite passes when every report passes."""

from __future__ import annotations

import itertools
import random
from typing import Callable, Sequence

from .exact_arith import LinComb
from .free_as2 import (
    TerminationError,
    all_expressions,
    count_basis_by_tag,
    gen_multilinear_basis,
    gen_word_monomials,
    is_normal,
    normal_form,
    random_expression,
)
from .iso_bridge import (
    FuelExhausted,
    SolveFailure,
    decompose_generation,
    eval_expr,
    gl_generation_check,
    multilinear_rank_check,
    tree_to_basis,
)
from .products import (
    coproduct,
    coproduct_lin,
    four_term_defect,
    pencil_tensor_product,
    render_pair,
    star_lin,
    tensor_star,
)
from .reports import Report
from .series import (
    QPoly,
    QSeries,
    build_F_char,
    catalan,
    catalan_series,
    check_beta_eqs,
    check_character_duality,
    check_funcas,
    check_gl_series,
    check_koszul_gf,
    check_narayana_eq,
    check_sl2_corollary,
    mutate_table,
)
from .trees import EMPTY, PlanarTree, enumerate_trees

SUITES = ("products", "basis", "iso", "series", "hopf")
PENCILS = ((1, 0), (0, 1), (1, 1), (2, 3))
ONE = ("x",)
TWO = ("a", "b")


def _single(t) -> LinComb:
    return LinComb.single(t)


def tree_triples(max_total: int, alphabet: Sequence[str], min_degree: int = 1):
    """Triples of trees with degrees >= ``min_degree`` and total degree <= ``max_total``."""
    by_deg = {d: enumerate_trees(d, alphabet) for d in range(min_degree, max_total + 1)}
    for d1, d2, d3 in itertools.product(by_deg, repeat=3):
        if d1 + d2 + d3 <= max_total:
            yield from itertools.product(by_deg[d1], by_deg[d2], by_deg[d3])


# -- products --------------------------------------------------------------


def _law_report(name: str, triples, law: Callable) -> Report:
    count = 0
    failures = 0
    witness = None
    for a, b, c in triples:
        count += 1
        defect = law(_single(a), _single(b), _single(c))
        if defect:
            failures += 1
            if witness is None:
                witness = f"{a} {b} {c} -> {defect}"
    fields = {"triples": count, "failures": failures}
    if witness:
        fields["witness"] = witness
    return Report(name, failures == 0, fields)


def _assoc(op: int, unital: bool = False):
    def law(a, b, c):
        return star_lin(op, star_lin(op, a, b, unital), c, unital) - star_lin(op, a, star_lin(op, b, c, unital), unital)

    return law


def _compat(unital: bool = False):
    p = lambda x, y: star_lin(1, x, y, unital)
    q = lambda x, y: star_lin(2, x, y, unital)
    return lambda a, b, c: four_term_defect(p, q, a, b, c)


def _unital_triples(max_total: int, alphabet):
    """Triples with at least one ``()`` operand."""
    return [t for t in tree_triples(max_total, alphabet, min_degree=0) if EMPTY in t]


def law_reports(max_degree: int = 4) -> list[Report]:
    """Associativity of both products and the four-term relation.

    Exhaustive over one label up to total degree ``max_degree + 1`` and two
    labels up to ``max_degree``; then the unital convention with ``()`` among
    the operands.
    """
    out = []
    for alphabet, bound in ((ONE, max_degree + 1), (TWO, max_degree)):
        triples = list(tree_triples(bound, alphabet))
        tag = f"labels={len(alphabet)},total<={bound}"
        for op in (1, 2):
            r = _law_report(f"assoc_star{op}", triples, _assoc(op))
            out.append(Report(r.check, r.passed, {"range": tag, **r.fields}))
        r = _law_report("four_term", triples, _compat())
        out.append(Report(r.check, r.passed, {"range": tag, **r.fields}))
    triples = _unital_triples(max_degree, TWO)
    tag = f"unital,labels=2,total<={max_degree}"
    for name, law in (("assoc_star1", _assoc(1, True)), ("assoc_star2", _assoc(2, True)), ("four_term", _compat(True))):
        r = _law_report(name, triples, law)
        out.append(Report(r.check, r.passed, {"range": tag, **r.fields}))
    return out


def degree_additivity_report(max_total: int = 4) -> Report:
    bad = 0
    pairs = 0
    for d1 in range(1, max_total):
        for d2 in range(1, max_total - d1 + 1):
            for s in enumerate_trees(d1, TWO):
                for t in enumerate_trees(d2, TWO):
                    pairs += 1
                    want = sorted(s.labels() + t.labels())
                    for op in (1, 2):
                        for u in star_lin(op, _single(s), _single(t)):
                            if u.degree != d1 + d2 or sorted(u.labels()) != want:
                                bad += 1
    return Report("degree_additivity", bad == 0, {"pairs": pairs, "failures": bad})


def products_suite(max_degree: int = 4) -> list[Report]:
    return law_reports(max_degree) + [degree_additivity_report(max_degree)]


# -- basis -----------------------------------------------------------------


def tree_count_report(max_n: int = 8) -> Report:
    observed = [len(enumerate_trees(n, ONE)) for n in range(1, max_n + 1)]
    expected = [catalan(n) for n in range(1, max_n + 1)]
    return Report("tree_counts", observed == expected, {"expected": expected, "observed": observed})


def basis_count_report(max_n: int = 6) -> Report:
    from math import factorial

    observed = [count_basis_by_tag(n)[2] for n in range(1, max_n + 1)]
    expected = [factorial(2 * n) // factorial(n + 1) for n in range(1, max_n + 1)]
    return Report("basis_counts", observed == expected, {"expected": expected, "observed": observed})


def word_count_report(max_n: int = 6) -> Report:
    bad = []
    for k in (1, 2):
        alphabet = TWO[:k] if k == 2 else ONE
        for n in range(1, max_n + 1):
            got = len(gen_word_monomials(n, alphabet))
            if got != catalan(n) * k**n:
                bad.append(f"n={n},|S|={k}:{got}")
    fields = {"max_n": max_n, "alphabets": "1,2"}
    if bad:
        fields["failures"] = ";".join(bad)
    return Report("word_counts", not bad, fields)


def _soundness(exprs) -> tuple[int, int, str | None, int]:
    total = bad = nonidem = 0
    witness = None
    for e in exprs:
        total += 1
        nf = normal_form(e)
        if any(not is_normal(m) for m in nf) or normal_form(nf) != nf:
            nonidem += 1
        if eval_expr(nf) != eval_expr(e):
            bad += 1
            if witness is None:
                witness = str(e)
    return total, bad, witness, nonidem


def soundness_reports(max_exhaustive: int = 3, samples: int = 1000, max_random: int = 5, seed: int = 0) -> list[Report]:
    """eval(normal_form(E)) = eval(E), exhaustively and on random expressions."""
    out = []
    rng = random.Random(seed)
    groups = (
        ("soundness_exhaustive", [e for n in range(1, max_exhaustive + 1) for e in all_expressions(n, TWO)]),
        ("soundness_random", [random_expression(rng, rng.randint(1, max_random), TWO) for _ in range(samples)]),
    )
    for name, exprs in groups:
        try:
            total, bad, witness, nonidem = _soundness(exprs)
        except TerminationError as exc:
            out.append(Report(name, False, {"termination": str(exc)}))
            continue
        fields = {"expressions": total, "mismatches": bad, "not_idempotent": nonidem}
        if witness:
            fields["witness"] = witness
        out.append(Report(name, bad == 0 and nonidem == 0, fields))
    return out


def multilinear_spanning_report(n: int = 3) -> Report:
    """normal_form of multilinear expressions lands in the multilinear basis."""
    labels = [f"a{i}" for i in range(1, n + 1)]
    basis = set(gen_multilinear_basis(labels))
    outside = 0
    count = 0
    for e in all_expressions(n, labels):
        if sorted(e.leaves()) != labels:
            continue
        count += 1
        if not set(normal_form(e)) <= basis:
            outside += 1
    return Report("nf_spans_basis", outside == 0, {"n": n, "expressions": count, "outside": outside})


def basis_suite(max_degree: int = 4, samples: int = 1000, seed: int = 0) -> list[Report]:
    return [
        tree_count_report(),
        basis_count_report(),
        word_count_report(),
        multilinear_spanning_report(),
        *soundness_reports(samples=samples, seed=seed),
    ]


# -- iso -------------------------------------------------------------------


def roundtrip_report(max_degree: int = 4, alphabet: Sequence[str] = TWO) -> Report:
    trees = bad = 0
    failure = None
    for d in range(1, max_degree + 1):
        for t in enumerate_trees(d, alphabet):
            trees += 1
            try:
                if eval_expr(tree_to_basis(t)) != _single(t):
                    bad += 1
            except SolveFailure as exc:
                bad += 1
                failure = str(exc)
    fields = {"max_degree": max_degree, "trees": trees, "failures": bad}
    if failure:
        fields["solve_failure"] = failure
    return Report("roundtrip", bad == 0, fields)


def decompose_report(max_degree: int = 3, alphabet: Sequence[str] = TWO, fuel: int = 1000) -> Report:
    """Every returned decomposition evaluates back to its tree.  Trees on
    which the recursion gives up are counted, not failed."""
    returned = exhausted = wrong = 0
    for d in range(1, max_degree + 1):
        for t in enumerate_trees(d, alphabet):
            try:
                x = decompose_generation(t, fuel)
            except FuelExhausted:
                exhausted += 1
                continue
            returned += 1
            if eval_expr(x) != _single(t):
                wrong += 1
    return Report(
        "decompose_generation",
        wrong == 0,
        {"max_degree": max_degree, "returned": returned, "fuel_exhausted": exhausted, "wrong": wrong},
    )


def iso_suite(max_degree: int = 4, order: int = 10) -> list[Report]:
    out = [multilinear_rank_check(n) for n in (2, 3, 4)]
    out.append(roundtrip_report(max_degree))
    out.extend(gl_generation_check(min(max_degree, 4), ONE))
    out.extend(gl_generation_check(min(max_degree, 4), TWO))
    out.append(check_gl_series(max(order, 10)))
    out.append(decompose_report(min(max_degree, 3)))
    return out


# -- series ----------------------------------------------------------------


def _perturb(s: QSeries, n: int, delta=1) -> QSeries:
    coeffs = [s[k] for k in range(s.order + 1)]
    coeffs[n] = coeffs[n] + QPoly.const(delta)
    return QSeries(s.order, coeffs, s.kind)


def _drop_one(n0: int):
    def counts(n: int):
        b1, b2, b = count_basis_by_tag(n)
        return (b1, b2 - 1, b - 1) if n == n0 else (b1, b2, b)

    return counts


def series_checks(order: int = 8) -> list[Report]:
    """The identity checks at ``order`` (at least 12 for the integer-only ones)."""
    big = max(order, 12)
    return [
        check_narayana_eq(big),
        check_funcas(order),
        check_koszul_gf(big),
        check_beta_eqs(order),
        check_character_duality(order),
        check_sl2_corollary(order),
    ]


def mutation_reports(order: int = 8) -> list[Report]:
    """Each checker must reject a single perturbed coefficient."""
    mutated_F = build_F_char(order, mutate_table(4, 1))
    cases = (
        ("narayana_eq", lambda: check_narayana_eq(order, mutate_table(4, 1))),
        ("funcas", lambda: check_funcas(order, mutated_F)),
        ("koszul_gf", lambda: check_koszul_gf(order, _perturb(catalan_series(order), 3))),
        ("beta_eqs", lambda: check_beta_eqs(order, _drop_one(3))),
        ("character_duality", lambda: check_character_duality(order, mutated_F)),
        ("sl2_corollary", lambda: check_sl2_corollary(order, mutated_F)),
    )
    out = []
    for name, run in cases:
        r = run()
        out.append(Report(f"mutation_{name}", not r.passed, {"mutated_check": "fail" if not r.passed else "pass"}))
    return out


def series_suite(order: int = 8) -> list[Report]:
    return series_checks(order) + mutation_reports(order)


# -- hopf ------------------------------------------------------------------


def coassociativity_report(max_degree: int = 4, alphabet: Sequence[str] = TWO) -> Report:
    trees = bad = 0
    for d in range(max_degree + 1):
        for t in enumerate_trees(d, alphabet):
            trees += 1
            cop = coproduct(t)
            left = LinComb(((u, v, w), c1 * c2) for (x, w), c1 in cop.items() for (u, v), c2 in coproduct(x).items())
            right = LinComb(((u, v, w), c1 * c2) for (u, y), c1 in cop.items() for (v, w), c2 in coproduct(y).items())
            counit_l = LinComb((w, c) for (u, w), c in cop.items() if u == EMPTY)
            counit_r = LinComb((u, c) for (u, w), c in cop.items() if w == EMPTY)
            if left != right or counit_l != _single(t) or counit_r != _single(t):
                bad += 1
    return Report("coassociativity_counit", bad == 0, {"max_degree": max_degree, "trees": trees, "failures": bad})


def homomorphism_report(max_total: int = 3, alphabet: Sequence[str] = TWO) -> Report:
    trees = [t for d in range(max_total + 1) for t in enumerate_trees(d, alphabet)]
    cases = bad = 0
    for x, y in itertools.product(trees, repeat=2):
        if x.degree + y.degree > max_total:
            continue
        for op in (1, 2):
            cases += 1
            lhs = coproduct_lin(star_lin(op, _single(x), _single(y), unital=True))
            if lhs != tensor_star(op, coproduct(x), coproduct(y)):
                bad += 1
    return Report("coproduct_homomorphism", bad == 0, {"max_total": max_total, "cases": cases, "failures": bad})


def degree_one_pairs(alphabet: Sequence[str] = TWO) -> list[LinComb]:
    gens = [PlanarTree(((s, ()),)) for s in alphabet]
    return [_single((u, v)) for u in gens for v in gens]


def pencil_associativity_report(lam, mu, alphabet: Sequence[str] = TWO) -> Report:
    pairs = degree_one_pairs(alphabet)
    p = lambda x, y: pencil_tensor_product(lam, mu, x, y)
    bad = sum(1 for a, b, c in itertools.product(pairs, repeat=3) if p(p(a, b), c) != p(a, p(b, c)))
    return Report("pencil_assoc", bad == 0, {"lambda": lam, "mu": mu, "triples": len(pairs) ** 3, "failures": bad})


def find_pencil_witness(alphabet: Sequence[str] = TWO):
    """First degree-1 pair-tensor triple on which the four-term relation
    between the slotwise star-1 and star-2 products fails, with its defect."""
    p = lambda x, y: pencil_tensor_product(1, 0, x, y)
    q = lambda x, y: pencil_tensor_product(0, 1, x, y)
    for a, b, c in itertools.product(degree_one_pairs(alphabet), repeat=3):
        defect = four_term_defect(p, q, a, b, c)
        if defect:
            return (a, b, c), defect
    return None


def pencil_witness_report() -> Report:
    found = find_pencil_witness()
    if found is None:
        return Report("pencil_four_term_witness", False, {"witness": "none"})
    (a, b, c), defect = found
    show = lambda x: x.render(render_pair)
    return Report(
        "pencil_four_term_witness",
        True,
        {"a": show(a), "b": show(b), "c": show(c), "defect": show(defect)},
    )


def hopf_suite(max_degree: int = 4) -> list[Report]:
    out = [coassociativity_report(max_degree), homomorphism_report(min(max_degree, 3))]
    out.extend(pencil_associativity_report(lam, mu) for lam, mu in PENCILS)
    out.append(pencil_witness_report())
    return out


def run_suite(name: str, max_degree: int = 4, order: int = 8) -> list[Report]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, max_degree, order)]
    if name == "products":
        return products_suite(max_degree)
    if name == "basis":
        return basis_suite(max_degree)
    if name == "iso":
        return iso_suite(max_degree)
    if name == "series":
        return series_suite(order)
    if name == "hopf":
        return hopf_suite(max_degree)
    raise ValueError(f"unknown suite {name!r}")
