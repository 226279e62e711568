"""Acceptance criteria 1-11.  Each test prints one PASS/FAIL line with the
observed values and the wall time against its budget, then asserts."""

import time

import pytest

from as2trees import verify
from as2trees.iso_bridge import gl_generation_check, multilinear_rank_check
from as2trees.series import catalan, check_gl_series
from as2trees.trees import enumerate_trees


@pytest.fixture
def record(capsys):
    def emit(number: int, title: str, reports, budget: float, started: float):
        elapsed = time.perf_counter() - started
        ok = all(r.passed for r in reports) and elapsed < budget
        failed = [r.to_text() for r in reports if not r.passed]
        detail = "; ".join(failed) if failed else f"{len(reports)} checks"
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'} {title} ({elapsed:.1f}s < {budget:.0f}s) {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert not failed, line
        assert elapsed < budget, line

    return emit


def test_criterion_01_tree_counts(record):
    t0 = time.perf_counter()
    r = verify.tree_count_report(8)
    assert r.fields["observed"] == [1, 2, 5, 14, 42, 132, 429, 1430] == [catalan(n) for n in range(1, 9)]
    record(1, "tree counts", [r], 5, t0)


def test_criterion_02_laws(record):
    t0 = time.perf_counter()
    reports = verify.law_reports(4)
    record(2, "associativity and four-term relation", reports, 60, t0)


def test_criterion_03_basis_counts(record):
    t0 = time.perf_counter()
    reports = [verify.basis_count_report(6), verify.word_count_report(6)]
    assert reports[0].fields["observed"] == [1, 4, 30, 336, 5040, 95040]
    record(3, "basis and word counts", reports, 30, t0)


def test_criterion_04_rewriting_soundness(record):
    t0 = time.perf_counter()
    reports = verify.soundness_reports(max_exhaustive=3, samples=1000, max_random=5, seed=0)
    record(4, "rewriting soundness", reports, 60, t0)


def test_criterion_05_multilinear_rank(record):
    t0 = time.perf_counter()
    reports = [multilinear_rank_check(n) for n in (2, 3, 4)]
    assert [(r.fields["rank"], r.fields["expressions"]) for r in reports] == [(4, 4), (30, 48), (336, 960)]
    record(5, "multilinear rank", reports, 90, t0)


def test_criterion_06_roundtrip(record):
    t0 = time.perf_counter()
    assert len(enumerate_trees(4, ["a", "b"])) == 224
    r = verify.roundtrip_report(4)
    record(6, "isomorphism roundtrip", [r], 60, t0)


def test_criterion_07_series(record):
    t0 = time.perf_counter()
    reports = verify.series_checks(8) + verify.mutation_reports(8)
    record(7, "series identities and mutations", reports, 10, t0)


def test_criterion_08_sl2(record):
    t0 = time.perf_counter()
    r = verify.check_sl2_corollary(8)
    assert r.fields["n4"] == "L(3)^1 + L(1)^5"
    record(8, "sl2 corollary", [r], 5, t0)


def test_criterion_09_hopf(record):
    t0 = time.perf_counter()
    reports = [verify.coassociativity_report(4), verify.homomorphism_report(3)]
    record(9, "coproduct checks", reports, 60, t0)


def test_criterion_10_grossman_larson(record):
    t0 = time.perf_counter()
    reports = gl_generation_check(4, ["x"]) + gl_generation_check(4, ["a", "b"]) + [check_gl_series(10)]
    record(10, "one-child generation and series", reports, 30, t0)


def test_criterion_11_pencil(record):
    t0 = time.perf_counter()
    reports = [verify.pencil_associativity_report(lam, mu) for lam, mu in verify.PENCILS]
    reports.append(verify.pencil_witness_report())
    record(11, "pencil associativity and witness", reports, 30, t0)
