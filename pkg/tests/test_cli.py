import json
import subprocess
import sys

import pytest

from as2trees.cli import run

INVOCATIONS = [
    ["count-trees", "--degree", "3", "--labels", "1"],
    ["enum-trees", "--degree", "3", "--alphabet", "a,b"],
    ["mul", "--op", "1", "--lhs", "(a)", "--rhs", "(b)"],
    ["mul", "--op", "2", "--lhs", "(a b)", "--rhs", "(c(d))", "--format", "json"],
    ["coproduct", "--tree", "(a b(c) d)"],
    ["nf", "--expr", "((a *2 b) *1 (c *2 d))"],
    ["basis", "--multilinear", "--alphabet", "a,b,c"],
    ["basis", "--words", "--degree", "3", "--labels", "2", "--format", "json"],
    ["to-basis", "--tree", "(a b(a) b)"],
    ["decompose", "--tree", "(b(a))"],
    ["rank", "--n", "3"],
    ["series", "--check", "duality", "--order", "8", "--show"],
    ["verify", "--suite", "series", "--format", "json"],
]


@pytest.mark.parametrize("argv", INVOCATIONS, ids=lambda a: " ".join(a[:2]))
def test_deterministic(argv):
    first = run(argv)
    assert first == run(argv)
    assert first[0] == 0 and first[1]


def test_mul_example():
    assert run(["mul", "--op", "1", "--lhs", "(a)", "--rhs", "(b)"]) == (0, "1 (a b) + 1 (b(a))")


def test_count_trees_example():
    assert run(["count-trees", "--degree", "3", "--labels", "1"]) == (0, "5")


def test_json_terms_shape():
    code, out = run(["mul", "--op", "2", "--lhs", "(a)", "--rhs", "(b)", "--format", "json"])
    assert code == 0
    assert json.loads(out) == {"terms": [{"coeff": "1", "tree": "(a b)"}]}


def test_report_json_shape():
    code, out = run(["rank", "--n", "3", "--format", "json"])
    assert code == 0
    assert json.loads(out) == {"check": "multilinear_rank", "n": 3, "expressions": 48, "rank": 30, "expected": 30, "pass": True}


def test_stdin_payloads():
    assert run(["mul", "--op", "1"], "(a)\n(b)\n") == (0, "1 (a b) + 1 (b(a))")
    assert run(["nf"], lambda: "((a *1 b) *1 c)") == (0, "1 (a *1 (b *1 c))")


def test_linear_combination_input():
    code, out = run(["to-basis", "--tree", "1/2 (a b) - (b(a))"])
    assert (code, out) == (0, "- 1 (a *1 b) + 3/2 (a *2 b)")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["mul", "--op", "3", "--lhs", "(a)", "--rhs", "(b)"],
        ["mul", "--op", "1", "--lhs", "(a", "--rhs", "(b)"],
        ["mul", "--op", "1", "--lhs", "()", "--rhs", "(b)"],
        ["nf", "--expr", "(a *3 b)"],
        ["nf"],
        ["count-trees", "--degree", "2", "--labels", "0"],
        ["enum-trees", "--degree", "2", "--alphabet", "a,a"],
        ["mul", "--op", "1", "--lhs", "(c)", "--rhs", "(b)", "--alphabet", "a,b"],
        ["rank", "--n", "9"],
        ["series", "--check", "nope"],
        ["verify", "--suite", "nope"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, out = run(argv)
    assert code == 2 and out == ""
    assert capsys.readouterr().err


def test_unital_flag():
    assert run(["mul", "--op", "2", "--lhs", "(b)", "--rhs", "()", "--unital"]) == (0, "1 (b)")


def test_failed_check_exits_1():
    code, out = run(["decompose", "--tree", "(a a(b))"])
    assert code == 1 and out.startswith("fuel exhausted")
    code, out = run(["verify", "--suite", "products", "--max-degree", "3"])
    assert code == 1
    assert "[FAIL] four_term" in out and out.splitlines()[-1].startswith("summary:")


def test_verify_series_passes():
    code, out = run(["verify", "--suite", "series"])
    assert code == 0 and out.endswith("summary: 12/12 passed")


def test_console_entry_point_subprocess():
    cmd = [sys.executable, "-m", "as2trees.cli", "mul", "--op", "1", "--lhs", "(a)", "--rhs", "(b)"]
    runs = [subprocess.run(cmd, capture_output=True, text=True, stdin=subprocess.DEVNULL) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout == "1 (a b) + 1 (b(a))\n"
    piped = subprocess.run(
        [sys.executable, "-m", "as2trees.cli", "coproduct"], input="(a)\n", capture_output=True, text=True
    )
    assert piped.stdout == "1 () (x) (a) + 1 (a) (x) ()\n"
