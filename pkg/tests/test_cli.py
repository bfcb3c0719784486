import io
import subprocess
import sys
from fractions import Fraction

import pytest

from towerarith.cli import run
from towerarith.textio import parse, parse_tower
from towerarith.tower import decode


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue().splitlines(), err.getvalue()


def test_encode():
    assert call("encode", "2") == (0, ["p1"], "")
    code, lines, _ = call("encode", "360")
    assert decode(parse_tower(lines[0])) == 360


def test_decode_and_mul():
    assert call("decode", "p1^(p2)*p3")[1] == ["40"]
    assert call("decode", "p1^(-p1)*p2")[1] == ["3/4"]
    assert call("mul", "p1^(p2)", "p1*p2")[1] == ["p1^(p1^(p1))*p2"]


def test_cmp():
    assert call("cmp", "p2", "p1^(p1)")[1] == ["Less"]
    assert call("cmp", "p1", "p1")[1] == ["Equal"]
    assert call("cmp", "p1^(p1*p2)", "p2^(p1)")[1] == ["Greater"]


@pytest.mark.parametrize("strategy", ["oracle", "sqrt", "search"])
def test_add_strategies(strategy):
    code, lines, _ = call("add", "p1^(p1)", "p1^(p1)", "--strategy", strategy)
    assert code == 0
    assert decode(parse_tower(lines[0])) == 8


def test_add_sqrt_not_applicable():
    code, lines, err = call("add", "p1", "p2", "--strategy", "sqrt")
    assert code == 1 and lines == []
    assert "NotApplicable" in err


def test_sieve():
    assert call("sieve", "--t", "2")[:2] == (0, ["5", "7"])
    code, lines, err = call("sieve", "--t", "3", "--trace")
    assert lines == ["11", "13"]
    assert err.splitlines()[0].startswith("sieve t=3")
    assert call("sieve", "--t", "1")[0] == 1


def test_towers():
    code, lines, _ = call("towers", "--primes", "2,3", "--bound", "50000", "--iterations", "1")
    assert code == 0
    assert len(lines) == 25
    assert lines[-1] == "46656"
    assert [int(v) for v in lines] == sorted(int(v) for v in lines)
    assert call("towers", "--primes", "2,3", "--bound", "30")[1] == [
        "1", "2", "3", "4", "6", "8", "9", "12", "16", "18", "24", "27"
    ]


def test_rationals():
    code, lines, _ = call("rationals", "--primes", "2,3", "--iterations", "1")
    values = [Fraction(v) for v in lines]
    assert code == 0 and len(values) == 81
    assert values == sorted(values)


def test_poly_freq_progression():
    assert call("poly", "12")[1] == ["x^2 + x^3"]
    assert call("poly", "9")[1] == ["1 + 2*x + x^2"]
    assert call("freq", "--pillar", "1", "--limit", "4")[1] == ["2/3"]
    assert call("progression", "--n", "2")[1] == ["1 + p1 + p1^(p1)"]
    assert call("progression", "--n", "8", "--check")[1] == ["true"]


def test_records_format():
    code, lines, _ = call("--format", "records", "encode", "12")
    assert lines == ["kind=tower tower=p1^(p1)*p2 value=12"]
    code, lines, _ = call("sieve", "--t", "2", "--format", "records")
    assert lines == ["kind=prime value=5 t=2", "kind=prime value=7 t=2"]
    code, lines, _ = call("--format", "records", "progression", "--n", "1")
    assert all(dict(f.split("=", 1) for f in line.split())["kind"] == "term" for line in lines)


def test_tower_outputs_reparse():
    for argv in (["encode", "5832"], ["mul", "p1", "p3^(p2)"], ["progression", "--n", "4"]):
        code, lines, _ = call(*argv)
        for line in lines:
            parse(line)


@pytest.mark.parametrize(
    "argv",
    [
        ["encode", "0"],
        ["decode", "p1^p2"],
        ["decode", "p1*p1"],
        ["towers", "--primes", "2,4", "--bound", "10"],
        ["towers", "--primes", "2,2", "--bound", "10"],
        ["bogus"],
        [],
    ],
)
def test_usage_and_syntax_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_syntax_error_names_case():
    code, _, err = call("decode", "p1^p2")
    assert code == 2 and err.startswith("TowerSyntaxError")


def test_cap_overflow_exits_1_without_partial_output():
    code, lines, err = call("--cap", "8", "decode", "p1^(p1^(p1^(p1)))")
    assert code == 1 and lines == []
    assert "EvaluationOverflow" in err
    assert call("decode", "p1^(p1^(p1^(p1)))", "--cap", "70000")[0] == 0
    code, lines, _ = call("--cap", "4", "towers", "--primes", "2,3", "--bound", "50000", "--iterations", "1")
    assert code == 1 and lines == []


def test_compare_overflow_exits_1():
    code, _, err = call("cmp", "p1^(p1^(p1^(p1^(p1))))", "p1")
    assert code == 1 and "EvaluationOverflow" in err


def test_deterministic_subprocess():
    argv = [sys.executable, "-m", "towerarith", "rationals", "--primes", "2,3", "--iterations", "1"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_search_not_found_exits_1(monkeypatch):
    from towerarith import arithmetic

    monkeypatch.setattr(arithmetic, "integer_universe", lambda limit: [])
    code, _, err = call("add", "p1", "p1", "--strategy", "search")
    assert code == 1 and err.startswith("NotFound")
