import json

import pytest

from qtree.cli import main
from qtree.fincon import preset


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("expr,result,cert", [
    ("a[0,1]*a[0,1]", "a[0,1]", "Irreducible"),
    ("a[00,10]+a[00,11]", "a[0,1]", "Irreducible"),
    ("a[0,1]*a[1,1]", "0", "ProvedZero"),
])
def test_reduce(capsys, expr, result, cert):
    code, out, _ = run(capsys, "reduce", expr, "-k", "2")
    assert code == 0
    assert out.splitlines() == [result, cert]


def test_reduce_in_a_quotient(capsys):
    code, out, _ = run(capsys, "reduce", "a[0,0]-a[1,1]", "--preset", "cyclic3", "-w", "1")
    assert code == 0 and out.splitlines()[0] == "0"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "reduce", "a[0,")
    assert code == 2 and "parse error" in err


def test_usage_errors(capsys):
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    assert run(capsys, "verify", "relations", "-k", "11")[0] == 2
    assert run(capsys, "reduce", "a[0,0]", "--preset", "cyclic4", "-k", "3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_budget_exhausted_exit_code(capsys):
    code, out, _ = run(capsys, "reduce", "a[0,0]-a[1,1]", "--budget", "1")
    assert code == 3 and out.splitlines()[1] == "BudgetExhausted"


def test_failed_numeric_check_exit_code(capsys):
    code, _, _ = run(capsys, "rep", "check", "--theta", "0.3", "-d", "3", "--tol", "1e-30")
    assert code == 1


def test_verify_writes_deterministic_json(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "cqg-axioms", "-k", "2", "-d", "2", "-g", "2", "--json", str(a))[0] == 0
    assert run(capsys, "verify", "cqg-axioms", "-k", "2", "-d", "2", "-g", "2", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["pass"] and data["params"]["seed"] == 0
    assert all(r["millis"] is None for r in data["identities"])


def test_timing_flag_adds_timings(capsys):
    code, out, _ = run(capsys, "verify", "coaction", "--json", "-", "--timing")
    data = json.loads(out)
    assert code == 0 and "seconds" in data


def test_verify_restriction_includes_worked_example(capsys):
    code, out, _ = run(capsys, "verify", "restriction", "-k", "3", "-d", "1", "--json", "-")
    data = json.loads(out)
    assert code == 0
    assert any(r["rhs"] == "a[01,12] + a[11,12] + a[21,12]" for r in data["identities"])


def test_verify_wreath_iso_preset(capsys):
    code, out, _ = run(capsys, "verify", "wreath-iso", "--preset", "full", "-k", "2", "-d", "2")
    assert code == 0 and "PASS" in out


def test_relator_file(capsys, tmp_path):
    path = tmp_path / "cyc.json"
    path.write_text(json.dumps(preset("cyclic", 2).to_json()))
    code, out, _ = run(capsys, "verify", "woronowicz-ideal", "--relators", str(path), "-w", "1")
    assert code == 0 and "PASS" in out


@pytest.mark.parametrize("argv,count", [
    (["-k", "2", "-d", "3"], "128"),
    (["--preset", "cyclic", "-k", "3", "-d", "2"], "81"),
    (["--preset", "trivial", "-k", "2", "-d", "3"], "1"),
])
def test_classical_count(capsys, argv, count):
    code, out, _ = run(capsys, "classical", "count", *argv)
    assert code == 0 and out.strip() == count


def test_classical_enumerate_and_crosscheck(capsys):
    code, out, _ = run(capsys, "classical", "enumerate", "-k", "2", "-d", "2")
    assert code == 0 and len(out.splitlines()) == 8
    code, out, _ = run(capsys, "classical", "crosscheck", "-k", "2", "-d", "2")
    assert code == 0 and "abelianization rank 8 = group order 8" in out
    code, out, _ = run(capsys, "classical", "crosscheck", "--preset", "cyclic3", "-d", "2")
    assert code == 0


def test_transformers(capsys):
    assert run(capsys, "rho", "1", "a[1,2]", "-k", "3")[1].strip() == "a[01,12] + a[11,12] + a[21,12]"
    assert run(capsys, "sigma", "1", "a[01,10]")[1].strip() == "a[101,010] + a[101,110]"
    assert run(capsys, "psi", "0", "a[1,1]")[1].strip() == "a[01,01] ox p[0] + a[01,11] ox p[1]"
    assert run(capsys, "sigma", "01", "a[0,0]")[0] == 2


def test_rep_check_json(capsys):
    code, out, _ = run(capsys, "rep", "check", "--family", "random-tree", "-k", "3", "--json", "-")
    data = json.loads(out)
    assert code == 0 and data["pass"]


def test_verify_all_parallel_matches_serial(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "all", "--json", str(a))[0] == 0
    assert run(capsys, "verify", "all", "--jobs", "2", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
