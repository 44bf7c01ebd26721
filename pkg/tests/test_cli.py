import json

import pytest

from corank.cli import EXIT_ERROR, EXIT_INFEASIBLE, EXIT_MISMATCH, EXIT_OK, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants(capsys):
    code, out, _ = call(capsys, "invariants", "H4 # (S1 x S2)")
    assert code == EXIT_OK
    assert "dim=3 orientable=true b1=5 b1'=2" in out


def test_invariants_json(capsys):
    code, out, _ = call(capsys, "--json", "invariants", "H4 # (S1 x S2)")
    assert code == EXIT_OK
    assert json.loads(out) == {"dim": 3, "orientable": True, "b1": 5, "b1_prime": 2, "expr": "H4 # (S1 x S2)"}


def test_json_flag_after_subcommand(capsys):
    _, out, _ = call(capsys, "invariants", "--json", "S1 x S1")
    assert json.loads(out)["b1"] == 2


def test_synthesize_infeasible(capsys):
    code, out, err = call(capsys, "synthesize", "-n", "2", "--b-prime", "2", "--b", "3", "--orientable")
    assert code == EXIT_INFEASIBLE
    assert "n=2 orientable requires b even" in err


def test_synthesize_json(capsys):
    code, out, _ = call(capsys, "--json", "synthesize", "-n", "4", "--b-prime", "2", "--b", "5")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["expr"] == "(H3 x S1) # (S1 x S3)"
    assert (doc["dim"], doc["orientable"], doc["b1"], doc["b1_prime"]) == (4, True, 5, 2)


def test_oracle_check(capsys):
    code, out, _ = call(capsys, "oracle-check", "M2 # N3")
    assert code == EXIT_OK
    assert "calculus b1=6" in out and "oracle   b1=6" in out
    assert "torsion=[2]" in out


def test_oracle_check_json(capsys):
    _, out, _ = call(capsys, "--json", "oracle-check", "S1 x N2")
    doc = json.loads(out)
    assert doc["b1"] == doc["oracle_b1"] == 2 and doc["match"] is True
    assert doc["torsion"] == [2]


def test_oracle_mismatch_exit_code(capsys, monkeypatch):
    from corank import cli
    monkeypatch.setattr(cli, "betti_from_presentation", lambda p: -1)
    code, out, _ = call(capsys, "oracle-check", "S1 x S2")
    assert code == EXIT_MISMATCH and "MISMATCH" in out


def test_oracle_refuses_harvey(capsys):
    code, _, err = call(capsys, "oracle-check", "H1 # S3")
    assert code == EXIT_ERROR and "no known presentation" in err


@pytest.mark.parametrize("argv", [
    ["invariants", "S1 # "],
    ["invariants", "N0"],
    ["invariants", "S2 # S3"],
    ["parse", "S1 # S1"],
    ["bogus"],
    ["synthesize", "-n", "-1", "--b-prime", "0", "--b", "0"],
    ["synthesize", "-n", "3"],
    ["compare", "--b-prime", "3", "--b", "2"],
    ["foliate", "-n", "1", "-m", "0", "-c", "0", "--b-prime", "1", "--b", "1"],
    [],
])
def test_errors_exit_one(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == EXIT_ERROR
    assert err


def test_parse_error_json_carries_span(capsys):
    code, out, _ = call(capsys, "--json", "parse", "S1 # N0")
    doc = json.loads(out)
    assert code == EXIT_ERROR and doc["span"] == [5, 7] and doc["exit_code"] == 1


def test_parse_canonical(capsys):
    code, out, _ = call(capsys, "--json", "parse", "S3 x pt x S1 # M0 x S2")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["expr"] == "(S1 x S3) # (S2 x S2)"
    assert doc["diagnostics"] == []


def test_foliate(capsys):
    code, out, _ = call(capsys, "foliate", "-n", "3", "-m", "2", "-c", "1", "--b-prime", "4", "--b", "5")
    assert code == EXIT_OK
    assert "MinimalComponent" in out and "totals: m=2 c=1" in out


def test_foliate_json(capsys):
    code, out, _ = call(capsys, "--json", "foliate", "-n", "4", "-m", "1", "-c", "1", "--b-prime", "3", "--b", "5")
    doc = json.loads(out)
    assert set(doc) == {"ambient", "summands", "m", "c"}
    assert [s["kind"] for s in doc["summands"]] == ["MinimalComponent", "CompactFibration", "TrivialCentered"]
    assert set(doc["summands"][0]) == {"expr", "kind", "m_i", "c_i"}


def test_foliate_infeasible(capsys):
    code, _, err = call(capsys, "foliate", "-n", "3", "-m", "2", "-c", "1", "--b-prime", "4", "--b", "4")
    assert code == EXIT_INFEASIBLE and "2m + c <= b" in err


def test_compare(capsys):
    code, out, _ = call(capsys, "compare", "--b-prime", "2", "--b", "5")
    assert code == EXIT_OK and out.startswith("FirstStronger: m + c <= b'")
    _, out, _ = call(capsys, "--json", "compare", "--b-prime", "4", "--b", "5", "-m", "1")
    assert json.loads(out)["verdict"] == "Equivalent"


def test_sweep_passes(capsys):
    code, out, _ = call(capsys, "sweep", "--samples", "50")
    assert code == EXIT_OK
    assert "FAIL" not in out


def test_sweep_detects_injected_bug(capsys):
    code, out, _ = call(capsys, "--json", "sweep", "--samples", "50", "--inject-bug")
    doc = json.loads(out)
    assert code == EXIT_MISMATCH and not doc["passed"]
    assert sum(c["failures"] for c in doc["checks"]) > 0


def test_sweep_empty_grid_warns(capsys):
    code, _, err = call(capsys, "sweep", "--max-b", "0", "--samples", "10")
    assert code == EXIT_OK and "vacuous" in err


def test_error_json_schema_is_shared(capsys):
    _, a, _ = call(capsys, "--json", "synthesize", "-n", "3", "--b-prime", "0", "--b", "2")
    _, b, _ = call(capsys, "--json", "foliate", "-n", "3", "-m", "3", "-c", "0", "--b-prime", "1", "--b", "1")
    assert set(json.loads(a)) == set(json.loads(b)) == {"error", "exit_code", "feasible"}
