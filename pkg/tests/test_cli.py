import csv
import io
import json

from quiddity import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_engine_all_agreement(capsys):
    code, out, err = run_cli(
        capsys, "count", "--modulus", "4", "--n", "5", "--epsilon", "-1",
        "--engine", "all", "--output", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"][0]["values"]["count"] == "20"
    assert doc["rows"][0]["agree"] is True
    assert doc["rows"][0]["engine"] == "all"


def test_sigma_engine_all(capsys):
    code, out, _ = run_cli(
        capsys, "sigma", "--p", "3", "--r", "2", "--n", "6", "--ell", "2",
        "--engine", "all", "--output", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"][0]["values"]["ell=2"] == "81"
    assert doc["rows"][0]["agree"] is True


def test_count_composite_uses_crt(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--modulus", "12", "--n", "5", "--epsilon", "-1",
        "--output", "json",
    )
    assert code == 0
    doc = json.loads(out)
    formula_value = doc["rows"][0]["values"]["count"]
    code, out, _ = run_cli(
        capsys, "count", "--modulus", "12", "--n", "5", "--epsilon", "-1",
        "--engine", "oracle", "--output", "json",
    )
    assert json.loads(out)["rows"][0]["values"]["count"] == formula_value == "200"


def test_count_target_engines(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--modulus", "9", "--n", "5", "--target", "1", "0", "0", "1",
        "--engine", "all", "--output", "json",
    )
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["agree"] is True
    assert int(row["values"]["count"]) > 0


def test_sigma_table_grid(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--kind", "sigma", "--p", "2", "--r", "3",
        "--n-from", "2", "--n-to", "10", "--output", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert [row["n"] for row in doc["rows"]] == [2, 4, 6, 8, 10]
    assert all(len(row["values"]) == 3 for row in doc["rows"])
    first = doc["rows"][0]
    assert first["values"]["ell=3"] == "1"
    assert first["values"]["ell=1"] == "0"


def test_quiddity_table_grid_all_engines(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--kind", "quiddity", "--modulus", "9",
        "--n-from", "2", "--n-to", "8", "--engine", "all", "--output", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 7
    assert all(row["agree"] for row in doc["rows"])
    by_n = {row["n"]: row for row in doc["rows"]}
    assert by_n[6]["values"]["eps=-1"] == "999"


def test_csv_output_has_header(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--kind", "sigma", "--p", "2", "--r", "2",
        "--n-from", "2", "--n-to", "6", "--output", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "ell=1", "ell=2", "engine", "agree"]
    assert len(rows) == 4


def test_json_round_trip_is_exact(capsys):
    # a value far beyond float precision: p^((n-3)(r-1)) gets big quickly
    code, out, _ = run_cli(
        capsys, "count", "--p", "5", "--r", "4", "--n", "13", "--epsilon", "-1",
        "--engine", "formula", "--output", "json",
    )
    assert code == 0
    from quiddity.formulas import count_quiddity_formula

    value = json.loads(out)["rows"][0]["values"]["count"]
    assert int(value) == count_quiddity_formula(5**4, 13, -1).value
    assert int(value) > 2**64


def test_pi_and_tau_round_trip(capsys):
    # -Id over Z/9: the matching-sign count at n = 6 is 999
    code, out, _ = run_cli(
        capsys, "pi", "--modulus", "9", "--n", "6", "--target", "8", "0", "0", "8",
        "--engine", "all", "--output", "json",
    )
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["agree"] is True
    assert sum(int(v) for v in row["values"].values()) == 999
    code, out, _ = run_cli(
        capsys, "tau", "--modulus", "9", "--n", "6", "--target", "8", "0", "0", "8",
        "--engine", "all", "--output", "json",
    )
    assert code == 0
    assert json.loads(out)["rows"][0]["agree"] is True


def test_usage_errors_exit_one(capsys):
    cases = (
        ("count", "--modulus", "4", "--n", "5"),  # neither epsilon nor target
        ("count", "--modulus", "4", "--n", "5", "--epsilon", "-1", "--engine", "recursion"),
        ("count", "--modulus", "4", "--n", "5", "--target", "1", "0", "0", "1",
         "--engine", "formula"),
        ("count", "--n", "5", "--epsilon", "-1"),  # no modulus
        ("count", "--modulus", "5", "--n", "4", "--target", "2", "0", "0", "1"),  # det != 1
        ("sigma", "--p", "3", "--r", "2", "--n", "5"),  # odd length
        ("sigma", "--p", "3", "--r", "2", "--n", "4", "--ell", "7"),
        ("pi", "--modulus", "12", "--n", "5", "--target", "1", "0", "0", "1"),
        ("table", "--kind", "sigma", "--p", "2", "--r", "2", "--n-from", "3", "--n-to", "3"),
        ("verify", "--suite", "no-such-suite"),
        ("bogus-command",),
    )
    for argv in cases:
        code = cli.main(list(argv))
        capsys.readouterr()
        assert code == 1, argv


def test_budget_error_exits_one(capsys, monkeypatch):
    monkeypatch.setenv("QUIDDITY_MAX_BUDGET", "1")
    from quiddity import oracle

    oracle.clear_caches()
    try:
        code, out, err = run_cli(
            capsys, "count", "--modulus", "23", "--n", "6", "--epsilon", "-1",
            "--engine", "oracle",
        )
        assert code == 1
        assert "ceiling" in err
    finally:
        monkeypatch.delenv("QUIDDITY_MAX_BUDGET")
        oracle.clear_caches()


def test_engine_disagreement_exits_two(capsys, monkeypatch):
    from quiddity.formulas import FormulaResult

    monkeypatch.setattr(
        cli, "count_quiddity_formula", lambda N, n, eps: FormulaResult(21, "odd-length")
    )
    code, out, err = run_cli(
        capsys, "count", "--modulus", "4", "--n", "5", "--epsilon", "-1",
        "--engine", "all", "--output", "json",
    )
    assert code == 2
    assert "disagreement" in err
    doc = json.loads(out)
    assert doc["rows"][0]["agree"] is False
    assert doc["rows"][0]["values"]["count[formula]"] == "21"
    assert doc["rows"][0]["values"]["count[oracle]"] == "20"


def test_verify_single_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "ideal-pair-counts")
    assert code == 0
    assert out.startswith("PASS ideal-pair-counts")


def test_verify_list(capsys):
    code, out, _ = run_cli(capsys, "verify", "--list")
    assert code == 0
    assert "odd-closed-form" in out.split()
