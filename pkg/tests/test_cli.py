import io
import json
from fractions import Fraction

import pytest

import cauchon.cli as cli_mod
from cauchon import census
from cauchon.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_missing_required_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["count", "--rows", "2"])
    assert err.value.code == 2


def test_unknown_subject_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["check", "nonsense"])
    assert err.value.code == 2


# --- count ---------------------------------------------------------------------


def test_count_text(capsys):
    code, out, _ = run_cli(capsys, "count", "--rows", "2", "--cols", "5")
    assert code == 0
    assert "primitive: 167" in out
    assert "total: 454" in out


def test_count_1x1(capsys):
    code, out, _ = run_cli(capsys, "count", "--rows", "1", "--cols", "1")
    assert code == 0
    assert "primitive: 1" in out


def test_count_empty_cols(capsys):
    code, out, _ = run_cli(capsys, "count", "--rows", "2", "--cols", "0")
    assert code == 0
    assert "total: 1" in out
    assert "primitive: 1" in out


def test_count_csv(capsys):
    code, out, _ = run_cli(capsys, "count", "--rows", "2", "--cols", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "m,n,total,primitive,proportion_num,proportion_den"
    assert lines[1] == "2,2,14,5,5,14"


def test_count_json_with_histogram(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--rows", "2", "--cols", "2", "--format", "json", "--histogram"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["primitive"] == 5
    assert payload["nullity_histogram"]["0"] == 5


def test_count_json_without_histogram(capsys):
    code, out, _ = run_cli(capsys, "count", "--rows", "2", "--cols", "2", "--format", "json")
    payload = json.loads(out)
    assert "nullity_histogram" not in payload


def test_count_fast_mode(capsys):
    code, out, _ = run_cli(capsys, "count", "--rows", "2", "--cols", "6", "--mode", "fast")
    assert code == 0
    assert "primitive: 515" in out


def test_count_histogram_in_fast_mode_is_usage_error(capsys):
    code, _, err = run_cli(
        capsys, "count", "--rows", "2", "--cols", "2", "--mode", "fast", "--histogram"
    )
    assert code == 2
    assert "histogram" in err


def test_count_bad_rows(capsys):
    code, _, err = run_cli(capsys, "count", "--rows", "0", "--cols", "2")
    assert code == 2


def test_count_elapsed_goes_to_stderr(capsys):
    _, out, err = run_cli(capsys, "count", "--rows", "1", "--cols", "2")
    assert "elapsed" in err
    assert "elapsed" not in out


def test_count_deterministic_output(capsys):
    _, out1, _ = run_cli(
        capsys, "count", "--rows", "3", "--cols", "3", "--format", "json", "--workers", "2"
    )
    _, out2, _ = run_cli(
        capsys, "count", "--rows", "3", "--cols", "3", "--format", "json", "--workers", "1"
    )
    assert out1 == out2


# --- guardrail --------------------------------------------------------------------


def test_guardrail_breach(capsys):
    code, _, err = run_cli(capsys, "count", "--rows", "6", "--cols", "6")
    assert code == 3
    assert "guardrail" in err


def test_guardrail_flag_lowers_limit(capsys):
    code, _, err = run_cli(
        capsys, "count", "--rows", "2", "--cols", "4", "--max-cells", "5"
    )
    assert code == 3
    assert "guardrail" in err


def test_guardrail_flag_override(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--rows", "2", "--cols", "4", "--max-cells", "8"
    )
    assert code == 0
    assert "total:" in out


def test_guardrail_env_override(capsys, monkeypatch):
    monkeypatch.setenv("CAUCHON_MAX_CELLS", "5")
    code, _, _ = run_cli(capsys, "count", "--rows", "2", "--cols", "4")
    assert code == 3
    monkeypatch.setenv("CAUCHON_MAX_CELLS", "8")
    code, _, _ = run_cli(capsys, "count", "--rows", "2", "--cols", "4")
    assert code == 0


def test_guardrail_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("CAUCHON_MAX_CELLS", "5")
    code, _, _ = run_cli(
        capsys, "count", "--rows", "2", "--cols", "4", "--max-cells", "8"
    )
    assert code == 0


def test_guardrail_env_invalid(capsys, monkeypatch):
    monkeypatch.setenv("CAUCHON_MAX_CELLS", "lots")
    code, _, err = run_cli(capsys, "count", "--rows", "6", "--cols", "6")
    assert code == 2


# --- table --------------------------------------------------------------------------


def test_table_csv(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--max-rows", "3", "--max-cols", "5", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "m,n,total,primitive,proportion_num,proportion_den"
    by_cell = {}
    for line in lines[1:]:
        parts = line.split(",")
        by_cell[(int(parts[0]), int(parts[1]))] = int(parts[3])
    assert [by_cell[(3, n)] for n in range(1, 6)] == [4, 17, 70, 329, 1414]
    assert [by_cell[(1, n)] for n in range(1, 5)] == [1, 2, 4, 8]


def test_table_text(capsys):
    code, out, _ = run_cli(capsys, "table", "--max-rows", "2", "--max-cols", "3")
    assert code == 0
    assert "17" in out


def test_table_bad_bounds(capsys):
    code, _, _ = run_cli(capsys, "table", "--max-rows", "0", "--max-cols", "3")
    assert code == 2


# --- pfaffian --------------------------------------------------------------------------


def test_pfaffian_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("..\n..\n"))
    code, out, _ = run_cli(capsys, "pfaffian", "--grid", "-", "--show-nullity")
    assert code == 0
    assert "pfaffian: 0" in out
    assert "determinant: 0" in out
    assert "nullity: 2" in out
    assert "primitive: false" in out


def test_pfaffian_file(capsys, tmp_path):
    grid = tmp_path / "grid.txt"
    grid.write_text("....\n")
    code, out, _ = run_cli(capsys, "pfaffian", "--grid", str(grid))
    assert code == 0
    assert "pfaffian: 1" in out
    assert "primitive: true" in out


def test_pfaffian_show_matrix(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(".."))
    code, out, _ = run_cli(capsys, "pfaffian", "--grid", "-", "--show-matrix")
    assert code == 0
    assert "matrix:" in out
    assert "0  1" in out


def test_pfaffian_json(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("..\n.."))
    code, out, _ = run_cli(
        capsys, "pfaffian", "--grid", "-", "--format", "json", "--show-nullity"
    )
    payload = json.loads(out)
    assert payload["pfaffian"] == 0
    assert payload["nullity"] == 2
    assert payload["primitive"] is False


def test_pfaffian_invalid_grid_exit_4(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("..\n.#"))
    code, _, err = run_cli(capsys, "pfaffian", "--grid", "-")
    assert code == 4
    assert "(2, 2)" in err


def test_pfaffian_missing_file_exit_4(capsys):
    code, _, _ = run_cli(capsys, "pfaffian", "--grid", "/no/such/file")
    assert code == 4


# --- check -----------------------------------------------------------------------------


def test_check_formula_2xn(capsys):
    code, out, _ = run_cli(capsys, "check", "formula-2xn", "--max-n", "5")
    assert code == 0
    assert "PASS" in out


def test_check_criterion_2xn(capsys):
    code, out, _ = run_cli(capsys, "check", "criterion-2xn", "--max-n", "5")
    assert code == 0
    assert "PASS" in out


def test_check_conjecture_3xn(capsys):
    code, out, _ = run_cli(capsys, "check", "conjecture-3xn", "--max-n", "3")
    assert code == 0
    assert "no counterexample found" in out


def test_check_power_of_two(capsys):
    code, out, _ = run_cli(
        capsys, "check", "power-of-two", "--max-rows", "3", "--max-cols", "3"
    )
    assert code == 0
    assert "no counterexample found" in out


def test_check_relation_eqc(capsys):
    code, out, _ = run_cli(capsys, "check", "relation-eqc", "--rows", "2", "--max-n", "5")
    assert code == 0
    assert "PASS" in out


def test_check_lemma_decomposition(capsys):
    code, out, _ = run_cli(capsys, "check", "lemma-decomposition", "--max-n", "3")
    assert code == 0
    assert "PASS" in out


def test_check_csv_format(capsys):
    code, out, _ = run_cli(
        capsys, "check", "formula-2xn", "--max-n", "3", "--format", "csv"
    )
    assert code == 0
    assert out.startswith("n,formula,census,match")


def test_check_guardrail(capsys):
    code, _, err = run_cli(capsys, "check", "formula-2xn", "--max-n", "20")
    assert code == 3


def test_check_mismatch_exits_1_and_shows_row(capsys, monkeypatch):
    rows = [census.FormulaCheckRow(1, Fraction(3), 2, False)]
    monkeypatch.setattr(cli_mod.census, "check_formula", lambda *a, **k: rows)
    code, out, _ = run_cli(capsys, "check", "formula-2xn", "--max-n", "1")
    assert code == 1
    assert "FAIL" in out
    assert "n=1" in out


# --- enumerate / matchings ----------------------------------------------------------------


def test_enumerate_jsonl(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--rows", "2", "--cols", "1")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 4
    first = json.loads(lines[0])
    assert first["mask"] == [".", "."]
    assert first["pfaffian"] == 1
    assert first["primitive"] is True
    assert {json.loads(line)["d"] for line in lines} == {0, 1, 2}


def test_enumerate_text(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--rows", "1", "--cols", "1", "--format", "text")
    assert code == 0
    assert "d=1" in out and "d=0" in out


def test_matchings_jsonl(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("..\n.."))
    code, out, _ = run_cli(capsys, "matchings", "--grid", "-")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().split("\n")]
    assert len(rows) == 2
    assert sorted(r["sign"] for r in rows) == [-1, 1]
    for row in rows:
        assert row["edges"] == sorted(sorted(e) for e in row["edges"])


def test_matchings_odd_grid_is_empty(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(".#\n.."))
    code, out, _ = run_cli(capsys, "matchings", "--grid", "-")
    assert code == 0
    assert out == ""


def test_matchings_text(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(".."))
    code, out, _ = run_cli(capsys, "matchings", "--grid", "-", "--format", "text")
    assert code == 0
    assert out.strip() == "sign=+1 edges=(1,2)"
