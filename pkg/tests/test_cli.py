import io
import json

import pandas as pd
import pytest

from PTSpectra.model.exceptions import BracketError, ConvergenceError, DomainError, IntegrationError
from PTSpectra.run import EXIT_DOMAIN, EXIT_IO, EXIT_NUMERICAL, EXIT_OK, exit_code_for, main
from PTSpectra.utils.task_manager import load_rows


def read_csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), keep_default_na=False)


def test_spectrum_prints_csv(capsys):
    assert main(["spectrum", "--N", "2", "--levels", "3"]) == EXIT_OK
    frame = read_csv(capsys.readouterr().out)
    assert list(frame.columns) == ["N", "m2", "n", "re_e", "im_e", "method", "residual", "classification",
                                   "status"]
    assert frame["re_e"].tolist() == pytest.approx([1.0, 3.0, 5.0], abs=1e-6)
    assert set(frame["classification"]) == {"real"}
    assert set(frame["status"]) == {"ok"}


def test_massive_linear_case(capsys):
    assert main(["spectrum", "--N", "1", "--m2", "1", "--levels", "2"]) == EXIT_OK
    frame = read_csv(capsys.readouterr().out)
    assert frame["re_e"].tolist() == pytest.approx([1.25, 3.25], abs=1e-6)


def test_output_is_deterministic(capsys):
    main(["spectrum", "--N", "3", "--levels", "2"])
    first = capsys.readouterr().out
    main(["spectrum", "--N", "3", "--levels", "2"])
    assert capsys.readouterr().out == first


def test_json_and_csv_files_agree(tmp_path):
    json_path, csv_path = tmp_path / "levels.json", tmp_path / "levels.csv"
    assert main(["spectrum", "--N", "3", "--levels", "3", "--format", "json", "--out", str(json_path)]) == 0
    assert main(["spectrum", "--N", "3", "--levels", "3", "--out", str(csv_path)]) == 0
    from_json, from_csv = load_rows(json_path), load_rows(csv_path)
    assert [row.n for row in from_json] == [row.n for row in from_csv] == [0, 1, 2]
    assert [row.re_e for row in from_json] == pytest.approx([row.re_e for row in from_csv], rel=1e-14)
    assert [row.classification for row in from_json] == [row.classification for row in from_csv]


def test_wkb_method(capsys):
    assert main(["spectrum", "--N", "3", "--levels", "2", "--method", "wkb", "--format", "json"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert [row["re_e"] for row in rows] == pytest.approx([1.0942, 4.0894], abs=1e-4)
    assert {row["method"] for row in rows} == {"wkb"}


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--N", "0.5", "--method", "shoot"],
        ["spectrum", "--N", "1.5", "--method", "wkb"],
        ["spectrum", "--N", "4.5", "--method", "matrix"],
        ["merge", "--pair", "1", "--lo", "1.9", "--hi", "2.1"],
    ],
)
def test_domain_failures_exit_with_two(argv):
    assert main(argv) == EXIT_DOMAIN


def test_invalid_arguments_are_rejected_by_the_parser():
    with pytest.raises(SystemExit):
        main(["spectrum", "--N", "0"])
    with pytest.raises(SystemExit):
        main(["spectrum", "--N", "3", "--method", "guess"])


def test_classical_writes_trajectory(tmp_path, capsys):
    out = tmp_path / "orbit.csv"
    assert main(["classical", "--N", "2", "--E", "1", "--out", str(out)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["outcome"] == "closed-orbit"
    assert summary["period"] == pytest.approx(3.14159, abs=1e-3)
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["t", "re_x", "im_x", "theta"]
    assert json.loads((tmp_path / "summary.json").read_text())["outcome"] == "closed-orbit"


def test_tables_without_shooting(output_dir, capsys):
    assert main(["tables", "--no-exact", "--save"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "asymptotic" in text and "hermitian_wkb" in text
    saved = pd.read_csv(output_dir / "tables_1" / "table_near_one.csv")
    assert len(saved) == 7


def test_sweep_command(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    argv = ["sweep", "--n-min", "2", "--n-max", "3", "--dn", "0.5", "--method", "wkb", "--levels", "2",
            "--jobs", "1", "--out", str(out)]
    assert main(argv) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["rows"] == 6 and report["failures"] == 0
    assert len(load_rows(out)) == 6


def test_exit_code_mapping():
    assert exit_code_for(DomainError("x")) == EXIT_DOMAIN
    assert exit_code_for(BracketError("x")) == EXIT_DOMAIN
    assert exit_code_for(IntegrationError("x")) == EXIT_NUMERICAL
    assert exit_code_for(ConvergenceError("x")) == EXIT_NUMERICAL
    assert exit_code_for(PermissionError("x")) == EXIT_IO
    assert exit_code_for(RuntimeError("x")) == 1


def test_classical_reports_turning_points_on_spiral(tmp_path, capsys):
    out = tmp_path / "spiral.csv"
    assert main(["classical", "--N", "1.5", "--E", "1", "--out", str(out)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["outcome"] == "escaped"
    assert summary["turning_points_passed"] == 1
    assert summary["close_approaches"] == [0]
