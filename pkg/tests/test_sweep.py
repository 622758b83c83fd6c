import math

from pydantic import ValidationError
import pytest

from PTSpectra.experiment.models import SpectrumRow, SweepConfig, round_significant
from PTSpectra.experiment.sweep import execute_sweep, run_sweep, spectrum_rows
from PTSpectra.model.exceptions import DomainError
from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.solver.manager import SolverManager
from PTSpectra.utils.task_manager import load_rows


def wkb_config(**overrides) -> SweepConfig:
    values = dict(n_min=2.0, n_max=3.0, dn=0.5, method="wkb", levels=3, jobs=1)
    values.update(overrides)
    return SweepConfig(**values)


def test_grid_includes_both_ends():
    assert SweepConfig(n_min=1.0, n_max=1.2, dn=0.1, method="wkb").grid() == [1.0, 1.1, 1.2]
    assert wkb_config().grid() == [2.0, 2.5, 3.0]


@pytest.mark.parametrize(
    "values",
    [
        dict(n_min=3.0, n_max=2.0),
        dict(n_min=1.0, n_max=2.0, method="shoot"),
        dict(n_min=0.5, n_max=2.0, m2=1.0, method="shoot"),
        dict(n_min=2.0, n_max=3.0, dn=0.0),
        dict(n_min=2.0, n_max=3.0, colour="red"),
    ],
)
def test_invalid_configs(values):
    with pytest.raises(ValidationError):
        SweepConfig(**values)


def test_massive_shooting_may_start_at_one():
    assert SweepConfig(n_min=1.0, n_max=1.5, m2=1.0).method == "shoot"


def test_serial_and_parallel_runs_agree():
    serial = run_sweep(wkb_config())
    parallel = run_sweep(wkb_config(jobs=2))
    assert len(serial) == 9
    assert serial == parallel
    assert [row.N for row in serial] == sorted(row.N for row in serial)


def test_failures_become_status_rows():
    rows = run_sweep(SweepConfig(n_min=4.5, n_max=4.5, method="matrix", levels=2, jobs=1))
    assert len(rows) == 1
    assert rows[0].status.startswith("DomainError")
    assert math.isnan(rows[0].re_e)


def test_all_methods_skip_uncovered_solvers():
    rows = spectrum_rows(HamiltonianSpec(N=4.5), 2, "all")
    assert {row.method for row in rows} == {"shoot", "wkb"}
    assert [row.re_e for row in rows] == sorted(row.re_e for row in rows)


def test_failed_rows_sort_last():
    spec = HamiltonianSpec(N=3.0)
    good = SpectrumRow(N=3.0, m2=0.0, n=0, re_e=1.1, im_e=0.0, method="wkb")
    failed = SpectrumRow.failure(spec, "matrix", DomainError("out of range"))
    assert sorted([failed, good], key=SpectrumRow.sort_key) == [good, failed]


def test_rounding():
    assert round_significant(1.23456789012345) == 1.234567890
    assert math.isnan(round_significant(math.nan))


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_execute_sweep_writes_data_and_plot_script(output_dir, fmt):
    config = wkb_config(format=fmt, out_path=str(output_dir / f"levels.{fmt}"))
    outcome = execute_sweep(config)
    assert outcome.data_path.exists()
    assert not outcome.failures
    assert load_rows(outcome.data_path) == [row.rounded() for row in outcome.rows]
    script = outcome.plot_script_path.read_text()
    assert "seaborn" in script and outcome.data_path.name in script


def test_solver_manager():
    assert SolverManager.expand("all") == ["shoot", "matrix", "wkb"]
    assert SolverManager("matrix", K=40).get_solver_info()["K"] == "40"
    with pytest.raises(DomainError):
        SolverManager("guess")
