"""Spectra over a grid of N, one worker task per grid point."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import chain
import os
from pathlib import Path
from typing import List, Optional

from loguru import logger
from tqdm import tqdm

from PTSpectra.experiment.models import SpectrumRow, SweepConfig
from PTSpectra.model.exceptions import PTSpectraError
from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.solver.manager import SolverManager
from PTSpectra.utils.helper import set_task_name
from PTSpectra.utils.task_manager import TaskManager


@dataclass(frozen=True)
class SweepOutcome:
    rows: List[SpectrumRow]
    data_path: Optional[Path] = None
    plot_script_path: Optional[Path] = None

    @property
    def failures(self) -> List[SpectrumRow]:
        return [row for row in self.rows if row.status != "ok"]


def spectrum_rows(
        spec: HamiltonianSpec,
        levels: int,
        method: str,
        K: Optional[int] = None,
        raise_errors: bool = False,
) -> List[SpectrumRow]:
    """
    Rows for one Hamiltonian and one method, or every applicable method for 'all'.

    Numerical and domain failures become status rows unless raise_errors is set.
    """
    rows: List[SpectrumRow] = []
    for name in SolverManager.expand(method):
        kwargs = {"K": K} if name == "matrix" and K else {}
        manager = SolverManager(name, **kwargs)
        if method == "all" and not manager.supports(spec):
            logger.debug(f"{name} does not cover {spec}; skipped")
            continue
        try:
            records = manager.spectrum(spec, levels)
        except PTSpectraError as e:
            if raise_errors:
                raise
            rows.append(SpectrumRow.failure(spec, name, e))
            continue
        rows.extend(SpectrumRow.from_record(spec, record) for record in records)
    return sorted(rows, key=SpectrumRow.sort_key)


def _run_point(N: float, m2: float, levels: int, method: str, K: Optional[int]) -> List[SpectrumRow]:
    try:
        spec = HamiltonianSpec(N=N, m2=m2)
    except PTSpectraError as e:
        return [SpectrumRow(N=N, m2=m2, n=-1, re_e=float("nan"), im_e=float("nan"), method=method,
                            residual=float("nan"), status=f"{type(e).__name__}: {e}")]
    rows = spectrum_rows(spec, levels, method, K)
    real = sum(row.classification == "real" for row in rows if row.method == "shoot")
    logger.info(f"N={N:g}: {len(rows)} rows, {real} real shooting levels")
    return rows


def run_sweep(config: SweepConfig) -> List[SpectrumRow]:
    """All rows of the sweep sorted by (N, Re E); parallel and serial runs agree row for row."""
    grid = config.grid()
    worker = partial(_run_point, m2=config.m2, levels=config.levels, method=config.method, K=config.K)
    jobs = min(config.jobs or os.cpu_count() or 1, len(grid))
    logger.info(f"sweeping {len(grid)} values of N in [{config.n_min}, {config.n_max}] with {jobs} workers")

    if jobs == 1:
        results = [worker(N) for N in tqdm(grid, desc="sweep")]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(tqdm(pool.map(worker, grid), total=len(grid), desc="sweep"))
    return sorted(chain.from_iterable(results), key=SpectrumRow.sort_key)


def execute_sweep(config: SweepConfig) -> SweepOutcome:
    """Run the sweep and write the data file plus its plot script."""
    rows = run_sweep(config)
    task_name = set_task_name(f"sweep_{config.method}_m{config.m2:g}")
    task_manager = TaskManager(task_name, config.out_path, config.format)
    try:
        data_path = task_manager.save_rows(rows)
        plot_script_path = task_manager.save_plot_script()
    except Exception as e:
        logger.error(f"Failed to write sweep output: {e}")
        raise
    outcome = SweepOutcome(rows=rows, data_path=data_path, plot_script_path=plot_script_path)
    if outcome.failures:
        logger.warning(f"{len(outcome.failures)} grid points failed; see the status column")
    return outcome
