import argparse
import json
import sys
from typing import Callable, Dict, List, Optional

from loguru import logger
from pydantic import ValidationError

from PTSpectra.dynamics.classical import integrate_trajectory, turning_point_passages, turning_points_on_spiral
from PTSpectra.experiment.models import SweepConfig
from PTSpectra.experiment.sweep import execute_sweep, spectrum_rows
from PTSpectra.experiment.tables import format_table, level_table, near_one_table
from PTSpectra.model.exceptions import (
    BracketError,
    ContourConfigurationError,
    ConvergenceError,
    DomainError,
    IntegrationError,
)
from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.model.potential import branched
from PTSpectra.solver.config import SHOOTING_CONFIG
from PTSpectra.solver.shooting import check_domain, count_real_levels, find_merge_N, scan_ceiling
from PTSpectra.utils.helper import configure_logging, float_in_range, positive_int, set_task_name
from PTSpectra.utils.task_manager import TaskManager, rows_to_text

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

EXIT_CODES = (
    (DomainError, EXIT_DOMAIN),
    (BracketError, EXIT_DOMAIN),
    (ValidationError, EXIT_DOMAIN),
    (IntegrationError, EXIT_NUMERICAL),
    (ContourConfigurationError, EXIT_NUMERICAL),
    (ConvergenceError, EXIT_NUMERICAL),
    (OSError, EXIT_IO),
)

DEFAULT_CONFIG = {
    "m2": 0.0,
    "levels": 5,
    "method": "shoot",
    "format": "csv",
    "log_level": "INFO",
    "E": 1.0,
}

METHODS = ["shoot", "matrix", "wkb", "all"]
N_RANGE = float_in_range(0.0, SHOOTING_CONFIG["n_max"], lo_open=True)


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        type=str,
        default=DEFAULT_CONFIG["format"],
        choices=["csv", "json"],
        help="Output format of the records",
    )
    parser.add_argument(
        "--out",
        type=str,
        default=None,
        help="Output file (default: a numbered folder under the output directory)",
    )


def create_parser() -> argparse.ArgumentParser:
    """Create and configure argument parser."""
    parser = argparse.ArgumentParser(
        prog="ptspectra",
        description="Spectra, sweeps and classical paths of H = p^2 + m2 x^2 - (ix)^N.",
    )
    parser.add_argument(
        "--log-level",
        type=str,
        default=DEFAULT_CONFIG["log_level"],
        choices=["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR"],
        help="Verbosity of the log written to stderr",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    spectrum = subparsers.add_parser("spectrum", help="Lowest levels for one N")
    spectrum.add_argument("--N", type=N_RANGE, required=True, help="Exponent N")
    spectrum.add_argument("--m2", type=float_in_range(0.0, 1e6), default=DEFAULT_CONFIG["m2"], help="Mass term m^2")
    spectrum.add_argument("--levels", type=positive_int, default=DEFAULT_CONFIG["levels"], help="Number of levels")
    spectrum.add_argument("--method", type=str, default=DEFAULT_CONFIG["method"], choices=METHODS,
                          help="Spectral method")
    spectrum.add_argument("--K", type=positive_int, default=None, help="Basis size for the matrix method")
    _add_output_options(spectrum)
    spectrum.set_defaults(func=cmd_spectrum)

    sweep = subparsers.add_parser("sweep", help="Levels over a grid of N")
    sweep.add_argument("--n-min", type=float, required=True, help="First N")
    sweep.add_argument("--n-max", type=float, required=True, help="Last N")
    sweep.add_argument("--dn", type=float, default=0.05, help="Grid step")
    sweep.add_argument("--m2", type=float, default=DEFAULT_CONFIG["m2"], help="Mass term m^2")
    sweep.add_argument("--levels", type=positive_int, default=8, help="Levels per grid point")
    sweep.add_argument("--method", type=str, default=DEFAULT_CONFIG["method"], choices=METHODS,
                       help="Spectral method")
    sweep.add_argument("--K", type=positive_int, default=None, help="Basis size for the matrix method")
    sweep.add_argument("--jobs", type=positive_int, default=None, help="Worker processes (default: CPU count)")
    _add_output_options(sweep)
    sweep.set_defaults(func=cmd_sweep)

    tables = subparsers.add_parser("tables", help="Recompute the reference tables")
    tables.add_argument("--no-exact", action="store_true", help="Skip the shooting columns")
    tables.add_argument("--save", action="store_true", help="Also write both tables as CSV")
    tables.set_defaults(func=cmd_tables)

    classical = subparsers.add_parser("classical", help="Integrate one classical path")
    classical.add_argument("--N", type=N_RANGE, required=True, help="Exponent N")
    classical.add_argument("--E", type=float_in_range(0.0, 1e6, lo_open=True), default=DEFAULT_CONFIG["E"],
                           help="Energy")
    classical.add_argument("--x0", type=complex, default=None, help="Start point, e.g. 1-0.5j (default x_+)")
    classical.add_argument("--t-max", type=float, default=None, help="Integration time limit")
    classical.add_argument("--dt", type=float, default=None, help="Fixed time step")
    classical.add_argument("--out", type=str, default=None, help="Trajectory CSV path")
    classical.set_defaults(func=cmd_classical)

    merge = subparsers.add_parser("merge", help="Locate where a level pair turns complex")
    merge.add_argument("--pair", type=int, required=True, help="Lower index of the pair (pair, pair+1)")
    merge.add_argument("--lo", type=float, required=True, help="Lower end of the N bracket")
    merge.add_argument("--hi", type=float, required=True, help="Upper end of the N bracket")
    merge.add_argument("--m2", type=float, default=DEFAULT_CONFIG["m2"], help="Mass term m^2")
    merge.add_argument("--tol", type=float, default=None, help="Bisection tolerance in N")
    merge.set_defaults(func=cmd_merge)

    return parser


def cmd_spectrum(args: argparse.Namespace) -> int:
    spec = HamiltonianSpec(N=args.N, m2=args.m2)
    rows = spectrum_rows(spec, args.levels, args.method, args.K, raise_errors=args.method != "all")
    sys.stdout.write(rows_to_text(rows, args.format))
    if args.out:
        TaskManager(set_task_name("spectrum"), args.out, args.format).save_rows(rows)
    return EXIT_OK if all(row.status == "ok" for row in rows) else EXIT_NUMERICAL


def cmd_sweep(args: argparse.Namespace) -> int:
    config = SweepConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        dn=args.dn,
        m2=args.m2,
        levels=args.levels,
        method=args.method,
        out_path=args.out,
        format=args.format,
        jobs=args.jobs,
        K=args.K,
    )
    outcome = execute_sweep(config)
    print(json.dumps({
        "rows": len(outcome.rows),
        "failures": len(outcome.failures),
        "data": str(outcome.data_path),
        "plot_script": str(outcome.plot_script_path),
    }))
    return EXIT_NUMERICAL if outcome.failures else EXIT_OK


def cmd_tables(args: argparse.Namespace) -> int:
    first = level_table(exact=not args.no_exact)
    second = near_one_table(exact=not args.no_exact)
    print(format_table(first, "Levels of -(ix)^N: exact, WKB and Hermitian |x|^N WKB"))
    print(format_table(second, "Ground state at N = 1 + eps"))
    if args.save:
        task_manager = TaskManager(set_task_name("tables"))
        task_manager.save_frame(first, "table_levels.csv")
        task_manager.save_frame(second, "table_near_one.csv")
    return EXIT_OK


def _real_levels_at(spec: HamiltonianSpec, levels: int = 8) -> Optional[int]:
    try:
        check_domain(spec)
    except DomainError:
        return None
    return count_real_levels(spec, scan_ceiling(spec, levels))


def cmd_classical(args: argparse.Namespace) -> int:
    spec = HamiltonianSpec(N=args.N)
    x0 = branched(args.x0) if args.x0 is not None else None
    result = integrate_trajectory(spec, args.E, x0=x0, dt=args.dt, t_max=args.t_max)

    task_manager = TaskManager(set_task_name(f"classical_N{args.N:g}"), args.out)
    path = task_manager.save_frame(result.to_frame(), task_manager.data_path.with_suffix(".csv").name)
    summary: Dict = {"N": args.N, "E": args.E, **result.summary(), "trajectory": str(path)}
    if args.N < 2:
        summary["turning_points_passed"] = turning_points_on_spiral(args.N)
        summary["close_approaches"] = [p.n for p in turning_point_passages(result, args.E, args.N)]
        summary["real_levels"] = _real_levels_at(spec)
    task_manager.save_json(summary, "summary.json")
    print(json.dumps(summary))
    return EXIT_OK


def cmd_merge(args: argparse.Namespace) -> int:
    N_star = find_merge_N(args.m2, args.pair, args.lo, args.hi, n_tol=args.tol)
    print(json.dumps({
        "pair": [args.pair, args.pair + 1],
        "m2": args.m2,
        "bracket": [args.lo, args.hi],
        "tol": args.tol,
        "N_star": N_star,
    }))
    return EXIT_OK


def exit_code_for(error: Exception) -> int:
    for error_type, code in EXIT_CODES:
        if isinstance(error, error_type):
            return code
    return 1


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    command: Callable[[argparse.Namespace], int] = args.func
    try:
        return command(args)
    except Exception as e:
        code = exit_code_for(e)
        logger.error(f"{args.command} failed: {e}")
        if code == 1:
            raise
        return code
