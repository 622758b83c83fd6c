import argparse
import sys
from typing import Callable

from loguru import logger

from PTSpectra.utils.constants import OUTPUT_DIR


def float_in_range(lo: float, hi: float, lo_open: bool = False) -> Callable[[str], float]:
    """Create a validator for float values inside [lo, hi] (or (lo, hi] when lo_open)."""

    def check_float(value: str) -> float:
        try:
            float_val = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f'Value must be a float, got {value}')
        above = float_val > lo if lo_open else float_val >= lo
        if above and float_val <= hi:
            return float_val
        bracket = '(' if lo_open else '['
        raise argparse.ArgumentTypeError(f'Value must be in {bracket}{lo}, {hi}], got {float_val}')

    return check_float


def positive_int(value: str) -> int:
    try:
        int_val = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f'Value must be an integer, got {value}')
    if int_val < 1:
        raise argparse.ArgumentTypeError(f'Value must be >= 1, got {int_val}')
    return int_val


def set_task_name(task: str) -> str:
    """Generate numbered task folder name."""
    try:
        max_num = max(
            (int(folder.name.split("_")[-1])
             for folder in OUTPUT_DIR.iterdir()
             if folder.name.startswith(task) and
             folder.name.split("_")[-1].isdigit()),
            default=0
        )
        return f"{task}_{max_num + 1}"
    except Exception as e:
        logger.debug(f"Starting task numbering at 1: {e}")
        return f"{task}_1"


def configure_logging(level: str = "INFO") -> None:
    """Send loguru output to stderr so stdout carries only results."""
    logger.remove()
    logger.add(sys.stderr, level=level.upper())
