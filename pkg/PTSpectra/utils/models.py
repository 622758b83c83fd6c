from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Tuple


@dataclass
class PlotConfig:
    """Styling written into the companion plot scripts"""
    figsize: Tuple[int, int] = (6, 4)
    dpi: int = 150
    style: Literal["white", "darkgrid", "dark", "whitegrid", "ticks"] = "whitegrid"
    context: str = "paper"
    palette: str = "viridis"
    alpha: float = 0.8
    marker_size: int = 8


@dataclass
class TaskPaths:
    task_name: str
    task_path: Path
    data_path: Path
    plot_script_path: Path
