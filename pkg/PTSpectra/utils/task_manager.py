import json
from pathlib import Path
from typing import Dict, List, Literal, Optional

from loguru import logger
import pandas as pd

from PTSpectra.experiment.models import CSV_COLUMNS, SIGNIFICANT_DIGITS, SpectrumRow
from PTSpectra.utils.constants import OUTPUT_DIR
from PTSpectra.utils.models import PlotConfig, TaskPaths

OutputFormat = Literal["csv", "json"]
FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"

_NUMERIC_COLUMNS = ["N", "m2", "re_e", "im_e", "residual"]

PLOT_TEMPLATE = '''"""Plot {data_name}: Re E against N, complex pairs drawn separately."""
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd
import seaborn as sns

DATA = Path(__file__).with_name("{data_name}")

{reader}
rows = rows[rows["status"] == "ok"]
sns.set_theme(style="{style}", context="{context}")
fig, ax = plt.subplots(figsize={figsize}, dpi={dpi})
sns.scatterplot(
    data=rows, x="N", y="re_e", hue="classification", style="method",
    palette="{palette}", alpha={alpha}, s={marker_size}, ax=ax,
)
ax.set_xlabel("N")
ax.set_ylabel("Re E")
fig.tight_layout()
fig.savefig(DATA.with_suffix(".png"))
'''


class TaskManager:
    def __init__(self, task_name: str, out_path: Optional[Path | str] = None, fmt: OutputFormat = "csv"):
        self.fmt = fmt
        self.paths = self._init_directory(task_name, out_path, fmt)
        self.task_name = self.paths.task_name
        self.task_path = self.paths.task_path
        self.data_path = self.paths.data_path
        self.plot_script_path = self.paths.plot_script_path

    @staticmethod
    def _init_directory(task_name: str, out_path: Optional[Path | str], fmt: OutputFormat) -> TaskPaths:
        """Resolve output files; an explicit out_path wins over the output directory."""
        data_path = Path(out_path) if out_path else OUTPUT_DIR / task_name / f"{task_name}.{fmt}"
        task_path = data_path.parent
        task_path.mkdir(parents=True, exist_ok=True)
        return TaskPaths(
            task_name=task_name,
            task_path=task_path,
            data_path=data_path,
            plot_script_path=task_path / f"{data_path.stem}_plot.py",
        )

    def save_rows(self, rows: List[SpectrumRow]) -> Path:
        """Write spectrum rows in the configured format."""
        try:
            text = rows_to_text(rows, self.fmt)
            self.data_path.write_text(text, encoding="utf-8")
        except OSError as e:
            logger.error(f"Error writing {self.data_path}: {e}")
            raise
        logger.success(f"Wrote {len(rows)} rows to {self.data_path}")
        return self.data_path

    def save_frame(self, frame: pd.DataFrame, name: str) -> Path:
        path = self.task_path / name
        try:
            frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        except OSError as e:
            logger.error(f"Error writing {path}: {e}")
            raise
        logger.success(f"Wrote {len(frame)} rows to {path}")
        return path

    def save_json(self, item: Dict, name: str) -> Path:
        path = self.task_path / name
        try:
            path.write_text(json.dumps(item, indent=2) + "\n", encoding="utf-8")
        except OSError as e:
            logger.error(f"Error writing {path}: {e}")
            raise
        return path

    def save_plot_script(self, plot_config: Optional[PlotConfig] = None) -> Path:
        """Companion matplotlib/seaborn script that renders the data file."""
        plot_config = plot_config or PlotConfig()
        reader = (
            'rows = pd.read_csv(DATA, keep_default_na=False, na_values={c: [""] for c in '
            f'{_NUMERIC_COLUMNS!r}}})'
            if self.fmt == "csv"
            else "rows = pd.read_json(DATA)"
        )
        script = PLOT_TEMPLATE.format(
            data_name=self.data_path.name,
            reader=reader,
            style=plot_config.style,
            context=plot_config.context,
            figsize=tuple(plot_config.figsize),
            dpi=plot_config.dpi,
            palette=plot_config.palette,
            alpha=plot_config.alpha,
            marker_size=plot_config.marker_size,
        )
        try:
            self.plot_script_path.write_text(script, encoding="utf-8")
        except OSError as e:
            logger.error(f"Error writing plot script {self.plot_script_path}: {e}")
            raise
        return self.plot_script_path


def rows_to_frame(rows: List[SpectrumRow]) -> pd.DataFrame:
    return pd.DataFrame([row.rounded().model_dump() for row in rows], columns=CSV_COLUMNS)


def rows_to_text(rows: List[SpectrumRow], fmt: OutputFormat = "csv") -> str:
    """Deterministic CSV or JSON rendering: ten significant digits, rows in the given order."""
    if fmt == "json":
        return json.dumps([row.rounded().model_dump() for row in rows], indent=2) + "\n"
    return rows_to_frame(rows).to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def load_rows(path: Path | str) -> List[SpectrumRow]:
    """Read rows written by save_rows back into validated models."""
    path = Path(path)
    if path.suffix == ".json":
        return [SpectrumRow(**item) for item in json.loads(path.read_text(encoding="utf-8"))]
    frame = pd.read_csv(path, keep_default_na=False, na_values={c: [""] for c in _NUMERIC_COLUMNS})
    return [SpectrumRow(**item) for item in frame.to_dict(orient="records")]
