import math
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.solver.models import EigenvalueRecord

CSV_COLUMNS = ["N", "m2", "n", "re_e", "im_e", "method", "residual", "classification", "status"]
SIGNIFICANT_DIGITS = 10


def round_significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    if not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


class SpectrumRow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    N: float = Field(..., description="Exponent of (ix)^N")
    m2: float = Field(..., description="Mass term coefficient")
    n: int = Field(..., description="Level index by Re E, -1 for failed rows")
    re_e: float = Field(..., description="Re E")
    im_e: float = Field(..., description="Im E")
    method: str = Field(..., description="shoot, matrix, wkb or asymptotic")
    residual: float = Field(0.0, description="Root or eigenpair residual")
    classification: str = Field("", description="real, complex-pair or empty when unclassified")
    status: str = Field("ok", description="ok, or the error that replaced this row")

    @classmethod
    def from_record(cls, spec: HamiltonianSpec, record: EigenvalueRecord) -> "SpectrumRow":
        status = "ok" if record.converged else "unconverged"
        return cls(N=spec.N, m2=spec.m2, status=status, **record.to_dict())

    @classmethod
    def failure(cls, spec: HamiltonianSpec, method: str, error: Exception) -> "SpectrumRow":
        return cls(
            N=spec.N, m2=spec.m2, n=-1, re_e=math.nan, im_e=math.nan, method=method,
            residual=math.nan, status=f"{type(error).__name__}: {error}",
        )

    def rounded(self) -> "SpectrumRow":
        """Copy with every float cut to the precision written to disk."""
        floats = {name: round_significant(getattr(self, name)) for name in ("N", "m2", "re_e", "im_e", "residual")}
        return self.model_copy(update=floats)

    def sort_key(self):
        """(N, Re E, Im E, method) with failed rows, whose energies are NaN, last within each N."""
        failed = math.isnan(self.re_e)
        return (
            self.N,
            failed,
            0.0 if failed else self.re_e,
            0.0 if failed else self.im_e,
            self.method,
        )


class SweepConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_min: float = Field(..., description="First N of the grid")
    n_max: float = Field(..., description="Last N of the grid")
    dn: float = Field(0.05, gt=0, description="Grid step")
    m2: float = Field(0.0, ge=0, description="Mass term coefficient")
    levels: int = Field(8, ge=1, description="Levels per grid point")
    method: Literal["shoot", "matrix", "wkb", "all"] = "shoot"
    out_path: Optional[str] = Field(None, description="Output file; default under the output directory")
    format: Literal["csv", "json"] = "csv"
    jobs: Optional[int] = Field(None, ge=1, description="Worker processes; default one per CPU")
    K: Optional[int] = Field(None, ge=2, description="Basis size for the matrix method")

    @model_validator(mode="after")
    def check_grid(self) -> "SweepConfig":
        if self.n_max < self.n_min:
            raise ValueError(f"n_max={self.n_max} is below n_min={self.n_min}")
        if not self.n_min > 0:
            raise ValueError(f"n_min must be > 0, got {self.n_min}")
        if self.method == "shoot":
            if self.m2 == 0 and not self.n_min > 1:
                raise ValueError(f"shooting without a mass term needs n_min > 1, got {self.n_min}")
            if self.m2 > 0 and self.n_min < 1:
                raise ValueError(f"shooting needs n_min >= 1, got {self.n_min}")
        return self

    def grid(self) -> List[float]:
        steps = int(math.floor((self.n_max - self.n_min) / self.dn + 1e-9))
        return [round(float(N), 10) for N in self.n_min + self.dn * np.arange(steps + 1)]
