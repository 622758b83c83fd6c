from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Tuple

import pandas as pd

from PTSpectra.model.exceptions import DomainError
from PTSpectra.model.models import BranchedPoint

Outcome = Literal["closed-orbit", "escaped", "step-limit"]
PathPoint = Tuple[float, complex, float]


@dataclass(frozen=True)
class TrajectoryState:
    """Position on the unwound surface together with the velocity v = dx/dt"""
    x: BranchedPoint
    t: float
    branch_sign: int
    v: complex

    def __post_init__(self):
        if self.branch_sign not in (-1, 1):
            raise DomainError(f"branch_sign must be +1 or -1, got {self.branch_sign}")


@dataclass(frozen=True)
class TurningPointPassage:
    """Closest approach of a trajectory to the n-th turning point of the spiral lattice"""
    n: int
    angle: float
    distance: float
    t: float


@dataclass
class TrajectoryResult:
    path: List[PathPoint] = field(default_factory=list)
    outcome: Outcome = "step-limit"
    period: Optional[float] = None
    escape_angle: Optional[float] = None
    energy_defect: float = 0.0
    return_distance: Optional[float] = None
    final: Optional[TrajectoryState] = None

    def __post_init__(self):
        if self.outcome == "closed-orbit" and self.period is None:
            raise DomainError("a closed orbit needs a period")
        if self.outcome == "escaped" and self.escape_angle is None:
            raise DomainError("an escaped trajectory needs an escape angle")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(t, x.real, x.imag, theta) for t, x, theta in self.path],
            columns=["t", "re_x", "im_x", "theta"],
        )

    def summary(self) -> Dict:
        return {
            "outcome": self.outcome,
            "period": self.period,
            "escape_angle": self.escape_angle,
            "energy_defect": self.energy_defect,
            "return_distance": self.return_distance,
            "steps": len(self.path),
        }
