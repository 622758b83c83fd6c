from dataclasses import dataclass
import math

from PTSpectra.model.exceptions import DomainError
from PTSpectra.solver.models import EigenvalueRecord

EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class WkbEstimate:
    """Leading-order semiclassical level"""
    n: int
    E: float
    N: float

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"level index must be >= 0, got {self.n}")

    def to_record(self) -> EigenvalueRecord:
        return EigenvalueRecord(n=self.n, E=complex(self.E), method="wkb", classification="real")


@dataclass(frozen=True)
class EpsilonEnergy:
    """Ground-state energy at N = 1 + eps from the small-eps asymptotic relation"""
    eps: float
    E: float
    euler_gamma: float = EULER_GAMMA

    @property
    def N(self) -> float:
        return 1.0 + self.eps

    @property
    def scaling_ratio(self) -> float:
        """E / (-ln eps)^{2/3}; tends to a constant as eps -> 0."""
        return self.E / (-math.log(self.eps)) ** (2.0 / 3.0)

    def to_record(self) -> EigenvalueRecord:
        return EigenvalueRecord(n=0, E=complex(self.E), method="asymptotic", classification="real")
