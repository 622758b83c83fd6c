from abc import ABC, abstractmethod
from typing import List

from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.solver.models import EigenvalueRecord, Method


class BaseSolver(ABC):
    def __init__(self, name: str, method: Method):
        self.name = name
        self.method = method

    @abstractmethod
    def spectrum(self, spec: HamiltonianSpec, count: int) -> List[EigenvalueRecord]:
        """Lowest `count` levels of spec, ordered by Re E."""
        pass

    def supports(self, spec: HamiltonianSpec) -> bool:
        return True
