from typing import Dict, List, Optional

from loguru import logger

from PTSpectra.model.exceptions import DomainError
from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.semiclassics.wkb import wkb_spectrum
from PTSpectra.solver import basis, shooting
from PTSpectra.solver.base import BaseSolver
from PTSpectra.solver.config import BASIS_CONFIG
from PTSpectra.solver.models import EigenvalueRecord


def _accepts(check, spec: HamiltonianSpec) -> bool:
    try:
        check(spec)
    except DomainError:
        return False
    return True


class ShootingSolver(BaseSolver):
    def spectrum(self, spec: HamiltonianSpec, count: int) -> List[EigenvalueRecord]:
        return shooting.spectrum(spec, count)

    def supports(self, spec: HamiltonianSpec) -> bool:
        return _accepts(shooting.check_domain, spec)


class MatrixSolver(BaseSolver):
    def __init__(self, name: str, method: str, K: Optional[int] = None):
        super().__init__(name, method)
        self.K = K or BASIS_CONFIG["default_basis"]

    def spectrum(self, spec: HamiltonianSpec, count: int) -> List[EigenvalueRecord]:
        return basis.matrix_spectrum(spec, self.K, count)

    def supports(self, spec: HamiltonianSpec) -> bool:
        return _accepts(basis.check_domain, spec)


class WkbSolver(BaseSolver):
    def spectrum(self, spec: HamiltonianSpec, count: int) -> List[EigenvalueRecord]:
        if not spec.massless:
            raise DomainError(f"the WKB estimate covers m2 = 0 only, got m2={spec.m2}")
        return wkb_spectrum(count, spec.N)

    def supports(self, spec: HamiltonianSpec) -> bool:
        return spec.massless and spec.N >= 2


class SolverManager:
    solver_types = {
        "shoot": ShootingSolver,
        "matrix": MatrixSolver,
        "wkb": WkbSolver,
    }

    def __init__(self, method: str, **kwargs):
        """
        Initialize SolverManager with one spectral method.

        Args:
            method: 'shoot', 'matrix' or 'wkb'
            kwargs: solver options, e.g. K for the matrix solver
        """
        self.solver = self._init_solver(method, **kwargs)

    def _init_solver(self, method: str, **kwargs) -> BaseSolver:
        method = method.lower()
        if method not in self.solver_types:
            raise DomainError(
                f"Invalid method. Must be one of: {', '.join(self.solver_types.keys())}"
            )
        solver_class = self.solver_types[method]
        return solver_class(solver_class.__name__, method, **kwargs)

    @classmethod
    def expand(cls, method: str) -> List[str]:
        """'all' stands for every registered method."""
        return list(cls.solver_types) if method == "all" else [method]

    def supports(self, spec: HamiltonianSpec) -> bool:
        return self.solver.supports(spec)

    def spectrum(self, spec: HamiltonianSpec, count: int) -> List[EigenvalueRecord]:
        try:
            return self.solver.spectrum(spec, count)
        except Exception as e:
            logger.error(f"{self.solver.name} failed for {spec}: {e}")
            raise

    def get_solver_info(self) -> Dict[str, str]:
        return {
            "name": self.solver.name,
            "method": self.solver.method,
            "K": str(getattr(self.solver, "K", "")),
        }
